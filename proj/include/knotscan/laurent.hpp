#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "knotscan/errors.hpp"

namespace knotscan {

/// Sparse Laurent polynomial in `Vars` variables with exact int64 coefficients.
/// Zero coefficients are never stored, so structural equality is polynomial equality.
template <std::size_t Vars>
class Laurent {
 public:
  using Exponent = std::array<int, Vars>;
  using Coefficient = std::int64_t;
  using TermMap = std::map<Exponent, Coefficient>;

  Laurent() = default;

  static Laurent constant(Coefficient c) { return monomial(c, Exponent{}); }

  static Laurent monomial(Coefficient c, const Exponent& e) {
    Laurent p;
    p.add_term(e, c);
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Coefficient coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
  }

  void add_term(const Exponent& e, Coefficient c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Laurent& operator+=(const Laurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Laurent& operator*=(Coefficient k) {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= k;
    return *this;
  }

  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator-(Laurent a) { return a *= -1; }
  friend Laurent operator*(Laurent a, Coefficient k) { return a *= k; }
  friend Laurent operator*(Coefficient k, Laurent a) { return a *= k; }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add_term(add(ea, eb), ca * cb);
    return out;
  }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  friend bool operator==(const Laurent&, const Laurent&) = default;

  /// Multiply by the monomial with exponent `e`.
  Laurent shifted(const Exponent& e) const {
    Laurent out;
    for (const auto& [x, c] : terms_) out.terms_.emplace(add(x, e), c);
    return out;
  }

  /// Apply x_var -> x_var^factor to every monomial (factor = -1 mirrors a variable).
  Laurent rescaled(std::size_t var, int factor) const {
    Laurent out;
    for (const auto& [e, c] : terms_) {
      Exponent x = e;
      x[var] *= factor;
      out.add_term(x, c);
    }
    return out;
  }

  /// Lowest exponent of variable `var`. Throws on the zero polynomial.
  int min_exponent(std::size_t var) const {
    if (is_zero()) throw InvalidArgument("degree of the zero polynomial");
    int m = terms_.begin()->first[var];
    for (const auto& [e, c] : terms_) m = std::min(m, e[var]);
    return m;
  }
  int max_exponent(std::size_t var) const {
    if (is_zero()) throw InvalidArgument("degree of the zero polynomial");
    int m = terms_.begin()->first[var];
    for (const auto& [e, c] : terms_) m = std::max(m, e[var]);
    return m;
  }

  /// Sorted monomial list, e.g. "2 v^2 z^0, 1 v^2 z^2, -1 v^4 z^0"; "0" when zero.
  /// Terms are ordered lexicographically by exponent vector.
  std::string format(const std::array<std::string_view, Vars>& names) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << ", ";
      first = false;
      os << c;
      for (std::size_t i = 0; i < Vars; ++i) os << ' ' << names[i] << '^' << e[i];
    }
    return os.str();
  }

  /// Human-readable form, e.g. "q + q^3 + t^2*q^5 - 2*t^-1".
  std::string pretty(const std::array<std::string_view, Vars>& names) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      std::string mono;
      for (std::size_t i = 0; i < Vars; ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += '*';
        mono += names[i];
        if (e[i] != 1) mono += '^' + std::to_string(e[i]);
      }
      const Coefficient a = c < 0 ? -c : c;
      if (first)
        os << (c < 0 ? "-" : "");
      else
        os << (c < 0 ? " - " : " + ");
      first = false;
      if (mono.empty())
        os << a;
      else if (a == 1)
        os << mono;
      else
        os << a << '*' << mono;
    }
    return os.str();
  }

  /// Inverse of format().
  static Laurent parse(std::string_view text, const std::array<std::string_view, Vars>& names) {
    Laurent p;
    std::string s(text);
    if (s == "0") return p;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::istringstream is(item);
      Coefficient c = 0;
      if (!(is >> c)) throw ParseError("bad polynomial term '" + item + "'");
      Exponent e{};
      for (std::size_t i = 0; i < Vars; ++i) {
        std::string tok;
        if (!(is >> tok)) throw ParseError("bad polynomial term '" + item + "'");
        const std::string prefix = std::string(names[i]) + "^";
        if (tok.rfind(prefix, 0) != 0) throw ParseError("bad polynomial term '" + item + "'");
        try {
          e[i] = std::stoi(tok.substr(prefix.size()));
        } catch (const std::exception&) {
          throw ParseError("bad exponent in '" + item + "'");
        }
      }
      std::string rest;
      if (is >> rest) throw ParseError("trailing text in polynomial term '" + item + "'");
      p.add_term(e, c);
    }
    return p;
  }

 private:
  static Exponent add(const Exponent& a, const Exponent& b) {
    Exponent r;
    for (std::size_t i = 0; i < Vars; ++i) r[i] = a[i] + b[i];
    return r;
  }

  TermMap terms_;
};

using LaurentPoly1 = Laurent<1>;
using LaurentPoly2 = Laurent<2>;

}  // namespace knotscan
