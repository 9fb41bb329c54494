#pragma once

#include <string>

#include "knotscan/diagram.hpp"
#include "knotscan/errors.hpp"
#include "knotscan/laurent.hpp"
#include "knotscan/polyinv/homfly.hpp"
#include "knotscan/polyinv/signature.hpp"
#include "knotscan/rasmussen.hpp"

namespace knotscan {

/// Lowest and highest exponents of v.
struct VSpan {
  int e = 0;
  int E = 0;
  friend bool operator==(const VSpan&, const VSpan&) = default;
};

inline VSpan v_span(const LaurentPoly2& p) {
  if (p.is_zero()) throw InvalidArgument("v-span of the zero polynomial");
  return {p.min_exponent(0), p.max_exponent(0)};
}

/// w - O + 1 <= e <= E <= w + O - 1.
inline bool morton_check(const PlanarDiagram& d, const VSpan& span) {
  const int w = writhe(d), o = seifert_circles(d);
  return w - o + 1 <= span.e && span.e <= span.E && span.E <= w + o - 1;
}

/// Alexander polynomial from HOMFLY: v = 1, z^2 = t - 2 + t^-1.
inline LaurentPoly1 alexander(const LaurentPoly2& p) {
  LaurentPoly1 step;
  step.add_term({1}, 1);
  step.add_term({0}, -2);
  step.add_term({-1}, 1);
  LaurentPoly1 out;
  for (const auto& [e, c] : p.terms()) {
    if (e[1] % 2 != 0)
      throw InvalidArgument("odd power of z: HOMFLY input is not that of a knot");
    if (e[1] < 0) throw InvalidArgument("negative power of z: HOMFLY input is not that of a knot");
    LaurentPoly1 term = LaurentPoly1::constant(c);
    for (int k = 0; k < e[1] / 2; ++k) term = term * step;
    out += term;
  }
  return out;
}

inline bool is_trivial_alexander(const LaurentPoly1& a) { return a == LaurentPoly1::constant(1); }

enum class Flag { No, Yes, Possible };

inline const char* to_string(Flag f) {
  switch (f) {
    case Flag::Yes: return "yes";
    case Flag::No: return "no";
    default: return "possible";
  }
}

struct QpFlags {
  Flag can_be_qp = Flag::No;
  Flag can_be_mirror_qp = Flag::No;
  friend bool operator==(const QpFlags&, const QpFlags&) = default;
};

/// Quasipositive knots need 0 <= s <= e; mirrors of them need E <= s <= 0.
inline QpFlags qp_obstruction(const SResult& s, const VSpan& span) {
  auto join = [&](auto pred) {
    bool any = false, all = true;
    for (int c : s.candidates()) {
      const bool ok = pred(c);
      any |= ok;
      all &= ok;
    }
    return all ? Flag::Yes : any ? Flag::Possible : Flag::No;
  };
  return {join([&](int c) { return 0 <= c && c <= span.e; }),
          join([&](int c) { return span.E <= c && c <= 0; })};
}

}  // namespace knotscan
