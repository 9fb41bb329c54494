#pragma once

#include <algorithm>
#include <cctype>
#include <numeric>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "knotscan/diagram.hpp"
#include "knotscan/errors.hpp"

namespace knotscan {

/// sigma_index^sign, 1-based.
struct Generator {
  int index = 1;
  int sign = 1;
  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Band generator sigma_{i,j} = (s_i ... s_{j-2}) s_{j-1} (s_i ... s_{j-2})^{-1}.
struct Band {
  int i = 1;
  int j = 2;
  friend bool operator==(const Band&, const Band&) = default;
};

struct Letter;

/// w sigma_index w^{-1} with a positive core generator.
struct Conjugate {
  std::vector<Letter> conjugator;
  int index = 1;
  friend bool operator==(const Conjugate&, const Conjugate&) = default;
};

struct Letter {
  std::variant<Generator, Band, Conjugate> value;
  friend bool operator==(const Letter&, const Letter&) = default;
};

struct BraidWord {
  int strands = 1;
  std::vector<Letter> letters;
  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

namespace detail {

inline void validate_letters(const std::vector<Letter>& letters, int strands) {
  for (const auto& l : letters) {
    if (const auto* g = std::get_if<Generator>(&l.value)) {
      if (g->index < 1 || g->index > strands - 1)
        throw ParseError("generator index " + std::to_string(g->index) + " out of range for " +
                         std::to_string(strands) + " strands");
      if (g->sign != 1 && g->sign != -1) throw ParseError("generator sign must be +1 or -1");
    } else if (const auto* b = std::get_if<Band>(&l.value)) {
      if (b->i < 1 || b->j > strands || b->j < b->i + 1)
        throw ParseError("band b(" + std::to_string(b->i) + "," + std::to_string(b->j) +
                         ") out of range for " + std::to_string(strands) + " strands");
    } else {
      const auto& c = std::get<Conjugate>(l.value);
      if (c.index < 1 || c.index > strands - 1)
        throw ParseError("conjugate core index " + std::to_string(c.index) + " out of range");
      validate_letters(c.conjugator, strands);
    }
  }
}

class BraidParser {
 public:
  explicit BraidParser(std::string_view s) : s_(s) {}

  std::vector<Letter> letters(char terminator) {
    std::vector<Letter> out;
    for (;;) {
      skip();
      if (pos_ >= s_.size()) {
        if (terminator) throw ParseError("unterminated conjugate in braid word");
        return out;
      }
      if (s_[pos_] == terminator) return out;
      out.push_back(letter());
    }
  }

 private:
  void skip() {
    while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == ','))
      ++pos_;
  }
  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char ch) {
    skip_space();
    if (pos_ >= s_.size() || s_[pos_] != ch)
      throw ParseError(std::string("expected '") + ch + "' in braid word at offset " + std::to_string(pos_));
    ++pos_;
  }
  int integer() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_ || (pos_ - start == 1 && s_[start] == '-'))
      throw ParseError("expected an integer in braid word at offset " + std::to_string(start));
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }
  Letter letter() {
    const char ch = s_[pos_++];
    switch (ch) {
      case 's':
      case 'S': {
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
          throw ParseError(std::string("malformed braid token starting with '") + ch + "'");
        return Letter{Generator{integer(), ch == 's' ? 1 : -1}};
      }
      case 'b': {
        expect('(');
        Band b{integer(), 0};
        expect(',');
        b.j = integer();
        expect(')');
        return Letter{b};
      }
      case 'c': {
        expect('(');
        Conjugate c;
        c.conjugator = letters(';');
        expect(';');
        c.index = integer();
        expect(')');
        return Letter{std::move(c)};
      }
      default:
        throw ParseError(std::string("malformed braid token starting with '") + ch + "'");
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline void expand_into(const std::vector<Letter>& letters, std::vector<Generator>& out);

inline std::vector<Generator> inverse(std::vector<Generator> w) {
  std::reverse(w.begin(), w.end());
  for (auto& g : w) g.sign = -g.sign;
  return w;
}

inline void expand_into(const std::vector<Letter>& letters, std::vector<Generator>& out) {
  for (const auto& l : letters) {
    if (const auto* g = std::get_if<Generator>(&l.value)) {
      out.push_back(*g);
    } else if (const auto* b = std::get_if<Band>(&l.value)) {
      std::vector<Generator> prefix;
      for (int k = b->i; k <= b->j - 2; ++k) prefix.push_back({k, 1});
      out.insert(out.end(), prefix.begin(), prefix.end());
      out.push_back({b->j - 1, 1});
      auto inv = inverse(prefix);
      out.insert(out.end(), inv.begin(), inv.end());
    } else {
      const auto& c = std::get<Conjugate>(l.value);
      std::vector<Generator> w;
      expand_into(c.conjugator, w);
      out.insert(out.end(), w.begin(), w.end());
      out.push_back({c.index, 1});
      auto inv = inverse(std::move(w));
      out.insert(out.end(), inv.begin(), inv.end());
    }
  }
}

}  // namespace detail

/// Parse "k | s1 S2 b(2,4) c(s1 S2; 3)". `s` is a positive generator, `S` its
/// inverse, `b(i,j)` a band generator and `c(w; i)` the conjugate w s_i w^{-1}.
inline BraidWord parse_braid(std::string_view text) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos) throw ParseError("braid notation must look like 'k | letters'");
  BraidWord b;
  {
    std::string head(text.substr(0, bar));
    std::size_t used = 0;
    try {
      b.strands = std::stoi(head, &used);
    } catch (const std::exception&) {
      throw ParseError("bad strand count '" + head + "'");
    }
    if (head.find_first_not_of(" \t", used) != std::string::npos) throw ParseError("bad strand count '" + head + "'");
    if (b.strands < 1) throw ParseError("a braid needs at least one strand");
  }
  detail::BraidParser p(text.substr(bar + 1));
  b.letters = p.letters('\0');
  detail::validate_letters(b.letters, b.strands);
  return b;
}

/// Rewrite every band and conjugate letter in terms of standard generators.
inline BraidWord expand_bands(const BraidWord& b) {
  std::vector<Generator> gens;
  detail::expand_into(b.letters, gens);
  BraidWord out{b.strands, {}};
  out.letters.reserve(gens.size());
  for (const auto& g : gens) out.letters.push_back(Letter{g});
  return out;
}

inline std::vector<Generator> generator_word(const BraidWord& b) {
  std::vector<Generator> gens;
  detail::expand_into(b.letters, gens);
  return gens;
}

inline int exponent_sum(const BraidWord& b) {
  int sum = 0;
  for (const auto& g : generator_word(b)) sum += g.sign;
  return sum;
}

/// Underlying permutation: perm[p] is where the strand starting at position p ends.
inline std::vector<int> braid_permutation(const BraidWord& b) {
  std::vector<int> at(b.strands);  // at[position] = starting strand
  std::iota(at.begin(), at.end(), 0);
  for (const auto& g : generator_word(b)) std::swap(at[g.index - 1], at[g.index]);
  std::vector<int> perm(b.strands);
  for (int p = 0; p < b.strands; ++p) perm[at[p]] = p;
  return perm;
}

inline int closure_components(const BraidWord& b) {
  const auto perm = braid_permutation(b);
  std::vector<char> seen(perm.size(), 0);
  int cycles = 0;
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    ++cycles;
    for (std::size_t x = s; !seen[x]; x = perm[x]) seen[x] = 1;
  }
  return cycles;
}

/// Closure diagram: strands run upward, sigma_i is a positive crossing with the
/// strand from position i passing over. Writhe equals the exponent sum and the
/// Seifert circles are the k strands.
inline PlanarDiagram closure(const BraidWord& b) {
  const int comps = closure_components(b);
  if (comps != 1)
    throw InvalidArgument("braid closure is a " + std::to_string(comps) + "-component link, not a knot");
  const auto word = generator_word(b);
  if (word.empty()) return PlanarDiagram::unknot();

  const int k = b.strands;
  std::vector<int> cur(k + 1);
  std::iota(cur.begin(), cur.end(), 0);
  int next_label = k + 1;
  std::vector<std::array<int, 4>> tuples;
  tuples.reserve(word.size());
  for (const auto& g : word) {
    const int i = g.index;
    const int to_right = next_label++;  // new arc at position i+1
    const int to_left = next_label++;   // new arc at position i
    if (g.sign > 0)
      tuples.push_back({cur[i + 1], to_right, to_left, cur[i]});
    else
      tuples.push_back({cur[i], cur[i + 1], to_right, to_left});
    cur[i] = to_left;
    cur[i + 1] = to_right;
  }
  // Close up: the top arc at each position is the bottom arc at that position.
  std::vector<int> rename(next_label);
  std::iota(rename.begin(), rename.end(), 0);
  for (int p = 1; p <= k; ++p) rename[cur[p]] = p;
  for (auto& t : tuples)
    for (auto& a : t) a = rename[a];
  return PlanarDiagram::from_tuples(tuples);
}

/// True when every letter is a band or a positive generator.
inline bool is_strongly_quasipositive(const BraidWord& b) {
  for (const auto& l : b.letters) {
    if (std::holds_alternative<Conjugate>(l.value)) return false;
    if (const auto* g = std::get_if<Generator>(&l.value); g && g->sign < 0) return false;
  }
  return true;
}

/// Number of factors w s_i w^{-1} in a presentation that is already quasipositive.
/// Bands, conjugates and positive generators count one each.
inline int quasipositive_factors(const BraidWord& b) {
  int count = 0;
  for (const auto& l : b.letters) {
    if (const auto* g = std::get_if<Generator>(&l.value); g && g->sign < 0)
      throw InvalidArgument("braid word is not in quasipositive form: bare negative generator S" +
                            std::to_string(g->index));
    ++count;
  }
  return count;
}

/// s = 2 g_4 = b - k + 1 for the closure of a quasipositive braid.
inline int s_quasipositive(int b_count, int strands) { return b_count - strands + 1; }

inline int s_quasipositive(const BraidWord& b) { return s_quasipositive(quasipositive_factors(b), b.strands); }

/// Euler characteristic k - b of the surface built from the quasipositive factors.
inline int bennequin_euler(int b_count, int strands) { return strands - b_count; }

}  // namespace knotscan
