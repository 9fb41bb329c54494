#pragma once

#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "knotscan/diagram.hpp"
#include "knotscan/errors.hpp"

namespace knotscan {

/// Largest DT code realize_dt() will search; the search is exponential in n.
inline constexpr std::size_t kMaxDtCrossings = 24;

namespace detail {

/// Dart = 4 * crossing + slot. Slots are geometric positions in counterclockwise
/// order; the odd-numbered passage always enters at slot 0 and leaves at slot 2.
struct DtEmbedding {
  std::size_t n = 0;
  std::vector<int> visit_crossing;  // 1-based visit -> crossing
  std::vector<char> visit_is_odd;

  int in_slot(int visit, std::uint32_t flips) const {
    if (visit_is_odd[visit]) return 0;
    return (flips >> visit_crossing[visit]) & 1u ? 3 : 1;
  }
  int out_slot(int visit, std::uint32_t flips) const { return (in_slot(visit, flips) + 2) % 4; }

  /// Number of faces of the rotation system selected by `flips`.
  std::size_t faces(std::uint32_t flips) const {
    const int m = static_cast<int>(2 * n);
    std::vector<int> twin(4 * n);
    for (int k = 1; k <= m; ++k) {
      const int next = k == m ? 1 : k + 1;
      const int a = 4 * visit_crossing[k] + out_slot(k, flips);
      const int b = 4 * visit_crossing[next] + in_slot(next, flips);
      twin[a] = b;
      twin[b] = a;
    }
    std::vector<char> seen(4 * n, 0);
    std::size_t count = 0;
    for (std::size_t start = 0; start < 4 * n; ++start) {
      if (seen[start]) continue;
      ++count;
      int h = static_cast<int>(start);
      while (!seen[h]) {
        seen[h] = 1;
        const int t = twin[h];
        h = 4 * (t / 4) + (t % 4 + 3) % 4;
      }
    }
    return count;
  }
};

}  // namespace detail

/// Realize a Dowker-Thistlethwaite code as a planar diagram.
///
/// Entry i pairs the odd label 2i-1 with |a_i|. A positive entry means the
/// odd-labelled passage is the over-strand. The planar embedding is found by
/// exhaustive search over the 2^(n-1) choices of how the even passage crosses the
/// odd one, accepting the first rotation system with n + 2 faces. Codes with no
/// planar realization are rejected.
inline PlanarDiagram realize_dt(const std::vector<int>& code) {
  const std::size_t n = code.size();
  if (n == 0) throw ParseError("empty DT code");
  if (n > kMaxDtCrossings)
    throw ResourceLimitError("DT code has " + std::to_string(n) + " crossings; realization is limited to " +
                             std::to_string(kMaxDtCrossings));
  std::vector<char> used(n + 1, 0);
  for (int a : code) {
    if (a % 2 != 0) throw ParseError("DT code entry " + std::to_string(a) + " is odd");
    const auto half = static_cast<std::size_t>(std::abs(a) / 2);
    if (half < 1 || half > n || used[half])
      throw ParseError("DT code entries must be a signed permutation of 2, 4, ..., 2n");
    used[half] = 1;
  }

  detail::DtEmbedding emb;
  emb.n = n;
  emb.visit_crossing.assign(2 * n + 1, -1);
  emb.visit_is_odd.assign(2 * n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    emb.visit_crossing[2 * i + 1] = static_cast<int>(i);
    emb.visit_is_odd[2 * i + 1] = 1;
    emb.visit_crossing[std::abs(code[i])] = static_cast<int>(i);
  }

  // Crossing 0's flip is a reflection of the sphere; it is pinned so that the
  // overall chirality matches the standard tables (4 6 2 is the left trefoil).
  const std::uint32_t limit = 1u << (n - 1);
  std::uint32_t flips = 0;
  bool found = false;
  for (std::uint32_t f = 0; f < limit; ++f) {
    const std::uint32_t candidate = (f << 1) | 1u;
    if (emb.faces(candidate) == n + 2) {
      flips = candidate;
      found = true;
      break;
    }
  }
  if (!found) throw ParseError("DT code is not realizable by a planar diagram");

  const int m = static_cast<int>(2 * n);
  std::vector<std::array<int, 4>> slots(n);
  for (int k = 1; k <= m; ++k) {
    const int c = emb.visit_crossing[k];
    const int in_label = k == 1 ? m : k - 1;
    slots[c][emb.in_slot(k, flips)] = in_label;
    slots[c][emb.out_slot(k, flips)] = k;
  }
  std::vector<std::array<int, 4>> tuples(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool odd_over = code[i] > 0;
    // Incoming under slot: odd passage enters at 0, even passage at 1 or 3.
    const int odd_in = 0;
    const int even_in = (flips >> i) & 1u ? 3 : 1;
    const int start = odd_over ? even_in : odd_in;
    for (int k = 0; k < 4; ++k) tuples[i][k] = slots[i][(start + k) % 4];
  }
  return PlanarDiagram::from_tuples(tuples);
}

/// Parse a whitespace/comma separated DT sequence such as "4 6 2" or "-8 -26 14 ...".
inline PlanarDiagram parse_dt(std::string_view text) {
  std::string s(text);
  for (char& ch : s)
    if (ch == ',' || ch == '(' || ch == ')' || ch == '[' || ch == ']') ch = ' ';
  std::istringstream is(s);
  std::vector<int> code;
  std::string tok;
  while (is >> tok) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw ParseError("bad DT entry '" + tok + "'");
    }
    if (used != tok.size()) throw ParseError("bad DT entry '" + tok + "'");
    code.push_back(v);
  }
  return realize_dt(code);
}

}  // namespace knotscan
