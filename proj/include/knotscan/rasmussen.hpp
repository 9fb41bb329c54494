#pragma once

#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/edmonds_karp_max_flow.hpp>
#include <boost/rational.hpp>

#include "knotscan/braid.hpp"
#include "knotscan/diagram.hpp"
#include "knotscan/errors.hpp"
#include "knotscan/khovanov.hpp"

namespace knotscan {

/// The Rasmussen invariant, or the set of values the ranks cannot rule out.
class SResult {
 public:
  static SResult determined(int s) { return SResult({s}); }
  static SResult ambiguous(std::set<int> candidates) {
    if (candidates.size() < 2) throw InvalidArgument("an ambiguous s needs at least two candidates");
    return SResult(std::move(candidates));
  }

  bool is_determined() const { return candidates_.size() == 1; }
  int value() const {
    if (!is_determined()) throw InvalidArgument("s is ambiguous: " + to_string());
    return *candidates_.begin();
  }
  const std::set<int>& candidates() const { return candidates_; }
  bool could_be(int s) const { return candidates_.count(s) > 0; }

  SResult negated() const {
    std::set<int> out;
    for (int s : candidates_) out.insert(-s);
    return SResult(std::move(out));
  }

  /// "2" or "-2|0".
  std::string to_string() const {
    std::string out;
    for (int s : candidates_) {
      if (!out.empty()) out += '|';
      out += std::to_string(s);
    }
    return out;
  }

  friend bool operator==(const SResult&, const SResult&) = default;

 private:
  explicit SResult(std::set<int> c) : candidates_(std::move(c)) {}
  std::set<int> candidates_;
};

/// No (i, j) with both h^{i,j} and h^{i+1,j+8} nonzero.
inline bool lee_condition(const BigradedRanks& r) {
  for (const auto& [k, rank] : r.entries())
    if (r.at(k.first + 1, k.second + 8) > 0) return false;
  return true;
}

namespace detail {

using Grid = std::map<std::pair<int, int>, long long>;

/// Remainder after removing q^{s-1} + q^{s+1} in homological degree 0, if nonnegative.
inline std::optional<Grid> remainder_for(const BigradedRanks& r, int s) {
  Grid g(r.entries().begin(), r.entries().end());
  for (int j : {s - 1, s + 1}) {
    auto it = g.find({0, j});
    if (it == g.end()) return std::nullopt;
    if (--it->second == 0) g.erase(it);
  }
  return g;
}

/// Quotient by (1 + t q^4), peeled from the lowest homological degree upward.
inline std::optional<Grid> divide_by_knight_pairs(Grid g) {
  Grid quotient;
  while (!g.empty()) {
    auto it = g.begin();
    const auto [i, j] = it->first;
    const long long c = it->second;
    g.erase(it);
    auto partner = g.find({i + 1, j + 4});
    if (partner == g.end() || partner->second < c) return std::nullopt;
    if ((partner->second -= c) == 0) g.erase(partner);
    quotient[{i, j}] = c;
  }
  return quotient;
}

/// Whether the grid splits into pairs (i, j), (i+1, j+4m) with m >= 1:
/// a perfect b-matching between even and odd homological degrees.
inline bool splits_into_pairs(const Grid& g) {
  using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
  using Graph = boost::adjacency_list<
      boost::vecS, boost::vecS, boost::directedS, boost::no_property,
      boost::property<boost::edge_capacity_t, long long,
                      boost::property<boost::edge_residual_capacity_t, long long,
                                      boost::property<boost::edge_reverse_t, Traits::edge_descriptor>>>>;
  long long even_total = 0, odd_total = 0;
  for (const auto& [k, c] : g) ((k.first % 2 == 0) ? even_total : odd_total) += c;
  if (even_total != odd_total) return false;
  if (even_total == 0) return true;

  std::vector<std::pair<int, int>> nodes;
  for (const auto& [k, c] : g) nodes.push_back(k);
  const auto n = nodes.size();
  Graph graph(n + 2);
  const auto source = n, sink = n + 1;
  auto cap = boost::get(boost::edge_capacity, graph);
  auto rev = boost::get(boost::edge_reverse, graph);
  auto add = [&](std::size_t a, std::size_t b, long long c) {
    auto e = boost::add_edge(a, b, graph).first;
    auto back = boost::add_edge(b, a, graph).first;
    cap[e] = c;
    cap[back] = 0;
    rev[e] = back;
    rev[back] = e;
  };
  for (std::size_t a = 0; a < n; ++a) {
    const bool even = nodes[a].first % 2 == 0;
    if (even)
      add(source, a, g.at(nodes[a]));
    else
      add(a, sink, g.at(nodes[a]));
    if (!even) continue;
    for (std::size_t b = 0; b < n; ++b) {
      const int di = nodes[b].first - nodes[a].first;
      const int dj = nodes[b].second - nodes[a].second;
      const bool pair_up = di == 1 && dj > 0 && dj % 4 == 0;
      const bool pair_down = di == -1 && dj < 0 && (-dj) % 4 == 0;
      if (pair_up || pair_down) add(a, b, even_total);
    }
  }
  return boost::edmonds_karp_max_flow(graph, source, sink) == even_total;
}

}  // namespace detail

/// Kh' with Kh = q^{s-1}(1 + q^2 + (1 + t q^4) Kh'), when it exists with
/// nonnegative coefficients.
inline std::optional<LaurentPoly2> decomposition_quotient(const BigradedRanks& r, int s) {
  auto rem = detail::remainder_for(r, s);
  if (!rem) return std::nullopt;
  auto quotient = detail::divide_by_knight_pairs(*rem);
  if (!quotient) return std::nullopt;
  LaurentPoly2 out;
  for (const auto& [k, c] : *quotient) out.add_term({k.first, k.second - (s - 1)}, c);
  return out;
}

/// s from the ranks. With the Lee condition only knight-move pairs (1, 4) may be
/// split off and the answer is unique; without it longer pairs (1, 4m) are allowed
/// too and every consistent value is reported.
inline SResult extract_s(const BigradedRanks& r) {
  if (r.empty()) throw InvalidArgument("cannot extract s from empty homology");
  const bool lee = lee_condition(r);
  int lo = 0, hi = 0;
  bool first = true;
  for (const auto& [k, c] : r.entries()) {
    if (k.second % 2 == 0) throw InvalidArgument("Khovanov homology of a knot lives in odd quantum degrees");
    lo = first ? k.second : std::min(lo, k.second);
    hi = first ? k.second : std::max(hi, k.second);
    first = false;
  }
  std::set<int> found;
  for (int s = lo + 1; s - 1 <= hi; s += 2) {
    auto rem = detail::remainder_for(r, s);
    if (!rem) continue;
    const bool ok = lee ? detail::divide_by_knight_pairs(*rem).has_value() : detail::splits_into_pairs(*rem);
    if (ok) found.insert(s);
  }
  if (found.empty())
    throw DecompositionError("no even s gives a nonnegative decomposition of the Khovanov polynomial");
  if (found.size() == 1) return SResult::determined(*found.begin());
  if (lee)
    throw DecompositionError("decomposition is not unique although the Lee condition holds: " +
                             SResult::ambiguous(found).to_string());
  return SResult::ambiguous(std::move(found));
}

inline SResult rasmussen_s(const PlanarDiagram& d, const HomologyOptions& opts = {}) {
  return extract_s(homology_ranks(d, opts));
}

/// w(D) - O(D) + 1, a lower bound for s.
inline int writhe_seifert_lower_bound(const PlanarDiagram& d) { return writhe(d) - seifert_circles(d) + 1; }

/// |s| / 2 <= g_4.
inline int slice_genus_lower_bound(int s) {
  if (s % 2) throw InvalidArgument("s must be even, got " + std::to_string(s));
  return std::abs(s) / 2;
}

/// (w - k + 1) / 2 for a braid whose closure is a knot.
inline boost::rational<int> slice_bennequin_bound(const BraidWord& b) {
  const int comps = closure_components(b);
  if (comps != 1)
    throw InvalidArgument("braid closure is a " + std::to_string(comps) + "-component link, not a knot");
  return boost::rational<int>(exponent_sum(b) - b.strands + 1, 2);
}

enum class CrossingChangeResult { Holds, Violated, Inconclusive };

inline const char* to_string(CrossingChangeResult r) {
  switch (r) {
    case CrossingChangeResult::Holds: return "holds";
    case CrossingChangeResult::Violated: return "violated";
    default: return "inconclusive";
  }
}

/// s(K_-) <= s(K_+) <= s(K_-) + 2 for the two diagrams differing at crossing `index`.
inline CrossingChangeResult crossing_change_check(const PlanarDiagram& d, std::size_t index,
                                                  const HomologyOptions& opts = {}) {
  const PlanarDiagram other = switch_crossing(d, index);
  const bool d_is_plus = d.crossing(index).sign > 0;
  const SResult s_plus = rasmussen_s(d_is_plus ? d : other, opts);
  const SResult s_minus = rasmussen_s(d_is_plus ? other : d, opts);
  if (!s_plus.is_determined() || !s_minus.is_determined()) return CrossingChangeResult::Inconclusive;
  const int p = s_plus.value(), m = s_minus.value();
  return m <= p && p <= m + 2 ? CrossingChangeResult::Holds : CrossingChangeResult::Violated;
}

}  // namespace knotscan
