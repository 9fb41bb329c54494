#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "knotscan/diagram.hpp"
#include "knotscan/errors.hpp"
#include "knotscan/laurent.hpp"

namespace knotscan {

/// Oriented link diagram used inside the skein recursion. Labels are arbitrary
/// positive integers, each on exactly two crossing slots; components without
/// crossings are counted in `free_loops`.
struct LinkDiagram {
  std::vector<Crossing> crossings;
  int free_loops = 0;

  static LinkDiagram from_knot(const PlanarDiagram& d) {
    LinkDiagram out;
    out.crossings.assign(d.crossings().begin(), d.crossings().end());
    if (d.is_round_unknot()) out.free_loops = 1;
    return out;
  }

  /// Key that ignores the actual label values.
  std::string key() const {
    std::unordered_map<int, int> relabel;
    std::ostringstream os;
    os << free_loops << ':';
    for (const auto& c : crossings) {
      for (int a : c.arcs) {
        auto [it, fresh] = relabel.emplace(a, static_cast<int>(relabel.size()));
        os << it->second << ',';
      }
      os << (c.sign > 0 ? '+' : '-');
    }
    return os.str();
  }
};

namespace detail {

/// Drop crossing `index`, identify the label pairs in `merges`, and count as new
/// free loops those merged classes among `watch` that no longer touch a crossing.
inline LinkDiagram remove_crossing(const LinkDiagram& d, std::size_t index,
                                   const std::vector<std::pair<int, int>>& merges, const std::vector<int>& watch) {
  int max_label = 0;
  for (const auto& c : d.crossings)
    for (int a : c.arcs) max_label = std::max(max_label, a);
  UnionFind uf(max_label + 1);
  for (auto [a, b] : merges) uf.unite(a, b);
  LinkDiagram out;
  out.free_loops = d.free_loops;
  std::vector<char> used(max_label + 1, 0);
  for (std::size_t i = 0; i < d.crossings.size(); ++i) {
    if (i == index) continue;
    Crossing c = d.crossings[i];
    for (int& a : c.arcs) {
      a = uf.find(a);
      used[a] = 1;
    }
    out.crossings.push_back(c);
  }
  std::vector<int> roots;
  for (int w : watch) roots.push_back(uf.find(w));
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  for (int r : roots)
    if (!used[r]) ++out.free_loops;
  return out;
}

/// Remove Reidemeister-I curls until none is left.
inline void remove_kinks(LinkDiagram& d) {
  for (bool again = true; again;) {
    again = false;
    for (std::size_t i = 0; i < d.crossings.size() && !again; ++i) {
      const auto& a = d.crossings[i].arcs;
      for (int p = 0; p < 4; ++p) {
        if (a[p] != a[(p + 1) % 4]) continue;
        const int x = a[(p + 2) % 4], y = a[(p + 3) % 4];
        d = remove_crossing(d, i, {{x, y}}, {x});
        again = true;
        break;
      }
    }
  }
}

inline LinkDiagram switched_at(const LinkDiagram& d, std::size_t index) {
  LinkDiagram out = d;
  out.crossings[index] = switched(out.crossings[index]);
  return out;
}

/// Oriented smoothing: incoming strands continue into the outgoing slot on their own side.
inline LinkDiagram smoothed_at(const LinkDiagram& d, std::size_t index) {
  const auto& c = d.crossings[index];
  const auto& a = c.arcs;
  std::vector<std::pair<int, int>> merges =
      c.sign > 0 ? std::vector<std::pair<int, int>>{{a[0], a[1]}, {a[3], a[2]}}
                 : std::vector<std::pair<int, int>>{{a[0], a[3]}, {a[1], a[2]}};
  return remove_crossing(d, index, merges, {a[0], a[1], a[2], a[3]});
}

/// Walk components in order of their smallest label, each from that label.
/// Returns the first crossing first reached along its under-strand; when there is
/// none the diagram is descending and `components` holds its component count.
inline std::optional<std::size_t> first_ascending_crossing(const LinkDiagram& d, int& components) {
  std::unordered_map<int, std::pair<int, int>> head;  // label -> (crossing, incoming slot)
  std::vector<int> labels;
  for (std::size_t i = 0; i < d.crossings.size(); ++i) {
    const auto& c = d.crossings[i];
    head[c.arcs[0]] = {static_cast<int>(i), 0};
    head[c.arcs[c.over_in_slot()]] = {static_cast<int>(i), c.over_in_slot()};
    labels.push_back(c.arcs[0]);
    labels.push_back(c.arcs[c.over_in_slot()]);
  }
  std::sort(labels.begin(), labels.end());
  std::unordered_map<int, char> visited;
  std::vector<char> met(d.crossings.size(), 0);
  components = d.free_loops;
  for (int start : labels) {
    if (visited.count(start)) continue;
    ++components;
    int cur = start;
    do {
      visited[cur] = 1;
      const auto [ci, slot] = head.at(cur);
      const auto& c = d.crossings[ci];
      const bool under = slot == 0;
      if (!met[ci]) {
        if (under) return static_cast<std::size_t>(ci);
        met[ci] = 1;
      }
      cur = c.arcs[under ? 2 : c.over_out_slot()];
    } while (cur != start);
  }
  return std::nullopt;
}

class HomflyEngine {
 public:
  explicit HomflyEngine(std::size_t budget) : budget_(budget) {}

  LaurentPoly2 eval(LinkDiagram d) {
    remove_kinks(d);
    const std::string key = d.key();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (++nodes_ > budget_)
      throw ResourceLimitError("HOMFLY skein recursion exceeded " + std::to_string(budget_) + " nodes");
    int components = 0;
    const auto c = first_ascending_crossing(d, components);
    LaurentPoly2 result;
    if (!c) {
      result = unlink(components);
    } else if (d.crossings[*c].sign > 0) {
      // P+ = v^2 P- + v z P0
      result = eval(switched_at(d, *c)).shifted({2, 0});
      result += eval(smoothed_at(d, *c)).shifted({1, 1});
    } else {
      // P- = v^-2 P+ - v^-1 z P0
      result = eval(switched_at(d, *c)).shifted({-2, 0});
      result -= eval(smoothed_at(d, *c)).shifted({-1, 1});
    }
    memo_.emplace(key, result);
    return result;
  }

  std::size_t nodes() const { return nodes_; }

 private:
  /// ((v^-1 - v) / z)^(k-1)
  static LaurentPoly2 unlink(int k) {
    LaurentPoly2 mu;
    mu.add_term({-1, -1}, 1);
    mu.add_term({1, -1}, -1);
    LaurentPoly2 out = LaurentPoly2::constant(1);
    for (int i = 1; i < k; ++i) out = out * mu;
    return out;
  }

  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::unordered_map<std::string, LaurentPoly2> memo_;
};

}  // namespace detail

inline constexpr std::size_t kDefaultSkeinBudget = 2'000'000;

/// HOMFLY polynomial of a link diagram, variables (v, z), with
/// v^-1 P+ - v P- = z P0 and P(unknot) = 1.
inline LaurentPoly2 homfly_link(const LinkDiagram& d, std::size_t budget = kDefaultSkeinBudget) {
  return detail::HomflyEngine(budget).eval(d);
}

inline LaurentPoly2 homfly(const PlanarDiagram& d, std::size_t budget = kDefaultSkeinBudget) {
  return homfly_link(LinkDiagram::from_knot(d), budget);
}

/// The two-component link obtained by the oriented smoothing of one crossing.
inline LinkDiagram oriented_smoothing(const PlanarDiagram& d, std::size_t index) {
  if (index >= d.crossing_count()) throw InvalidArgument("crossing index out of range");
  return detail::smoothed_at(LinkDiagram::from_knot(d), index);
}

}  // namespace knotscan
