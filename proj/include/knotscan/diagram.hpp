#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "knotscan/errors.hpp"

namespace knotscan {

/// One crossing of an oriented diagram.
///
/// `arcs` lists the four arc labels counterclockwise, starting at the incoming
/// under-strand, so the under-strand runs from slot 0 to slot 2 and the
/// over-strand occupies slots 1 and 3. A positive crossing has its over-strand
/// entering at slot 3; a negative one enters at slot 1.
struct Crossing {
  std::array<int, 4> arcs{};
  int sign = 0;

  int over_in_slot() const { return sign > 0 ? 3 : 1; }
  int over_out_slot() const { return sign > 0 ? 1 : 3; }
  bool is_incoming(int slot) const { return slot == 0 || slot == over_in_slot(); }

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

namespace detail {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
  std::vector<int> parent;
};

}  // namespace detail

/// Oriented knot diagram stored as a PD code.
///
/// Arc labels are always 1..2n and increase along the orientation: arc k flows
/// into arc k+1 (cyclically). Construction through from_tuples() enforces that the
/// tuples describe a single closed component with consistent orientation.
class PlanarDiagram {
 public:
  /// The 0-crossing round unknot.
  static PlanarDiagram unknot() { return PlanarDiagram(); }

  /// Validate raw PD tuples (any non-negative labels, each used exactly twice)
  /// and relabel them along the orientation, starting from the smallest input label.
  static PlanarDiagram from_tuples(std::span<const std::array<int, 4>> tuples);

  std::span<const Crossing> crossings() const { return crossings_; }
  const Crossing& crossing(std::size_t i) const { return crossings_.at(i); }
  std::size_t crossing_count() const { return crossings_.size(); }
  int arc_count() const { return static_cast<int>(2 * crossings_.size()); }
  bool is_round_unknot() const { return crossings_.empty(); }

  /// "X(a,b,c,d) X(...)"; "" for the round unknot.
  std::string to_pd_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < crossings_.size(); ++i) {
      const auto& a = crossings_[i].arcs;
      if (i) os << ' ';
      os << "X(" << a[0] << ',' << a[1] << ',' << a[2] << ',' << a[3] << ')';
    }
    return os.str();
  }

  friend bool operator==(const PlanarDiagram&, const PlanarDiagram&) = default;

 private:
  PlanarDiagram() = default;
  explicit PlanarDiagram(std::vector<Crossing> c) : crossings_(std::move(c)) {}

  friend PlanarDiagram switch_crossing(const PlanarDiagram&, std::size_t);
  friend PlanarDiagram mirror(const PlanarDiagram&);

  std::vector<Crossing> crossings_;
};

namespace detail {

/// Over/under reversal of a single crossing, keeping labels and orientation.
inline Crossing switched(const Crossing& c) {
  const auto& a = c.arcs;
  Crossing out;
  // The old over-strand becomes the under-strand; start from its incoming slot.
  if (c.sign > 0)
    out.arcs = {a[3], a[0], a[1], a[2]};
  else
    out.arcs = {a[1], a[2], a[3], a[0]};
  out.sign = -c.sign;
  return out;
}

}  // namespace detail

inline PlanarDiagram PlanarDiagram::from_tuples(std::span<const std::array<int, 4>> tuples) {
  if (tuples.empty())
    throw ParseError("empty diagram; use PlanarDiagram::unknot() for the 0-crossing unknot");
  const std::size_t n = tuples.size();

  // label -> list of (crossing, slot)
  std::map<int, std::vector<std::pair<int, int>>> where;
  for (std::size_t c = 0; c < n; ++c)
    for (int s = 0; s < 4; ++s) {
      if (tuples[c][s] < 0) throw ParseError("negative arc label");
      where[tuples[c][s]].emplace_back(static_cast<int>(c), s);
    }
  for (const auto& [label, slots] : where)
    if (slots.size() != 2)
      throw ParseError("arc label " + std::to_string(label) + " appears " +
                       std::to_string(slots.size()) + " times (expected 2)");

  auto other_end = [&](int c, int s) {
    const auto& sl = where.at(tuples[c][s]);
    return sl[0] == std::make_pair(c, s) ? sl[1] : sl[0];
  };

  // Walk from crossing 0's outgoing under-slot. Under-strands fix the direction of
  // travel; over-strand directions are read off as the walk passes them.
  std::vector<int> over_in(n, -1);
  std::vector<int> arc_order;  // input labels in orientation order
  arc_order.reserve(2 * n);
  int c = 0, s = 2;
  do {
    arc_order.push_back(tuples[c][s]);
    auto [c2, s2] = other_end(c, s);
    if (s2 == 2) throw ParseError("inconsistent orientation: arc enters an under-strand at its outgoing slot");
    if (s2 == 1 || s2 == 3) {
      if (over_in[c2] != -1 && over_in[c2] != s2)
        throw ParseError("inconsistent orientation at crossing " + std::to_string(c2));
      over_in[c2] = s2;
    }
    c = c2;
    s = (s2 + 2) % 4;
    if (arc_order.size() > 2 * n) throw ParseError("inconsistent orientation");
  } while (!(c == 0 && s == 2));

  if (arc_order.size() != 2 * n)
    throw ParseError("diagram has more than one component (links are not supported)");
  for (std::size_t i = 0; i < n; ++i)
    if (over_in[i] == -1) throw ParseError("diagram has more than one component (links are not supported)");

  // Relabel so that the smallest input label becomes 1 and labels follow the orientation.
  const int smallest = where.begin()->first;
  const auto start = std::find(arc_order.begin(), arc_order.end(), smallest) - arc_order.begin();
  std::map<int, int> relabel;
  for (std::size_t k = 0; k < arc_order.size(); ++k)
    relabel[arc_order[(start + k) % arc_order.size()]] = static_cast<int>(k) + 1;

  std::vector<Crossing> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < 4; ++k) out[i].arcs[k] = relabel.at(tuples[i][k]);
    out[i].sign = over_in[i] == 3 ? +1 : -1;
  }
  return PlanarDiagram(std::move(out));
}

/// Parse "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)". Square brackets, commas between
/// tuples and a surrounding "PD[...]" are tolerated.
inline PlanarDiagram parse_pd(std::string_view text) {
  std::vector<std::array<int, 4>> tuples;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
      ++i;
  };
  std::string_view body = text;
  {
    auto first = body.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && body.substr(first, 3) == "PD[") {
      auto last = body.find_last_of(']');
      if (last == std::string_view::npos || last < first + 3) throw ParseError("unterminated PD[...]");
      body = body.substr(first + 3, last - first - 3);
    }
  }
  text = body;
  skip();
  while (i < text.size()) {
    if (text[i] != 'X') throw ParseError("expected 'X' at offset " + std::to_string(i));
    ++i;
    if (i >= text.size() || (text[i] != '(' && text[i] != '[')) throw ParseError("expected '(' after X");
    const char close = text[i] == '(' ? ')' : ']';
    ++i;
    auto end = text.find(close, i);
    if (end == std::string_view::npos) throw ParseError("unterminated crossing tuple");
    std::string inner(text.substr(i, end - i));
    std::replace(inner.begin(), inner.end(), ',', ' ');
    std::istringstream is(inner);
    std::array<int, 4> t{};
    for (auto& x : t)
      if (!(is >> x)) throw ParseError("crossing tuple needs four integer labels: '" + inner + "'");
    std::string extra;
    if (is >> extra) throw ParseError("crossing tuple has more than four entries: '" + inner + "'");
    tuples.push_back(t);
    i = end + 1;
    skip();
  }
  return PlanarDiagram::from_tuples(tuples);
}

inline int writhe(const PlanarDiagram& d) {
  int w = 0;
  for (const auto& c : d.crossings()) w += c.sign;
  return w;
}

inline int positive_crossings(const PlanarDiagram& d) {
  return static_cast<int>(std::count_if(d.crossings().begin(), d.crossings().end(),
                                        [](const Crossing& c) { return c.sign > 0; }));
}

inline int negative_crossings(const PlanarDiagram& d) {
  return static_cast<int>(d.crossing_count()) - positive_crossings(d);
}

/// Number of circles of the oriented (Seifert) smoothing.
inline int seifert_circles(const PlanarDiagram& d) {
  if (d.is_round_unknot()) return 1;
  detail::UnionFind uf(d.arc_count() + 1);
  int circles = d.arc_count();
  for (const auto& c : d.crossings()) {
    const auto& a = c.arcs;
    if (c.sign > 0) {
      circles -= uf.unite(a[0], a[1]);
      circles -= uf.unite(a[3], a[2]);
    } else {
      circles -= uf.unite(a[0], a[3]);
      circles -= uf.unite(a[1], a[2]);
    }
  }
  return circles;
}

inline PlanarDiagram switch_crossing(const PlanarDiagram& d, std::size_t index) {
  if (index >= d.crossing_count())
    throw InvalidArgument("crossing index " + std::to_string(index) + " out of range (diagram has " +
                          std::to_string(d.crossing_count()) + " crossings)");
  auto c = d.crossings_;
  c[index] = detail::switched(c[index]);
  return PlanarDiagram(std::move(c));
}

inline PlanarDiagram mirror(const PlanarDiagram& d) {
  auto c = d.crossings_;
  for (auto& x : c) x = detail::switched(x);
  return PlanarDiagram(std::move(c));
}

/// Insert a Reidemeister-I kink of the given sign on arc `arc` (1-based label).
/// On the round unknot the arc argument is ignored.
inline PlanarDiagram add_kink(const PlanarDiagram& d, int arc, int sign) {
  if (sign != 1 && sign != -1) throw InvalidArgument("kink sign must be +1 or -1");
  if (d.is_round_unknot()) {
    const std::array<int, 4> t = sign > 0 ? std::array{1, 1, 2, 2} : std::array{1, 2, 2, 1};
    return PlanarDiagram::from_tuples(std::span(&t, 1));
  }
  if (arc < 1 || arc > d.arc_count()) throw InvalidArgument("arc label out of range");
  std::vector<std::array<int, 4>> t;
  for (const auto& c : d.crossings()) t.push_back(c.arcs);
  const int x = d.arc_count() + 1, y = d.arc_count() + 2;
  // Retarget the head of `arc` to the new outgoing arc y.
  bool done = false;
  for (std::size_t i = 0; i < t.size() && !done; ++i)
    for (int s = 0; s < 4 && !done; ++s)
      if (t[i][s] == arc && d.crossing(i).is_incoming(s)) {
        t[i][s] = y;
        done = true;
      }
  t.push_back(sign > 0 ? std::array{arc, y, x, x} : std::array{arc, x, x, y});
  return PlanarDiagram::from_tuples(t);
}

/// True when over- and under-passages alternate along the knot.
inline bool is_alternating(const PlanarDiagram& d) {
  const int m = d.arc_count();
  if (m == 0) return true;
  // passage[k]: true when arc k ends in an under-passage.
  std::vector<char> under(m + 1, 0);
  for (const auto& c : d.crossings()) under[c.arcs[0]] = 1;
  for (int k = 1; k <= m; ++k) {
    const int next = k == m ? 1 : k + 1;
    if (under[k] == under[next]) return false;
  }
  return true;
}

}  // namespace knotscan
