#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "knotscan/diagram.hpp"
#include "knotscan/errors.hpp"
#include "knotscan/khovanov/bigraded.hpp"
#include "knotscan/sparse_rank.hpp"

namespace knotscan {

/// The 2^n smoothings of a diagram. At vertex v, bit k set means crossing k takes
/// its 1-smoothing (slots 0-3 and 1-2 joined); otherwise the 0-smoothing joins
/// slots 0-1 and 2-3, which is the oriented smoothing at a positive crossing.
class ResolutionCube {
 public:
  int crossing_count() const { return n_; }
  std::size_t vertex_count() const { return circles_.size(); }
  int circles(std::uint32_t vertex) const { return circles_.at(vertex); }

  /// Circle (0-based, numbered by first arc) carrying `arc` at `vertex`.
  int circle_of(std::uint32_t vertex, int arc) const {
    return circle_id_[static_cast<std::size_t>(vertex) * stride_ + arc];
  }
  /// Some arc on circle `circle` at `vertex`.
  int representative_arc(std::uint32_t vertex, int circle) const {
    return representative_[static_cast<std::size_t>(vertex) * stride_ + circle];
  }

  /// Sign of the edge leaving `vertex` in direction `coordinate`:
  /// (-1)^(number of 1s among the lower coordinates). Every square anticommutes.
  static int edge_sign(std::uint32_t vertex, int coordinate) {
    const std::uint32_t lower = vertex & ((1u << coordinate) - 1u);
    return std::popcount(lower) % 2 ? -1 : 1;
  }

 private:
  friend ResolutionCube build_cube(const PlanarDiagram&, std::size_t);

  int n_ = 0;
  std::size_t stride_ = 0;
  std::vector<int> circles_;
  std::vector<std::uint8_t> circle_id_;
  std::vector<std::uint8_t> representative_;
};

inline ResolutionCube build_cube(const PlanarDiagram& d, std::size_t max_crossings = 16) {
  if (d.crossing_count() > max_crossings)
    throw ResourceLimitError("diagram has " + std::to_string(d.crossing_count()) +
                             " crossings; the resolution cube is limited to " + std::to_string(max_crossings));
  if (d.crossing_count() > 24) throw ResourceLimitError("resolution cube supports at most 24 crossings");
  ResolutionCube cube;
  cube.n_ = static_cast<int>(d.crossing_count());
  const int arcs = d.arc_count();
  cube.stride_ = static_cast<std::size_t>(std::max(arcs + 1, 2));
  const std::size_t vertices = std::size_t{1} << cube.n_;
  cube.circles_.resize(vertices);
  cube.circle_id_.assign(vertices * cube.stride_, 0);
  cube.representative_.assign(vertices * cube.stride_, 0);
  if (cube.n_ == 0) {
    cube.circles_[0] = 1;
    return cube;
  }
  for (std::size_t v = 0; v < vertices; ++v) {
    detail::UnionFind uf(arcs + 1);
    for (int k = 0; k < cube.n_; ++k) {
      const auto& a = d.crossing(k).arcs;
      if ((v >> k) & 1u) {
        uf.unite(a[0], a[3]);
        uf.unite(a[1], a[2]);
      } else {
        uf.unite(a[0], a[1]);
        uf.unite(a[2], a[3]);
      }
    }
    std::vector<int> id_of_root(arcs + 1, -1);
    int count = 0;
    for (int arc = 1; arc <= arcs; ++arc) {
      const int root = uf.find(arc);
      if (id_of_root[root] < 0) {
        id_of_root[root] = count;
        cube.representative_[v * cube.stride_ + count] = static_cast<std::uint8_t>(arc);
        ++count;
      }
      cube.circle_id_[v * cube.stride_ + arc] = static_cast<std::uint8_t>(id_of_root[root]);
    }
    cube.circles_[v] = count;
  }
  return cube;
}

/// Khovanov's chain complex on the cube, split into blocks by homological degree r
/// (number of 1-smoothings) and unshifted quantum degree q = (#1 - #x) + r.
/// A generator is a vertex together with a labelling of its circles (bit set = x).
class CubeComplex {
 public:
  using BlockKey = std::pair<int, int>;  // (r, q)

  CubeComplex(const PlanarDiagram& d, ResolutionCube cube, std::size_t max_generators)
      : diagram_(d), cube_(std::move(cube)) {
    std::size_t total = 0;
    for (std::uint32_t v = 0; v < cube_.vertex_count(); ++v) total += std::size_t{1} << cube_.circles(v);
    if (total > max_generators)
      throw ResourceLimitError("cube complex has " + std::to_string(total) + " generators; limit is " +
                               std::to_string(max_generators));
    for (std::uint32_t v = 0; v < cube_.vertex_count(); ++v) {
      const int c = cube_.circles(v);
      const int r = std::popcount(v);
      for (std::uint32_t label = 0; label < (1u << c); ++label) {
        const int q = c - 2 * std::popcount(label) + r;
        auto& block = blocks_[{r, q}];
        index_.emplace(key(v, label), static_cast<int>(block.size()));
        block.push_back(key(v, label));
      }
    }
  }

  const ResolutionCube& cube() const { return cube_; }
  const std::map<BlockKey, std::vector<std::uint64_t>>& blocks() const { return blocks_; }

  std::size_t block_size(int r, int q) const {
    auto it = blocks_.find({r, q});
    return it == blocks_.end() ? 0 : it->second.size();
  }

  /// Matrix of d: C^{r,q} -> C^{r+1,q}; row = source generator, column = target.
  SparseIntMatrix differential(int r, int q) const {
    SparseIntMatrix m;
    auto src = blocks_.find({r, q});
    auto dst = blocks_.find({r + 1, q});
    m.rows = src == blocks_.end() ? 0 : static_cast<int>(src->second.size());
    m.cols = dst == blocks_.end() ? 0 : static_cast<int>(dst->second.size());
    if (m.rows == 0 || m.cols == 0) {
      m.row_entries.assign(m.rows, {});
      return m;
    }
    m.row_entries.reserve(m.rows);
    std::map<int, long long> acc;
    for (std::uint64_t g : src->second) {
      acc.clear();
      const auto v = static_cast<std::uint32_t>(g >> 32);
      const auto label = static_cast<std::uint32_t>(g);
      for (int k = 0; k < cube_.crossing_count(); ++k) {
        if ((v >> k) & 1u) continue;
        const int sign = ResolutionCube::edge_sign(v, k);
        for (auto [target, coeff] : edge_image(v, label, k)) acc[index_.at(target)] += sign * coeff;
      }
      std::vector<std::pair<int, long long>> row;
      for (auto [c, x] : acc)
        if (x != 0) row.emplace_back(c, x);
      m.row_entries.push_back(std::move(row));
    }
    return m;
  }

 private:
  static std::uint64_t key(std::uint32_t v, std::uint32_t label) { return (std::uint64_t{v} << 32) | label; }

  /// Image of generator (v, label) under the edge map in direction k (merge m or split Delta).
  std::vector<std::pair<std::uint64_t, int>> edge_image(std::uint32_t v, std::uint32_t label, int k) const {
    const std::uint32_t w = v | (1u << k);
    const auto& a = diagram_.crossing(k).arcs;
    const int c1 = cube_.circle_of(v, a[0]), c2 = cube_.circle_of(v, a[2]);
    const int d1 = cube_.circle_of(w, a[0]), d2 = cube_.circle_of(w, a[1]);
    std::uint32_t base = 0;
    for (int x = 0; x < cube_.circles(w); ++x) {
      if (x == d1 || x == d2) continue;
      const int y = cube_.circle_of(v, cube_.representative_arc(w, x));
      base |= ((label >> y) & 1u) << x;
    }
    std::vector<std::pair<std::uint64_t, int>> out;
    if (c1 != c2) {
      const std::uint32_t l1 = (label >> c1) & 1u, l2 = (label >> c2) & 1u;
      if (l1 && l2) return out;  // x * x = 0
      out.emplace_back(key(w, base | ((l1 | l2) << d1)), 1);
    } else {
      if ((label >> c1) & 1u) {
        out.emplace_back(key(w, base | (1u << d1) | (1u << d2)), 1);
      } else {
        out.emplace_back(key(w, base | (1u << d2)), 1);
        out.emplace_back(key(w, base | (1u << d1)), 1);
      }
    }
    return out;
  }

  const PlanarDiagram& diagram_;
  ResolutionCube cube_;
  std::map<BlockKey, std::vector<std::uint64_t>> blocks_;
  std::unordered_map<std::uint64_t, int> index_;
};

/// Rational Khovanov homology straight from the cube, one (r, q) block at a time.
inline BigradedRanks cube_homology(const PlanarDiagram& d, std::size_t max_crossings = 16,
                                   std::size_t max_generators = std::size_t{1} << 24) {
  CubeComplex complex(d, build_cube(d, max_crossings), max_generators);
  std::map<CubeComplex::BlockKey, long long> rank_out;
  for (const auto& [k, gens] : complex.blocks())
    rank_out[k] = static_cast<long long>(rank_over_rationals(complex.differential(k.first, k.second)));
  const int n_plus = positive_crossings(d), n_minus = negative_crossings(d);
  BigradedRanks out;
  for (const auto& [k, gens] : complex.blocks()) {
    const auto [r, q] = k;
    long long h = static_cast<long long>(gens.size()) - rank_out[k];
    if (auto it = rank_out.find({r - 1, q}); it != rank_out.end()) h -= it->second;
    out.add(r - n_minus, q + n_plus - 2 * n_minus, h);
  }
  return out;
}

}  // namespace knotscan
