#pragma once

#include <map>
#include <queue>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "knotscan/diagram.hpp"
#include "knotscan/errors.hpp"

namespace knotscan {

namespace detail {

/// Signature of a symmetric rational matrix by congruence diagonalisation.
inline int symmetric_signature(std::vector<std::vector<mpq_class>> a) {
  const std::size_t n = a.size();
  int sig = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n && piv == n; ++i)
      if (sgn(a[i][i]) != 0) piv = i;
    if (piv == n) {
      // Zero diagonal: add a row/column with a nonzero off-diagonal entry.
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (sgn(a[i][j]) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) break;
      for (std::size_t t = 0; t < n; ++t) a[pi][t] += a[pj][t];
      for (std::size_t t = 0; t < n; ++t) a[t][pi] += a[t][pj];
      piv = pi;
    }
    std::swap(a[k], a[piv]);
    for (auto& row : a) std::swap(row[k], row[piv]);
    const mpq_class p = a[k][k];
    sig += sgn(p) > 0 ? 1 : -1;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(a[i][k]) == 0) continue;
      const mpq_class f = a[i][k] / p;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
    for (std::size_t j = k + 1; j < n; ++j) a[k][j] = 0;
    for (std::size_t i = k + 1; i < n; ++i) a[i][k] = 0;
  }
  return sig;
}

}  // namespace detail

/// Knot signature from the Goeritz matrix of a checkerboard colouring with the
/// Gordon-Litherland correction, signed so that the positive trefoil has +2.
inline int signature(const PlanarDiagram& d) {
  const std::size_t n = d.crossing_count();
  if (n == 0) return 0;

  // Corner (x, p) sits between slots p and p+1 of crossing x.
  std::map<int, std::vector<std::pair<int, int>>> ends;
  for (std::size_t x = 0; x < n; ++x)
    for (int s = 0; s < 4; ++s) ends[d.crossing(x).arcs[s]].emplace_back(static_cast<int>(x), s);
  auto twin = [&](int x, int s) {
    const auto& e = ends.at(d.crossing(x).arcs[s]);
    return e[0] == std::make_pair(x, s) ? e[1] : e[0];
  };
  std::vector<int> face(4 * n, -1);
  int faces = 0;
  for (std::size_t start = 0; start < 4 * n; ++start) {
    if (face[start] >= 0) continue;
    int x = static_cast<int>(start / 4), p = static_cast<int>(start % 4);
    while (face[4 * x + p] < 0) {
      face[4 * x + p] = faces;
      auto [y, q] = twin(x, p);
      x = y;
      p = (q + 3) % 4;
    }
    ++faces;
  }
  if (static_cast<std::size_t>(faces) != n + 2) throw InvalidArgument("diagram is not planar");

  // Two-colour the faces: corners p and p+1 are separated by the arc at slot p+1.
  std::vector<std::vector<int>> adj(faces);
  for (std::size_t x = 0; x < n; ++x)
    for (int p = 0; p < 4; ++p) {
      const int f = face[4 * x + p], g = face[4 * x + (p + 1) % 4];
      adj[f].push_back(g);
      adj[g].push_back(f);
    }
  std::vector<int> colour(faces, -1);
  colour[0] = 0;
  std::queue<int> bfs;
  bfs.push(0);
  while (!bfs.empty()) {
    const int f = bfs.front();
    bfs.pop();
    for (int g : adj[f]) {
      if (colour[g] < 0) {
        colour[g] = 1 - colour[f];
        bfs.push(g);
      } else if (colour[g] == colour[f]) {
        throw InvalidArgument("diagram has no checkerboard colouring");
      }
    }
  }

  std::vector<int> white_index(faces, -1);
  int whites = 0;
  for (int f = 0; f < faces; ++f)
    if (colour[f] == 0) white_index[f] = whites++;
  std::vector<std::vector<mpq_class>> g(whites, std::vector<mpq_class>(whites, 0));
  int mu = 0;
  for (std::size_t x = 0; x < n; ++x) {
    const auto& c = d.crossing(x);
    const bool white_even = colour[face[4 * x]] == 0;  // white corners 0 and 2
    const int eta = white_even ? 1 : -1;
    const bool type_one = white_even == (c.sign < 0);
    if (!type_one) mu += eta;
    const int a = white_index[face[4 * x + (white_even ? 0 : 1)]];
    const int b = white_index[face[4 * x + (white_even ? 2 : 3)]];
    if (a == b) continue;
    g[a][b] -= eta;
    g[b][a] -= eta;
    g[a][a] += eta;
    g[b][b] += eta;
  }
  // Drop one white region.
  g.pop_back();
  for (auto& row : g) row.pop_back();
  const int classical = detail::symmetric_signature(std::move(g)) - mu;
  return -classical;
}

}  // namespace knotscan
