#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "knotscan/field.hpp"

namespace knotscan {

/// Integer matrix stored by rows; each row is sorted by column and free of zeros.
struct SparseIntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<std::pair<int, long long>>> row_entries;
};

namespace detail {

template <class Field>
using SparseRow = std::vector<std::pair<int, typename Field::value_type>>;

/// out = a - factor * b, all sorted by column.
template <class Field>
void axpy_into(const Field& f, const SparseRow<Field>& a, const typename Field::value_type& factor,
               const SparseRow<Field>& b, SparseRow<Field>& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, f.neg(f.mul(factor, b[j].second)));
      ++j;
    } else {
      auto v = f.sub(a[i].second, f.mul(factor, b[j].second));
      if (!f.is_zero(v)) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
}

}  // namespace detail

/// Rank over `Field` by row reduction against pivots keyed on leading column.
template <class Field>
std::size_t rank(const SparseIntMatrix& m, const Field& f) {
  using Row = detail::SparseRow<Field>;
  std::map<int, Row> pivots;  // leading column -> row with leading entry 1
  Row row, scratch;
  for (const auto& src : m.row_entries) {
    row.clear();
    for (const auto& [c, v] : src) {
      auto x = f.from_int(v);
      if (!f.is_zero(x)) row.emplace_back(c, std::move(x));
    }
    while (!row.empty()) {
      auto it = pivots.find(row.front().first);
      if (it == pivots.end()) {
        const auto inv = f.inv(row.front().second);
        for (auto& e : row) e.second = f.mul(e.second, inv);
        const int lead = row.front().first;
        pivots.emplace(lead, std::move(row));
        row = Row{};
        break;
      }
      const auto factor = row.front().second;
      detail::axpy_into(f, row, factor, it->second, scratch);
      std::swap(row, scratch);
    }
  }
  return pivots.size();
}

/// Rank over Q: agree on two random large primes, else exact rational elimination.
inline std::size_t rank_over_rationals(const SparseIntMatrix& m, std::uint64_t seed = 0x6b68726b) {
  if (m.rows == 0 || m.cols == 0) return 0;
  const auto primes = random_primes(2, seed);
  const auto r1 = rank(m, PrimeField(primes[0]));
  const auto r2 = rank(m, PrimeField(primes[1]));
  if (r1 == r2) return r1;
  return rank(m, RationalField{});
}

}  // namespace knotscan
