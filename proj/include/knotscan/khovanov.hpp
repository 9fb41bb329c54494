#pragma once

#include <cstdint>
#include <map>

#include "knotscan/diagram.hpp"
#include "knotscan/errors.hpp"
#include "knotscan/field.hpp"
#include "knotscan/khovanov/bigraded.hpp"
#include "knotscan/khovanov/cube.hpp"
#include "knotscan/khovanov/scanning.hpp"

namespace knotscan {

enum class HomologyEngine { Scanning, Cube };

struct HomologyOptions {
  std::size_t max_crossings = 16;
  HomologyEngine engine = HomologyEngine::Scanning;
  /// Ceiling on simultaneously live generators (cube: total generators).
  std::size_t max_generators = std::size_t{1} << 22;
  std::uint64_t prime_seed = 0x6b68726b;
};

namespace detail {

inline BigradedRanks shift_gradings(const std::map<std::pair<int, int>, long long>& raw, const PlanarDiagram& d) {
  const int n_plus = positive_crossings(d), n_minus = negative_crossings(d);
  BigradedRanks out;
  for (const auto& [k, r] : raw) out.add(k.first - n_minus, k.second + n_plus - 2 * n_minus, r);
  return out;
}

}  // namespace detail

/// Ranks of rational Khovanov homology, normalised so the result is a knot invariant.
///
/// The scanning engine runs modulo two random primes; if they disagree, it
/// reruns over the rationals.
inline BigradedRanks homology_ranks(const PlanarDiagram& d, const HomologyOptions& opts = {}) {
  if (d.crossing_count() > opts.max_crossings)
    throw ResourceLimitError("diagram has " + std::to_string(d.crossing_count()) +
                             " crossings; homology limit is " + std::to_string(opts.max_crossings));
  if (d.is_round_unknot()) return BigradedRanks{{{0, -1}, 1}, {{0, 1}, 1}};
  if (opts.engine == HomologyEngine::Cube) return cube_homology(d, opts.max_crossings, opts.max_generators);

  const auto primes = random_primes(2, opts.prime_seed);
  const auto first = TangleScanner<PrimeField>(PrimeField(primes[0]), opts.max_generators).run(d);
  const auto second = TangleScanner<PrimeField>(PrimeField(primes[1]), opts.max_generators).run(d);
  if (first == second) return detail::shift_gradings(first, d);
  return detail::shift_gradings(TangleScanner<RationalField>(RationalField{}, opts.max_generators).run(d), d);
}

}  // namespace knotscan
