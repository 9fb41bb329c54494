#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace knotscan {

/// Z/p for a prime p < 2^31, so products fit in 64 bits.
struct PrimeField {
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t prime) : p(prime) {}

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long v) const {
    long long r = v % static_cast<long long>(p);
    return static_cast<value_type>(r < 0 ? r + p : r);
  }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<value_type>(s >= p ? s - p : s);
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (p - b); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(std::uint64_t{a} * b % p);
  }
  value_type inv(value_type a) const {
    // Fermat: a^(p-2).
    std::uint64_t result = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return static_cast<value_type>(result);
  }

  std::uint32_t p;
};

/// The rationals, exact via GMP.
struct RationalField {
  using value_type = mpq_class;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long v) const { return mpq_class(mpz_class(static_cast<long>(v))); }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const { return 1 / a; }
};

namespace detail {

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

/// Deterministic Miller-Rabin for n < 2^32 (bases 2, 7, 61).
inline bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t sp : {2u, 3u, 5u, 7u, 11u, 13u})
    if (n % sp == 0) return n == sp;
  std::uint32_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ull, 7ull, 61ull}) {
    if (a % n == 0) continue;
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

/// `count` distinct primes drawn from [2^30, 2^31) by a seeded generator, so runs
/// are reproducible.
inline std::vector<std::uint32_t> random_primes(std::size_t count, std::uint64_t seed = 0x6b68726b) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> dist(1u << 30, (1u << 31) - 1);
  std::vector<std::uint32_t> out;
  while (out.size() < count) {
    std::uint32_t c = dist(rng) | 1u;
    while (!detail::is_prime_u32(c)) c += 2;
    if (c >= (1u << 31)) continue;
    bool dup = false;
    for (auto q : out) dup |= q == c;
    if (!dup) out.push_back(c);
  }
  return out;
}

}  // namespace knotscan
