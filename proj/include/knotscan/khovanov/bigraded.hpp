#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include <json.hpp>

#include "knotscan/errors.hpp"
#include "knotscan/laurent.hpp"

namespace knotscan {

/// Ranks h^{i,j} of rational Khovanov homology, i homological and j quantum.
class BigradedRanks {
 public:
  using Key = std::pair<int, int>;

  BigradedRanks() = default;
  BigradedRanks(std::initializer_list<std::pair<const Key, long long>> init) {
    for (const auto& [k, r] : init) add(k.first, k.second, r);
  }

  long long at(int i, int j) const {
    auto it = ranks_.find({i, j});
    return it == ranks_.end() ? 0 : it->second;
  }

  void add(int i, int j, long long r) {
    if (r == 0) return;
    auto& slot = ranks_[{i, j}];
    slot += r;
    if (slot < 0) throw InvalidArgument("negative homology rank");
    if (slot == 0) ranks_.erase({i, j});
  }

  const std::map<Key, long long>& entries() const { return ranks_; }
  bool empty() const { return ranks_.empty(); }

  long long total_rank() const {
    long long t = 0;
    for (const auto& [k, r] : ranks_) t += r;
    return t;
  }

  /// (i, j) -> (-i, -j): the rational homology of the mirror image.
  BigradedRanks mirrored() const {
    BigradedRanks out;
    for (const auto& [k, r] : ranks_) out.add(-k.first, -k.second, r);
    return out;
  }

  /// Sorted [[i, j, rank], ...].
  std::string to_json() const {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [k, r] : ranks_) a.push_back({k.first, k.second, r});
    return a.dump();
  }

  static BigradedRanks from_json(std::string_view text) {
    BigradedRanks out;
    nlohmann::json a;
    try {
      a = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad ranks JSON: ") + e.what());
    }
    if (!a.is_array()) throw ParseError("ranks JSON must be an array of [i, j, rank] triples");
    for (const auto& t : a) {
      if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer() ||
          !t[2].is_number_integer() || t[2].get<long long>() < 0)
        throw ParseError("ranks JSON must be an array of [i, j, rank] triples");
      out.add(t[0].get<int>(), t[1].get<int>(), t[2].get<long long>());
    }
    return out;
  }

  friend bool operator==(const BigradedRanks&, const BigradedRanks&) = default;

 private:
  std::map<Key, long long> ranks_;
};

/// Kh(t, q) = sum t^i q^j h^{i,j}; exponent order is (t, q).
inline LaurentPoly2 poincare_polynomial(const BigradedRanks& r) {
  LaurentPoly2 p;
  for (const auto& [k, rank] : r.entries()) p.add_term({k.first, k.second}, rank);
  return p;
}

/// Number of diagonals 2i - j = c spanned by the support, counting the empty
/// diagonals in between (neighbouring diagonals differ by 2 in c).
inline int homological_width(const BigradedRanks& r) {
  if (r.empty()) throw InvalidArgument("homological width of empty homology");
  int lo = 0, hi = 0;
  bool first = true;
  for (const auto& [k, rank] : r.entries()) {
    const int c = 2 * k.first - k.second;
    if (first) {
      lo = hi = c;
      first = false;
    }
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  return (hi - lo) / 2 + 1;
}

}  // namespace knotscan
