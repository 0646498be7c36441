#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

#include "error.hpp"

namespace macq {

using StationId = int;

/// Set of 1-based station ids. Ids 1..64 live in one inline word; larger ids
/// spill into extra words, so the common case never allocates.
class StationSet {
 public:
  StationSet() = default;
  StationSet(std::initializer_list<StationId> ids) {
    for (StationId id : ids) insert(id);
  }

  static StationSet from_ids(const std::vector<StationId>& ids) {
    StationSet s;
    for (StationId id : ids) s.insert(id);
    return s;
  }

  /// {lo, lo+1, ..., hi}; empty when hi < lo.
  static StationSet range(StationId lo, StationId hi) {
    StationSet s;
    for (StationId id = lo; id <= hi; ++id) s.insert(id);
    return s;
  }

  static StationSet from_mask(std::uint64_t mask) {
    StationSet s;
    s.low_ = mask;
    return s;
  }

  void insert(StationId id) {
    require_valid(id);
    auto [word, bit] = locate(id);
    if (word == 0) {
      low_ |= bit;
      return;
    }
    if (high_.size() < word) high_.resize(word, 0);
    high_[word - 1] |= bit;
  }

  void erase(StationId id) {
    if (id < 1) return;
    auto [word, bit] = locate(id);
    if (word == 0) {
      low_ &= ~bit;
    } else if (word <= high_.size()) {
      high_[word - 1] &= ~bit;
      trim();
    }
  }

  bool contains(StationId id) const {
    if (id < 1) return false;
    auto [word, bit] = locate(id);
    if (word == 0) return (low_ & bit) != 0;
    return word <= high_.size() && (high_[word - 1] & bit) != 0;
  }

  std::size_t size() const {
    std::size_t count = static_cast<std::size_t>(std::popcount(low_));
    for (std::uint64_t w : high_) count += static_cast<std::size_t>(std::popcount(w));
    return count;
  }

  bool empty() const { return low_ == 0 && high_.empty(); }

  /// Largest member, or 0 when empty.
  StationId max_id() const {
    for (std::size_t i = high_.size(); i > 0; --i) {
      if (high_[i - 1] != 0) return static_cast<StationId>(i * 64 + 64 - std::countl_zero(high_[i - 1]));
    }
    return low_ == 0 ? 0 : 64 - std::countl_zero(low_);
  }

  /// Smallest member, or 0 when empty.
  StationId min_id() const {
    if (low_ != 0) return std::countr_zero(low_) + 1;
    for (std::size_t i = 0; i < high_.size(); ++i) {
      if (high_[i] != 0) return static_cast<StationId>((i + 1) * 64 + std::countr_zero(high_[i]) + 1);
    }
    return 0;
  }

  /// Members in ascending order.
  std::vector<StationId> members() const {
    std::vector<StationId> out;
    out.reserve(size());
    for_each_word([&](std::size_t word, std::uint64_t bits) {
      while (bits != 0) {
        out.push_back(static_cast<StationId>(word * 64 + std::countr_zero(bits) + 1));
        bits &= bits - 1;
      }
    });
    return out;
  }

  /// True when the set fits in the inline word; `mask()` is then exact.
  bool is_small() const { return high_.empty(); }
  std::uint64_t mask() const { return low_; }

  bool is_subset_of(const StationSet& other) const {
    if ((low_ & ~other.low_) != 0) return false;
    for (std::size_t i = 0; i < high_.size(); ++i) {
      std::uint64_t o = i < other.high_.size() ? other.high_[i] : 0;
      if ((high_[i] & ~o) != 0) return false;
    }
    return true;
  }

  bool within(StationId n) const { return max_id() <= n; }

  friend StationSet operator&(const StationSet& a, const StationSet& b) {
    StationSet out;
    out.low_ = a.low_ & b.low_;
    std::size_t common = std::min(a.high_.size(), b.high_.size());
    out.high_.resize(common);
    for (std::size_t i = 0; i < common; ++i) out.high_[i] = a.high_[i] & b.high_[i];
    out.trim();
    return out;
  }

  friend StationSet operator|(const StationSet& a, const StationSet& b) {
    StationSet out;
    out.low_ = a.low_ | b.low_;
    out.high_.resize(std::max(a.high_.size(), b.high_.size()), 0);
    for (std::size_t i = 0; i < out.high_.size(); ++i) {
      if (i < a.high_.size()) out.high_[i] |= a.high_[i];
      if (i < b.high_.size()) out.high_[i] |= b.high_[i];
    }
    return out;
  }

  /// Set difference a \ b.
  friend StationSet operator-(const StationSet& a, const StationSet& b) {
    StationSet out = a;
    out.low_ &= ~b.low_;
    for (std::size_t i = 0; i < out.high_.size() && i < b.high_.size(); ++i) out.high_[i] &= ~b.high_[i];
    out.trim();
    return out;
  }

  friend bool operator==(const StationSet&, const StationSet&) = default;

  /// Lexicographic order of the ascending member lists.
  friend std::strong_ordering operator<=>(const StationSet& a, const StationSet& b) {
    if (a.is_small() && b.is_small()) return lex_small(a.low_, b.low_);
    auto ma = a.members();
    auto mb = b.members();
    return std::lexicographical_compare_three_way(ma.begin(), ma.end(), mb.begin(), mb.end());
  }

  /// "{1,3,4}"
  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (StationId id : members()) {
      if (!first) out += ',';
      out += std::to_string(id);
      first = false;
    }
    out += '}';
    return out;
  }

 private:
  static void require_valid(StationId id) {
    if (id < 1) throw Error(ErrorKind::DomainError, "station id must be >= 1, got " + std::to_string(id));
  }

  static std::pair<std::size_t, std::uint64_t> locate(StationId id) {
    auto index = static_cast<std::size_t>(id - 1);
    return {index / 64, std::uint64_t{1} << (index % 64)};
  }

  template <typename Fn>
  void for_each_word(Fn&& fn) const {
    fn(std::size_t{0}, low_);
    for (std::size_t i = 0; i < high_.size(); ++i) fn(i + 1, high_[i]);
  }

  void trim() {
    while (!high_.empty() && high_.back() == 0) high_.pop_back();
  }

  static std::strong_ordering lex_small(std::uint64_t a, std::uint64_t b) {
    while (a != 0 && b != 0) {
      std::uint64_t la = a & (~a + 1);
      std::uint64_t lb = b & (~b + 1);
      if (la != lb) return la < lb ? std::strong_ordering::less : std::strong_ordering::greater;
      a ^= la;
      b ^= lb;
    }
    if (a == b) return std::strong_ordering::equal;
    return a == 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }

  std::uint64_t low_ = 0;
  std::vector<std::uint64_t> high_;
};

inline constexpr StationId kDefaultStationCap = 64;

/// Problem size: n stations labelled 1..n, exactly d of them live.
struct GameConfig {
  StationId n = 1;
  StationId d = 1;

  GameConfig() = default;
  GameConfig(StationId stations, StationId live, StationId station_cap = kDefaultStationCap)
      : n(stations), d(live) {
    if (station_cap < 1) throw Error(ErrorKind::ConfigError, "station cap must be positive");
    if (n < 1) throw Error(ErrorKind::ConfigError, "n must be >= 1, got " + std::to_string(n));
    if (n > station_cap)
      throw Error(ErrorKind::ConfigError,
                  "n=" + std::to_string(n) + " exceeds station cap " + std::to_string(station_cap));
    if (d < 1 || d > n)
      throw Error(ErrorKind::ConfigError,
                  "d must satisfy 1 <= d <= n, got n=" + std::to_string(n) + " d=" + std::to_string(d));
  }

  StationSet all_stations() const { return StationSet::range(1, n); }

  friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

/// C(n, k) in 64 bits, saturating at UINT64_MAX. Used for budget checks only.
inline std::uint64_t saturating_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(acc);
}

/// Calls fn(StationSet) for every size-k subset of 1..n in lexicographic order.
template <typename Fn>
void for_each_subset_of_size(StationId n, StationId k, Fn&& fn) {
  if (k < 0 || k > n) return;
  std::vector<StationId> idx(static_cast<std::size_t>(k));
  for (StationId i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    fn(StationSet::from_ids(idx));
    StationId pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos + 1) --pos;
    if (pos < 0) return;
    ++idx[static_cast<std::size_t>(pos)];
    for (StationId j = pos + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

inline std::vector<StationSet> subsets_of_size(StationId n, StationId k) {
  std::vector<StationSet> out;
  for_each_subset_of_size(n, k, [&](StationSet s) { out.push_back(std::move(s)); });
  return out;
}

}  // namespace macq
