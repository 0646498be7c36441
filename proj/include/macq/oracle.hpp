#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <memory>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "knowledge.hpp"
#include "qtree.hpp"

namespace macq::oracle {

/// Same contents as a KnowledgeState; used as the minimax game position.
using OracleState = KnowledgeState;

struct OracleLimits {
  StationId max_n = 6;
  StationId max_d = 3;
  std::size_t state_budget = 5'000'000;
  bool use_canonical = true;
};

namespace detail {

using Family = unsigned __int128;  // bit i set <=> i-th size-d subset (lex order) is a candidate

struct Key {
  Family family;
  std::uint64_t transmitted;
  friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    auto lo = static_cast<std::uint64_t>(k.family);
    auto hi = static_cast<std::uint64_t>(k.family >> 64);
    std::uint64_t h = lo * 0x9E3779B97F4A7C15ULL ^ (hi + 0x632BE59BD9B4E019ULL + (lo << 6) + (lo >> 2));
    return static_cast<std::size_t>(h ^ (k.transmitted * 0xC2B2AE3D27D4EB4FULL));
  }
};

inline int popcount128(Family f) {
  return std::popcount(static_cast<std::uint64_t>(f)) + std::popcount(static_cast<std::uint64_t>(f >> 64));
}

inline int lowest_bit128(Family f) {
  auto lo = static_cast<std::uint64_t>(f);
  return lo != 0 ? std::countr_zero(lo) : 64 + std::countr_zero(static_cast<std::uint64_t>(f >> 64));
}

}  // namespace detail

/// Permutations of 1..n that fix every transmitted station.
inline std::vector<std::vector<StationId>> relabelings(StationId n, const StationSet& fixed) {
  std::vector<StationId> movable;
  for (StationId id = 1; id <= n; ++id) {
    if (!fixed.contains(id)) movable.push_back(id);
  }
  std::vector<StationId> image = movable;
  std::vector<std::vector<StationId>> out;
  do {
    std::vector<StationId> perm(static_cast<std::size_t>(n) + 1);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = 0; i < movable.size(); ++i) perm[static_cast<std::size_t>(movable[i])] = image[i];
    out.push_back(std::move(perm));
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

inline StationSet apply_relabeling(const std::vector<StationId>& perm, const StationSet& s) {
  StationSet out;
  for (StationId id : s.members()) out.insert(perm[static_cast<std::size_t>(id)]);
  return out;
}

/// Canonical representative under relabeling of the not-yet-transmitted
/// stations: the lexicographically least sorted candidate list over all such
/// relabelings. Transmitted ids stay fixed.
inline OracleState canonicalize(const OracleState& state, StationId n) {
  OracleState best;
  bool first = true;
  for (const auto& perm : relabelings(n, state.transmitted)) {
    OracleState image{{}, state.transmitted};
    for (const StationSet& c : state.candidates) image.candidates.push_back(apply_relabeling(perm, c));
    std::sort(image.candidates.begin(), image.candidates.end());
    if (first || image.candidates < best.candidates) {
      best = std::move(image);
      first = false;
    }
  }
  return best;
}

/// Exhaustive minimax over all deterministic adaptive strategies:
///   f(state) = 0 once d stations transmitted, otherwise
///   f(state) = min over nonempty queries Q of max over consistent feedbacks of 1 + f(refined).
/// Values are memoized per position, keyed by a canonical form under
/// relabeling of untransmitted stations.
///
/// Queries for which some consistent feedback leaves the position unchanged
/// are skipped: the adversary could repeat that answer forever.
///
/// Not thread-safe; the memo is shared by every call on one solver.
class Solver {
 public:
  explicit Solver(const GameConfig& config, OracleLimits limits = {}) : config_(config), limits_(limits) {
    if (config.n > limits.max_n || config.d > limits.max_d)
      throw Error(ErrorKind::BudgetExceeded, "oracle instance n=" + std::to_string(config.n) + " d=" +
                                                 std::to_string(config.d) + " exceeds cap n<=" +
                                                 std::to_string(limits.max_n) + " d<=" + std::to_string(limits.max_d));
    subsets_ = subsets_of_size(config.n, config.d);
    if (subsets_.size() > 128)
      throw Error(ErrorKind::BudgetExceeded, "oracle supports at most 128 candidate live sets");
    for (std::size_t i = 0; i < subsets_.size(); ++i) index_of_[subsets_[i].mask()] = static_cast<int>(i);
    depth_cap_ = 4 * static_cast<int>(config.n) + 16;
    build_partitions();
    if (limits_.use_canonical) build_relabelings();
  }

  const GameConfig& config() const { return config_; }
  std::size_t memo_size() const { return memo_.size(); }

  /// f(n,d): optimal worst-case number of rounds.
  int optimal_rounds() { return value(initial_key(), 0); }

  /// Exact remaining rounds from `state` under optimal play on both sides.
  int value(const OracleState& state) { return value(to_key(state), 0); }

  /// A query attaining value(state), preferring queries that avoid already
  /// transmitted stations (one always exists). Empty when the game is over.
  std::optional<StationSet> best_query(const OracleState& state) { return best_query(to_key(state)); }

  OracleState initial_state() const { return from_key(initial_key()); }

  /// Knowledge after replaying a transcript.
  OracleState state_after(const Transcript& transcript) const {
    Key k = initial_key();
    for (const Round& r : transcript.rounds) {
      if (!r.query.within(config_.n)) throw Error(ErrorKind::InvalidQuery, "query outside 1..n");
      k = child_key(k, r.query.mask(), r.feedback);
      if (k.family == 0) throw Error(ErrorKind::Inconsistent, "transcript is inconsistent with every live set");
    }
    return from_key(k);
  }

  /// Decision tree of an optimal strategy; its depth is optimal_rounds().
  QTree optimal_strategy_tree() {
    QTree tree;
    tree.config = config_;
    grow(*tree.root, initial_key());
    return tree;
  }

 private:
  using Family = detail::Family;
  using Key = detail::Key;

  struct Outcome {
    Feedback feedback;
    Family members;
  };

  static constexpr int kInfinity = std::numeric_limits<int>::max() / 2;

  void build_partitions() {
    std::uint64_t query_count = std::uint64_t{1} << config_.n;
    partitions_.resize(query_count);
    for (std::uint64_t q = 1; q < query_count; ++q) {
      StationSet query = StationSet::from_mask(q);
      std::map<Feedback, Family> parts;
      for (std::size_t i = 0; i < subsets_.size(); ++i) parts[evaluate_query(query, subsets_[i])] |= Family{1} << i;
      for (const auto& [fb, members] : parts) partitions_[q].push_back({fb, members});
    }
  }

  void build_relabelings() {
    // group_of_[T] lists the relabelings fixing T pointwise, each as an index map on subsets
    std::uint64_t masks = std::uint64_t{1} << config_.n;
    groups_.resize(masks);
    for (std::uint64_t t = 0; t < masks; ++t) {
      if (std::popcount(t) > config_.d) continue;
      for (const auto& perm : relabelings(config_.n, StationSet::from_mask(t))) {
        std::vector<int> map(subsets_.size());
        for (std::size_t i = 0; i < subsets_.size(); ++i)
          map[i] = index_of_.at(apply_relabeling(perm, subsets_[i]).mask());
        groups_[t].push_back(std::move(map));
      }
    }
  }

  Key initial_key() const {
    Family all = subsets_.size() == 128 ? ~Family{0} : (Family{1} << subsets_.size()) - 1;
    return {all, 0};
  }

  Key to_key(const OracleState& state) const {
    Key k{0, state.transmitted.mask()};
    for (const StationSet& c : state.candidates) {
      auto it = index_of_.find(c.mask());
      if (!c.is_small() || it == index_of_.end())
        throw Error(ErrorKind::DomainError, "candidate " + c.to_string() + " is not a size-d subset of 1..n");
      k.family |= Family{1} << it->second;
    }
    if (k.family == 0) throw Error(ErrorKind::Inconsistent, "empty candidate family");
    return k;
  }

  OracleState from_key(const Key& k) const {
    OracleState s{{}, StationSet::from_mask(k.transmitted)};
    for (std::size_t i = 0; i < subsets_.size(); ++i) {
      if ((k.family >> i) & 1) s.candidates.push_back(subsets_[i]);
    }
    return s;
  }

  Key child_key(const Key& k, std::uint64_t query, const Feedback& fb) const {
    if (query == 0) return fb.tag() == FeedbackTag::Silence ? k : Key{0, k.transmitted};
    for (const Outcome& o : partitions_[query]) {
      if (o.feedback == fb) return apply(k, o);
    }
    return {0, k.transmitted};
  }

  static Key apply(const Key& k, const Outcome& o) {
    Key next{k.family & o.members, k.transmitted};
    if (o.feedback.is_single()) next.transmitted |= std::uint64_t{1} << (o.feedback.station() - 1);
    return next;
  }

  Key canonical(const Key& k) const {
    if (!limits_.use_canonical) return k;
    Family best = k.family;
    for (const auto& map : groups_[k.transmitted]) {
      Family image = 0;
      for (Family rest = k.family; rest != 0; rest &= rest - 1) image |= Family{1} << map[detail::lowest_bit128(rest)];
      best = std::min(best, image);
    }
    return {best, k.transmitted};
  }

  bool done(const Key& k) const { return std::popcount(k.transmitted) >= config_.d; }

  /// Children of `k` under `query`, or empty if some answer makes no progress.
  bool children(const Key& k, std::uint64_t query, std::vector<std::pair<Feedback, Key>>& out) const {
    out.clear();
    for (const Outcome& o : partitions_[query]) {
      if ((k.family & o.members) == 0) continue;
      Key next = apply(k, o);
      if (next == k) return false;
      out.emplace_back(o.feedback, next);
    }
    return true;
  }

  int value(const Key& k, int depth) {
    if (done(k)) return 0;
    if (depth > depth_cap_)
      throw Error(ErrorKind::CapExceeded, "oracle search exceeded depth cap " + std::to_string(depth_cap_));
    Key key = canonical(k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (memo_.size() >= limits_.state_budget)
      throw Error(ErrorKind::BudgetExceeded, "oracle memo exceeded " + std::to_string(limits_.state_budget) + " states");

    const int floor = config_.d - std::popcount(k.transmitted);
    int best = kInfinity;
    std::vector<std::pair<Feedback, Key>> kids;
    for (std::uint64_t q = 1; q < partitions_.size() && best > floor; ++q) {
      if (!children(k, q, kids)) continue;
      int worst = 0;
      for (const auto& [fb, child] : kids) {
        worst = std::max(worst, 1 + value(child, depth + 1));
        if (worst >= best) break;
      }
      best = std::min(best, worst);
    }
    if (best == kInfinity) throw Error(ErrorKind::Inconsistent, "no query makes progress");
    memo_.emplace(key, best);
    return best;
  }

  int worst_after(const Key& k, std::uint64_t query, int depth) {
    std::vector<std::pair<Feedback, Key>> kids;
    if (!children(k, query, kids)) return kInfinity;
    int worst = 0;
    for (const auto& [fb, child] : kids) worst = std::max(worst, 1 + value(child, depth + 1));
    return worst;
  }

  std::optional<StationSet> best_query(const Key& k) {
    if (done(k)) return std::nullopt;
    const int target = value(k, 0);
    // smallest optimal query avoiding transmitted stations, else any optimal query
    for (std::uint64_t q = 1; q < partitions_.size(); ++q) {
      if ((q & k.transmitted) == 0 && worst_after(k, q, 0) == target) return StationSet::from_mask(q);
    }
    for (std::uint64_t q = 1; q < partitions_.size(); ++q) {
      if (worst_after(k, q, 0) == target) return StationSet::from_mask(q);
    }
    throw Error(ErrorKind::Inconsistent, "no query attains the memoized value");
  }

  void grow(QNode& node, const Key& k) {
    if (done(k)) {
      node.resolved_live = StationSet::from_mask(k.transmitted);
      return;
    }
    std::optional<StationSet> query = best_query(k);
    node.query = *query;
    std::vector<std::pair<Feedback, Key>> kids;
    children(k, query->mask(), kids);
    for (const auto& [fb, child] : kids) {
      auto& slot = node.children[fb];
      slot = std::make_unique<QNode>();
      grow(*slot, child);
    }
  }

  GameConfig config_;
  OracleLimits limits_;
  std::vector<StationSet> subsets_;
  std::unordered_map<std::uint64_t, int> index_of_;
  std::vector<std::vector<Outcome>> partitions_;
  std::vector<std::vector<std::vector<int>>> groups_;
  std::unordered_map<Key, int, detail::KeyHash> memo_;
  int depth_cap_ = 0;
};

inline int exact_optimal_rounds(const GameConfig& config, OracleLimits limits = {}) {
  return Solver(config, limits).optimal_rounds();
}

inline QTree optimal_strategy_tree(const GameConfig& config, OracleLimits limits = {}) {
  return Solver(config, limits).optimal_strategy_tree();
}

/// A strategy that plays optimally from any reachable transcript, including
/// transcripts produced by other strategies.
inline Strategy optimal_strategy(const GameConfig& config, OracleLimits limits = {}) {
  auto solver = std::make_shared<Solver>(config, limits);
  return {"optimal", [solver](const GameConfig& cfg, const Transcript& t) -> Action {
            if (cfg != solver->config()) throw Error(ErrorKind::ConfigError, "optimal strategy used with another config");
            return solver->best_query(solver->state_after(t));
          }};
}

}  // namespace macq::oracle
