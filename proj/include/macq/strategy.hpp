#pragma once

#include <bit>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "channel.hpp"

namespace macq {

/// Next query, or std::nullopt when the strategy declares itself done.
using Action = std::optional<StationSet>;

/// A deterministic adaptive strategy: the next query is a function of the
/// configuration and the feedback history only. Strategies hold no mutable
/// state, so any transcript prefix can be replayed.
struct Strategy {
  std::string name;
  std::function<Action(const GameConfig&, const Transcript&)> next_action;

  Action operator()(const GameConfig& config, const Transcript& transcript) const {
    return next_action(config, transcript);
  }
};

namespace strategies {

inline std::size_t single_count(const Transcript& transcript) { return transmitted_set(transcript).size(); }

/// Query {1}, {2}, ... in order. Done after d stations transmitted or after {n}.
inline Action linear_scan(const GameConfig& config, const Transcript& transcript) {
  if (single_count(transcript) >= static_cast<std::size_t>(config.d)) return std::nullopt;
  auto next = static_cast<StationId>(transcript.size()) + 1;
  if (next > config.n) return std::nullopt;
  return StationSet{next};
}

struct Interval {
  StationId lo;
  StationId hi;
};

/// Pending intervals of the binary splitting algorithm after replaying the
/// transcript; the back of the vector is the top of the stack.
inline std::vector<Interval> tree_split_stack(const GameConfig& config, const Transcript& transcript) {
  std::vector<Interval> stack{{1, config.n}};
  for (const Round& round : transcript.rounds) {
    if (stack.empty()) throw Error(ErrorKind::InvalidQuery, "tree_split: transcript continues past an empty stack");
    Interval top = stack.back();
    stack.pop_back();
    if (round.query != StationSet::range(top.lo, top.hi))
      throw Error(ErrorKind::InvalidQuery, "tree_split: transcript query " + round.query.to_string() +
                                               " was not produced by tree_split");
    if (round.feedback.tag() == FeedbackTag::Collision) {
      if (top.lo == top.hi)
        throw Error(ErrorKind::Inconsistent, "tree_split: collision reported on a single station");
      // split at ceil((lo+hi)/2): left half [lo, mid-1], right half [mid, hi]
      StationId mid = (top.lo + top.hi + 1) / 2;
      stack.push_back({mid, top.hi});
      stack.push_back({top.lo, mid - 1});
    }
  }
  return stack;
}

/// Classic adaptive tree algorithm: probe an interval, split it in two on a
/// collision, discharge it on silence or a single transmission.
inline Action tree_split(const GameConfig& config, const Transcript& transcript) {
  if (single_count(transcript) >= static_cast<std::size_t>(config.d)) return std::nullopt;
  auto stack = tree_split_stack(config, transcript);
  if (stack.empty()) return std::nullopt;
  return StationSet::range(stack.back().lo, stack.back().hi);
}

/// d * (ceil(lg2(max(n/d, 2))) + 2). A loose envelope of the tree algorithm's
/// worst case, used for sanity checks only.
inline long long worst_case_formula_estimate(StationId n, StationId d) {
  if (d < 1 || d > n) throw Error(ErrorKind::DomainError, "worst_case_formula_estimate needs 1 <= d <= n");
  // ceil(lg2(max(n/d, 2))) over the rationals: smallest k >= 1 with 2^k * d >= n
  long long k = 1;
  while ((static_cast<long long>(d) << k) < n) ++k;
  return static_cast<long long>(d) * (k + 2);
}

}  // namespace strategies

inline Strategy linear_scan_strategy() { return {"linear", strategies::linear_scan}; }
inline Strategy tree_split_strategy() { return {"tree", strategies::tree_split}; }

inline std::vector<std::string> strategy_names() { return {"linear", "tree"}; }

inline std::optional<Strategy> strategy_by_name(const std::string& name) {
  if (name == "linear") return linear_scan_strategy();
  if (name == "tree") return tree_split_strategy();
  return std::nullopt;
}

/// Fixed, non-adaptive query sequence; Done once the list is exhausted.
inline Strategy fixed_sequence_strategy(std::string name, std::vector<StationSet> queries) {
  return {std::move(name), [queries = std::move(queries)](const GameConfig&, const Transcript& t) -> Action {
            if (t.size() >= queries.size()) return std::nullopt;
            return queries[t.size()];
          }};
}

}  // namespace macq
