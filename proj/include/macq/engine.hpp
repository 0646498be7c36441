#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "knowledge.hpp"

namespace macq {

struct GameResult {
  Transcript transcript;
  std::size_t rounds_used = 0;
  bool completed = false;
  StationSet witness_live;
};

inline std::size_t default_round_cap(const GameConfig& config) { return 4 * static_cast<std::size_t>(config.n) + 16; }

namespace detail {

inline void validate_query(const GameConfig& config, const Strategy& strategy, const StationSet& query) {
  if (!query.within(config.n))
    throw Error(ErrorKind::InvalidQuery, "strategy '" + strategy.name + "' queried " + query.to_string() +
                                             " outside 1.." + std::to_string(config.n));
}

inline bool finished(const GameConfig& config, const Transcript& transcript) {
  return transmitted_set(transcript).size() >= static_cast<std::size_t>(config.d);
}

inline Error cap_error(const Strategy& strategy, const GameConfig& config, std::size_t cap) {
  return Error(ErrorKind::CapExceeded, "strategy '" + strategy.name + "' hit round cap " + std::to_string(cap) +
                                           " at n=" + std::to_string(config.n) + " d=" + std::to_string(config.d));
}

}  // namespace detail

/// Plays `strategy` against a fixed live set. The game stops as soon as d
/// distinct stations have transmitted alone, whatever the strategy wants.
inline GameResult run_fixed(const Strategy& strategy, const GameConfig& config, const StationSet& live,
                            std::size_t round_cap) {
  if (live.size() != static_cast<std::size_t>(config.d) || !live.within(config.n))
    throw Error(ErrorKind::ConfigError, "live set " + live.to_string() + " is not a size-" + std::to_string(config.d) +
                                            " subset of 1.." + std::to_string(config.n));
  GameResult result;
  result.transcript.config = config;
  result.witness_live = live;
  while (!detail::finished(config, result.transcript)) {
    Action action = strategy(config, result.transcript);
    if (!action) break;
    if (result.transcript.size() >= round_cap) throw detail::cap_error(strategy, config, round_cap);
    detail::validate_query(config, strategy, *action);
    Feedback fb = evaluate_query(*action, live);
    result.transcript.append(std::move(*action), fb);
  }
  result.rounds_used = result.transcript.size();
  result.completed = transmitted_set(result.transcript) == live;
  return result;
}

inline GameResult run_fixed(const Strategy& strategy, const GameConfig& config, const StationSet& live) {
  return run_fixed(strategy, config, live, default_round_cap(config));
}

struct WorstCase {
  std::size_t max_rounds = 0;
  StationSet argmax_live;
};

/// Exhaustive worst case over all C(n,d) live sets. The witness is the first
/// live set, in lexicographic order, attaining the maximum. Any run that ends
/// without every live station transmitting raises Incomplete.
inline WorstCase worst_case_rounds(const Strategy& strategy, const GameConfig& config, std::size_t round_cap,
                                   std::uint64_t budget = kDefaultEnumerationBudget) {
  require_enumerable(config, budget);
  WorstCase worst;
  bool any = false;
  for_each_subset_of_size(config.n, config.d, [&](const StationSet& live) {
    GameResult r = run_fixed(strategy, config, live, round_cap);
    if (!r.completed)
      throw Error(ErrorKind::Incomplete, "strategy '" + strategy.name + "' stopped before live set " +
                                             live.to_string() + " finished transmitting");
    if (!any || r.rounds_used > worst.max_rounds) {
      worst = {r.rounds_used, live};
      any = true;
    }
  });
  return worst;
}

inline WorstCase worst_case_rounds(const Strategy& strategy, const GameConfig& config) {
  return worst_case_rounds(strategy, config, default_round_cap(config));
}

/// Plays `strategy` against an online adversary. The witness is a candidate
/// consistent with the whole transcript; when the strategy stops early the
/// adversary reveals a candidate that was not fully served, if one exists.
inline GameResult run_adversarial(const Strategy& strategy, const Adversary& adversary, const GameConfig& config,
                                  std::size_t round_cap, std::uint64_t budget = kDefaultEnumerationBudget) {
  KnowledgeState state = initial_state(config, budget);
  GameResult result;
  result.transcript.config = config;
  while (state.transmitted.size() < static_cast<std::size_t>(config.d)) {
    Action action = strategy(config, result.transcript);
    if (!action) break;
    if (result.transcript.size() >= round_cap) throw detail::cap_error(strategy, config, round_cap);
    detail::validate_query(config, strategy, *action);
    Feedback fb = adversary.answer(state, *action, AdversaryContext{config, strategy, result.transcript});
    try {
      state = refine(state, *action, fb);
    } catch (const Error&) {
      throw Error(ErrorKind::AdversaryInconsistent, "adversary '" + adversary.name + "' answered " + fb.to_string() +
                                                        " to " + action->to_string() + " leaving no candidate");
    }
    result.transcript.append(std::move(*action), fb);
  }
  result.rounds_used = result.transcript.size();
  result.witness_live = state.candidates.front();
  for (const StationSet& c : state.candidates) {
    if (c != state.transmitted) {
      result.witness_live = c;
      break;
    }
  }
  result.completed = result.witness_live == state.transmitted;
  return result;
}

inline GameResult run_adversarial(const Strategy& strategy, const Adversary& adversary, const GameConfig& config) {
  return run_adversarial(strategy, adversary, config, default_round_cap(config));
}

}  // namespace macq
