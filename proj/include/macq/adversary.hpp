#pragma once

#include <optional>
#include <string>
#include <vector>

#include "engine.hpp"

namespace macq {

/// Count-greedy adversary: keep the largest surviving candidate family.
/// Ties go to Collision, then Silence, then the smallest Single.
///
/// This maximizes remaining ambiguity one step ahead and is not optimal: with
/// n=3, d=2 and query {1} it answers Single(1) (two survivors) although
/// Silence forces a longer game.
inline Feedback greedy_answer(const KnowledgeState& state, const StationSet& query) {
  auto options = consistent_feedbacks(state, query);
  if (options.empty()) throw Error(ErrorKind::Inconsistent, "greedy_answer called with an empty candidate family");
  const auto* best = &options.front();
  for (const auto& option : options) {
    if (option.second > best->second) best = &option;
  }
  return best->first;
}

/// Worst-case adversary against a known deterministic strategy: answers so as
/// to maximize the total length of the game. Because the strategy is
/// deterministic, the remaining game after a feedback is decided by which
/// surviving candidate is the real live set, so each feedback is scored by
/// replaying the strategy against every survivor. Ties break as in greedy.
inline Feedback exact_answer(const KnowledgeState& state, const StationSet& query, const AdversaryContext& ctx,
                             std::size_t round_cap, std::uint64_t budget = kDefaultEnumerationBudget) {
  if (state.candidates.size() > budget)
    throw Error(ErrorKind::BudgetExceeded, "exact_answer: " + std::to_string(state.candidates.size()) +
                                               " candidates exceed budget " + std::to_string(budget));
  auto options = consistent_feedbacks(state, query);
  if (options.empty()) throw Error(ErrorKind::Inconsistent, "exact_answer called with an empty candidate family");
  std::optional<Feedback> best;
  std::size_t best_length = 0;
  for (const auto& [feedback, count] : options) {
    std::size_t length = 0;
    for (const StationSet& live : surviving(state.candidates, query, feedback)) {
      length = std::max(length, run_fixed(ctx.strategy, ctx.config, live, round_cap).rounds_used);
    }
    if (!best || length > best_length) {
      best = feedback;
      best_length = length;
    }
  }
  return *best;
}

inline Adversary greedy_adversary() {
  return {"greedy", [](const KnowledgeState& s, const StationSet& q, const AdversaryContext&) {
            return greedy_answer(s, q);
          }};
}

inline Adversary exact_adversary(std::size_t round_cap, std::uint64_t budget = kDefaultEnumerationBudget) {
  return {"exact", [round_cap, budget](const KnowledgeState& s, const StationSet& q, const AdversaryContext& ctx) {
            return exact_answer(s, q, ctx, round_cap, budget);
          }};
}

inline std::vector<std::string> adversary_names() { return {"greedy", "exact"}; }

inline std::optional<Adversary> adversary_by_name(const std::string& name, std::size_t round_cap) {
  if (name == "greedy") return greedy_adversary();
  if (name == "exact") return exact_adversary(round_cap);
  return std::nullopt;
}

}  // namespace macq
