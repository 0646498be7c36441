#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "strategy.hpp"

namespace macq {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000;

inline void require_enumerable(const GameConfig& config, std::uint64_t budget) {
  std::uint64_t count = saturating_binomial(static_cast<std::uint64_t>(config.n), static_cast<std::uint64_t>(config.d));
  if (count > budget)
    throw Error(ErrorKind::BudgetExceeded, "C(" + std::to_string(config.n) + "," + std::to_string(config.d) +
                                               ")=" + std::to_string(count) + " live sets exceed budget " +
                                               std::to_string(budget));
}

/// Everything a transcript tells an observer: the live sets still possible
/// and the stations already heard alone.
struct KnowledgeState {
  std::vector<StationSet> candidates;  // ascending, each of size d
  StationSet transmitted;

  friend bool operator==(const KnowledgeState&, const KnowledgeState&) = default;
};

inline KnowledgeState initial_state(const GameConfig& config, std::uint64_t budget = kDefaultEnumerationBudget) {
  require_enumerable(config, budget);
  return {subsets_of_size(config.n, config.d), {}};
}

/// Candidates that survive `feedback` on `query`, without the emptiness check.
inline std::vector<StationSet> surviving(const std::vector<StationSet>& candidates, const StationSet& query,
                                         const Feedback& feedback) {
  std::vector<StationSet> out;
  std::copy_if(candidates.begin(), candidates.end(), std::back_inserter(out),
               [&](const StationSet& c) { return feedback_consistent(query, feedback, c); });
  return out;
}

inline KnowledgeState refine(const KnowledgeState& state, const StationSet& query, const Feedback& feedback) {
  KnowledgeState next{surviving(state.candidates, query, feedback), state.transmitted};
  if (next.candidates.empty())
    throw Error(ErrorKind::Inconsistent,
                "no candidate live set is consistent with " + feedback.to_string() + " on " + query.to_string());
  if (feedback.is_single()) next.transmitted.insert(feedback.station());
  return next;
}

/// Feedbacks with a nonempty surviving family, in tie-break order: Collision,
/// Silence, then Single by ascending station id.
inline std::vector<std::pair<Feedback, std::size_t>> consistent_feedbacks(const KnowledgeState& state,
                                                                          const StationSet& query) {
  std::vector<std::pair<Feedback, std::size_t>> out;
  std::size_t silence = 0;
  std::size_t collision = 0;
  std::vector<std::size_t> singles(static_cast<std::size_t>(query.max_id()) + 1, 0);
  for (const StationSet& c : state.candidates) {
    Feedback fb = evaluate_query(query, c);
    switch (fb.tag()) {
      case FeedbackTag::Silence: ++silence; break;
      case FeedbackTag::Collision: ++collision; break;
      case FeedbackTag::Single: ++singles[static_cast<std::size_t>(fb.station())]; break;
    }
  }
  if (collision > 0) out.emplace_back(Feedback::collision(), collision);
  if (silence > 0) out.emplace_back(Feedback::silence(), silence);
  for (StationId s : query.members()) {
    if (singles[static_cast<std::size_t>(s)] > 0) out.emplace_back(Feedback::single(s), singles[static_cast<std::size_t>(s)]);
  }
  return out;
}

/// What an adversary may look at when answering a query.
struct AdversaryContext {
  const GameConfig& config;
  const Strategy& strategy;
  const Transcript& transcript;
};

/// An online adversary: answers each query with some feedback that keeps at
/// least one candidate alive.
struct Adversary {
  std::string name;
  std::function<Feedback(const KnowledgeState&, const StationSet&, const AdversaryContext&)> answer;
};

}  // namespace macq
