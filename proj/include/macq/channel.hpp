#pragma once

#include <compare>
#include <string>
#include <vector>

#include "station_set.hpp"

namespace macq {

enum class FeedbackTag { Silence, Collision, Single };

/// Channel answer for one round: nobody transmitted, two or more collided, or
/// exactly one station got through and revealed its id.
class Feedback {
 public:
  static Feedback silence() { return Feedback(FeedbackTag::Silence, 0); }
  static Feedback collision() { return Feedback(FeedbackTag::Collision, 0); }
  static Feedback single(StationId station) {
    if (station < 1) throw Error(ErrorKind::DomainError, "Single feedback needs a station id >= 1");
    return Feedback(FeedbackTag::Single, station);
  }

  FeedbackTag tag() const { return tag_; }
  bool is_single() const { return tag_ == FeedbackTag::Single; }
  /// Transmitting station; 0 unless is_single().
  StationId station() const { return station_; }

  // Silence < Collision < Single(1) < Single(2) < ...
  friend auto operator<=>(const Feedback&, const Feedback&) = default;

  /// "silence", "collision" or "single:<id>"
  std::string to_string() const {
    switch (tag_) {
      case FeedbackTag::Silence: return "silence";
      case FeedbackTag::Collision: return "collision";
      case FeedbackTag::Single: return "single:" + std::to_string(station_);
    }
    return "?";
  }

 private:
  Feedback(FeedbackTag tag, StationId station) : tag_(tag), station_(station) {}

  FeedbackTag tag_;
  StationId station_;
};

/// The channel: l = |query ∩ live| stations transmit, and the answer depends on
/// l only through 0 / 1 / 2+.
inline Feedback evaluate_query(const StationSet& query, const StationSet& live) {
  StationSet transmitting = query & live;
  switch (transmitting.size()) {
    case 0: return Feedback::silence();
    case 1: return Feedback::single(transmitting.min_id());
    default: return Feedback::collision();
  }
}

inline bool feedback_consistent(const StationSet& query, const Feedback& feedback, const StationSet& candidate) {
  return evaluate_query(query, candidate) == feedback;
}

struct Round {
  StationSet query;
  Feedback feedback;

  friend bool operator==(const Round&, const Round&) = default;
};

struct Transcript {
  GameConfig config;
  std::vector<Round> rounds;

  std::size_t size() const { return rounds.size(); }
  void append(StationSet query, Feedback feedback) { rounds.push_back({std::move(query), feedback}); }

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

/// Stations that have transmitted alone at least once.
inline StationSet transmitted_set(const std::vector<Round>& rounds) {
  StationSet out;
  for (const Round& r : rounds) {
    if (r.feedback.is_single()) out.insert(r.feedback.station());
  }
  return out;
}

inline StationSet transmitted_set(const Transcript& transcript) { return transmitted_set(transcript.rounds); }

}  // namespace macq
