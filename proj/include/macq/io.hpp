#pragma once

#include <json.hpp>
#include <string>

#include "engine.hpp"

namespace macq::io {

using Json = nlohmann::ordered_json;

inline Json ids_to_json(const StationSet& s) {
  Json arr = Json::array();
  for (StationId id : s.members()) arr.push_back(id);
  return arr;
}

inline StationSet ids_from_json(const Json& arr) {
  if (!arr.is_array()) throw Error(ErrorKind::ParseError, "expected an array of station ids");
  StationSet s;
  for (const Json& v : arr) {
    if (!v.is_number_integer()) throw Error(ErrorKind::ParseError, "station id must be an integer");
    s.insert(v.get<StationId>());
  }
  return s;
}

inline Json feedback_to_json(const Feedback& fb) {
  switch (fb.tag()) {
    case FeedbackTag::Silence: return "silence";
    case FeedbackTag::Collision: return "collision";
    case FeedbackTag::Single: return Json{{"single", fb.station()}};
  }
  return nullptr;
}

inline Feedback feedback_from_json(const Json& j) {
  if (j.is_string()) {
    if (j == "silence") return Feedback::silence();
    if (j == "collision") return Feedback::collision();
  } else if (j.is_object() && j.size() == 1 && j.contains("single") && j["single"].is_number_integer()) {
    return Feedback::single(j["single"].get<StationId>());
  }
  throw Error(ErrorKind::ParseError, "bad feedback value " + j.dump());
}

/// {"n", "d", "live", "rounds": [{"query", "feedback"}]} in that field order.
inline Json transcript_to_json(const Transcript& t, const StationSet& live) {
  Json doc;
  doc["n"] = t.config.n;
  doc["d"] = t.config.d;
  doc["live"] = ids_to_json(live);
  Json rounds = Json::array();
  for (const Round& r : t.rounds) {
    Json round;
    round["query"] = ids_to_json(r.query);
    round["feedback"] = feedback_to_json(r.feedback);
    rounds.push_back(std::move(round));
  }
  doc["rounds"] = std::move(rounds);
  return doc;
}

struct TranscriptDocument {
  Transcript transcript;
  StationSet live;
};

inline TranscriptDocument transcript_from_json(const Json& doc, StationId station_cap = kDefaultStationCap) {
  try {
    TranscriptDocument out;
    out.transcript.config = GameConfig(doc.at("n").get<StationId>(), doc.at("d").get<StationId>(), station_cap);
    out.live = ids_from_json(doc.at("live"));
    for (const Json& r : doc.at("rounds")) out.transcript.append(ids_from_json(r.at("query")), feedback_from_json(r.at("feedback")));
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

/// Transcript document extended with rounds_used, completed and witness_live.
/// "live" carries the witness as well.
inline Json game_result_to_json(const GameResult& r) {
  Json doc = transcript_to_json(r.transcript, r.witness_live);
  doc["rounds_used"] = r.rounds_used;
  doc["completed"] = r.completed;
  doc["witness_live"] = ids_to_json(r.witness_live);
  return doc;
}

}  // namespace macq::io
