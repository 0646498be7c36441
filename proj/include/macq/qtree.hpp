#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "engine.hpp"

namespace macq {

enum class EdgeColor { Red, Black };

/// Black for identity-transmitting edges (Single), Red for Silence and Collision.
inline EdgeColor color_of(const Feedback& feedback) { return feedback.is_single() ? EdgeColor::Black : EdgeColor::Red; }

inline const char* to_string(EdgeColor c) { return c == EdgeColor::Black ? "black" : "red"; }

/// Internal nodes carry a query and children keyed by feedback; leaves carry
/// the live set that ends there.
struct QNode {
  std::optional<StationSet> query;
  std::map<Feedback, std::unique_ptr<QNode>> children;
  std::optional<StationSet> resolved_live;

  bool is_leaf() const { return !query.has_value(); }
};

struct QTree {
  GameConfig config;
  std::unique_ptr<QNode> root = std::make_unique<QNode>();
};

namespace detail {

inline void insert_path(QNode& root, const Transcript& transcript, const StationSet& live) {
  QNode* node = &root;
  for (const Round& round : transcript.rounds) {
    if (node->resolved_live)
      throw Error(ErrorKind::AmbiguousLeaf, "live set " + live.to_string() + " continues past the leaf of " +
                                                node->resolved_live->to_string());
    if (!node->query) {
      node->query = round.query;
    } else if (*node->query != round.query) {
      throw Error(ErrorKind::InvalidQuery, "strategy is not a function of the transcript: queries " +
                                               node->query->to_string() + " and " + round.query.to_string() +
                                               " at the same node");
    }
    auto& child = node->children[round.feedback];
    if (!child) child = std::make_unique<QNode>();
    node = child.get();
  }
  if (node->query)
    throw Error(ErrorKind::AmbiguousLeaf, "live set " + live.to_string() + " stops at an internal node");
  if (node->resolved_live && *node->resolved_live != live)
    throw Error(ErrorKind::AmbiguousLeaf, "live sets " + node->resolved_live->to_string() + " and " +
                                              live.to_string() + " produce identical transcripts");
  node->resolved_live = live;
}

/// Raw feedback for query Q, given the feedback on Q minus the already
/// transmitted stations and the overlap Q ∩ transmitted (all of it live).
inline Feedback lift_feedback(const Feedback& reduced, const StationSet& overlap) {
  switch (overlap.size()) {
    case 0: return reduced;
    case 1: return reduced.tag() == FeedbackTag::Silence ? Feedback::single(overlap.min_id()) : Feedback::collision();
    default: return Feedback::collision();
  }
}

}  // namespace detail

/// Decision tree of `strategy` over every size-d live set, with shared
/// transcript prefixes merged.
inline QTree build_tree(const Strategy& strategy, const GameConfig& config, std::size_t round_cap,
                        std::uint64_t budget = kDefaultEnumerationBudget) {
  require_enumerable(config, budget);
  QTree tree;
  tree.config = config;
  for_each_subset_of_size(config.n, config.d, [&](const StationSet& live) {
    GameResult r = run_fixed(strategy, config, live, round_cap);
    detail::insert_path(*tree.root, r.transcript, live);
  });
  return tree;
}

inline QTree build_tree(const Strategy& strategy, const GameConfig& config) {
  return build_tree(strategy, config, default_round_cap(config));
}

/// The strategy obtained by never scheduling a station that already
/// transmitted alone: each query Q becomes Q minus the transmitted stations.
/// The wrapped strategy is driven with the feedback it would have seen on the
/// unreduced query, which is recoverable because every transmitted station is
/// live. Combined with the engine's stop after the d-th Single, this removes
/// repeated identity edges and truncates completed paths.
inline Strategy normalized_strategy(Strategy raw) {
  std::string name = raw.name + "+normalized";
  return {std::move(name), [raw = std::move(raw)](const GameConfig& config, const Transcript& reduced) -> Action {
            Transcript replay{config, {}};
            StationSet transmitted;
            for (const Round& round : reduced.rounds) {
              Action original = raw(config, replay);
              if (!original || (*original - transmitted) != round.query)
                throw Error(ErrorKind::InvalidQuery, "transcript was not produced by " + raw.name + "+normalized");
              Feedback lifted = detail::lift_feedback(round.feedback, *original & transmitted);
              replay.append(*original, lifted);
              if (round.feedback.is_single()) transmitted.insert(round.feedback.station());
            }
            if (transmitted.size() >= static_cast<std::size_t>(config.d)) return std::nullopt;
            Action next = raw(config, replay);
            if (!next) return std::nullopt;
            return *next - transmitted;
          }};
}

inline QTree normalize(const Strategy& strategy, const GameConfig& config, std::size_t round_cap,
                       std::uint64_t budget = kDefaultEnumerationBudget) {
  return build_tree(normalized_strategy(strategy), config, round_cap, budget);
}

inline QTree normalize(const Strategy& strategy, const GameConfig& config) {
  return normalize(strategy, config, default_round_cap(config));
}

struct NormalFormReport {
  std::size_t max_depth = 0;
  std::size_t leaf_count = 0;
  std::map<std::size_t, std::size_t> black_per_path;  // black edge count -> number of paths
  std::size_t repeated_transmitter_paths = 0;
  std::size_t mislabeled_leaves = 0;  // leaf live set differs from the path's Black stations
  bool property_holds = false;
};

/// Checks the normal-form properties: every root-to-leaf path has exactly d
/// Black edges, no station transmits twice on a path, and there are exactly
/// C(n,d) leaves.
inline NormalFormReport check_normal_form(const QTree& tree) {
  NormalFormReport report;
  std::vector<StationId> path_singles;
  auto visit = [&](auto&& self, const QNode& node, std::size_t depth) -> void {
    if (node.is_leaf()) {
      ++report.leaf_count;
      report.max_depth = std::max(report.max_depth, depth);
      ++report.black_per_path[path_singles.size()];
      StationSet distinct = StationSet::from_ids(path_singles);
      if (distinct.size() != path_singles.size()) ++report.repeated_transmitter_paths;
      if (!node.resolved_live || *node.resolved_live != distinct) ++report.mislabeled_leaves;
      return;
    }
    for (const auto& [feedback, child] : node.children) {
      if (feedback.is_single()) path_singles.push_back(feedback.station());
      self(self, *child, depth + 1);
      if (feedback.is_single()) path_singles.pop_back();
    }
  };
  visit(visit, *tree.root, 0);
  auto d = static_cast<std::size_t>(tree.config.d);
  bool exactly_d = report.black_per_path.size() == 1 && report.black_per_path.begin()->first == d;
  auto expected_leaves = saturating_binomial(static_cast<std::uint64_t>(tree.config.n), d);
  report.property_holds =
      exactly_d && report.repeated_transmitter_paths == 0 && report.leaf_count == expected_leaves;
  return report;
}

/// Longest root-to-leaf path, in edges.
inline std::size_t max_depth(const QTree& tree) {
  auto visit = [](auto&& self, const QNode& node) -> std::size_t {
    std::size_t best = 0;
    for (const auto& [feedback, child] : node.children) best = std::max(best, 1 + self(self, *child));
    return best;
  };
  return visit(visit, *tree.root);
}

inline std::size_t leaf_count(const QTree& tree) {
  auto visit = [](auto&& self, const QNode& node) -> std::size_t {
    if (node.is_leaf()) return 1;
    std::size_t total = 0;
    for (const auto& [feedback, child] : node.children) total += self(self, *child);
    return total;
  };
  return visit(visit, *tree.root);
}

/// Plain-text graph: `node`/`leaf` lines in preorder, then `edge` lines in
/// preorder. Node ids are preorder positions, so equal trees print equally.
inline std::string export_graph(const QTree& tree) {
  std::string nodes;
  std::string edges;
  int next_id = 0;
  auto visit = [&](auto&& self, const QNode& node) -> void {
    int id = next_id++;
    if (node.is_leaf()) {
      nodes += "leaf " + std::to_string(id) + " live=" +
               (node.resolved_live ? node.resolved_live->to_string() : std::string("{}")) + "\n";
    } else {
      nodes += "node " + std::to_string(id) + " query=" + node.query->to_string() + "\n";
    }
    for (const auto& [feedback, child] : node.children) {
      edges += "edge " + std::to_string(id) + " " + std::to_string(next_id) + " label=" + feedback.to_string() +
               " color=" + to_string(color_of(feedback)) + "\n";
      self(self, *child);
    }
  };
  visit(visit, *tree.root);
  return nodes + edges;
}

/// Replays a tree as a strategy: follow the recorded feedbacks from the root
/// and ask the query found there; Done at a leaf.
inline Strategy tree_strategy(std::shared_ptr<const QTree> tree, std::string name = "tree-replay") {
  return {std::move(name), [tree = std::move(tree)](const GameConfig&, const Transcript& t) -> Action {
            const QNode* node = tree->root.get();
            for (const Round& round : t.rounds) {
              auto it = node->children.find(round.feedback);
              if (node->is_leaf() || it == node->children.end())
                throw Error(ErrorKind::Inconsistent, "transcript leaves the tree at feedback " + round.feedback.to_string());
              node = it->second.get();
            }
            if (node->is_leaf()) return std::nullopt;
            return *node->query;
          }};
}

}  // namespace macq
