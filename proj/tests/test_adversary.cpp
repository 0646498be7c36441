#include <catch2/catch_amalgamated.hpp>

#include <macq/adversary.hpp>
#include <macq/oracle.hpp>

using namespace macq;

namespace {

bool is_kind(const Error& e, ErrorKind k) { return e.kind() == k; }

}  // namespace

TEST_CASE("initial_state examples") {
  KnowledgeState s = initial_state(GameConfig(3, 2));
  CHECK(s.candidates == std::vector<StationSet>{{1, 2}, {1, 3}, {2, 3}});
  CHECK(s.transmitted.empty());
  CHECK(initial_state(GameConfig(2, 2)).candidates == std::vector<StationSet>{{1, 2}});
  CHECK(initial_state(GameConfig(3, 1)).candidates == std::vector<StationSet>{{1}, {2}, {3}});
  CHECK_THROWS_AS(initial_state(GameConfig(30, 15)), Error);
}

TEST_CASE("refine examples") {
  const KnowledgeState all = initial_state(GameConfig(3, 2));
  KnowledgeState silent = refine(all, {1}, Feedback::silence());
  CHECK(silent.candidates == std::vector<StationSet>{{2, 3}});
  CHECK(silent.transmitted.empty());

  KnowledgeState one = refine(all, {1}, Feedback::single(1));
  CHECK(one.candidates == std::vector<StationSet>{{1, 2}, {1, 3}});
  CHECK(one.transmitted == StationSet{1});

  CHECK(refine(all, {}, Feedback::silence()) == all);
  CHECK(refine(one, {}, Feedback::silence()) == one);

  CHECK_THROWS_MATCHES(refine(all, {1}, Feedback::collision()), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return is_kind(e, ErrorKind::Inconsistent); }));
}

TEST_CASE("refining with true feedback always keeps the live set") {
  for (const Strategy& s : {linear_scan_strategy(), tree_split_strategy()}) {
    for (StationId n = 1; n <= 6; ++n) {
      for (StationId d = 1; d <= n; ++d) {
        const GameConfig c(n, d);
        for_each_subset_of_size(n, d, [&](const StationSet& live) {
          KnowledgeState state = initial_state(c);
          for (const Round& r : run_fixed(s, c, live).transcript.rounds) {
            state = refine(state, r.query, r.feedback);
            REQUIRE(std::find(state.candidates.begin(), state.candidates.end(), live) != state.candidates.end());
            for (const StationSet& cand : state.candidates) REQUIRE(state.transmitted.is_subset_of(cand));
          }
        });
      }
    }
  }
}

TEST_CASE("greedy_answer examples") {
  const KnowledgeState all = initial_state(GameConfig(3, 2));
  CHECK(greedy_answer(all, {1}) == Feedback::single(1));
  CHECK(greedy_answer(all, {1, 2, 3}) == Feedback::collision());
  CHECK(greedy_answer(initial_state(GameConfig(2, 2)), {1}) == Feedback::single(1));
}

TEST_CASE("greedy ties break Collision, Silence, then smallest Single") {
  // n=4, d=2, query {1,2}: Silence 1, Collision 1, Single(1) 2, Single(2) 2
  const KnowledgeState all = initial_state(GameConfig(4, 2));
  CHECK(greedy_answer(all, {1, 2}) == Feedback::single(1));
  // n=4, d=1, query {1,2}: Silence 2, Single(1) 1, Single(2) 1
  CHECK(greedy_answer(initial_state(GameConfig(4, 1)), {1, 2}) == Feedback::silence());
  // n=2, d=1, query {1}: Silence 1, Single(1) 1
  CHECK(greedy_answer(initial_state(GameConfig(2, 1)), {1}) == Feedback::silence());
}

TEST_CASE("greedy never empties the candidate family") {
  for (StationId n = 1; n <= 5; ++n) {
    for (StationId d = 1; d <= n; ++d) {
      const KnowledgeState all = initial_state(GameConfig(n, d));
      for (std::uint64_t q = 0; q < (std::uint64_t{1} << n); ++q) {
        StationSet query = StationSet::from_mask(q);
        Feedback fb = greedy_answer(all, query);
        REQUIRE_FALSE(surviving(all.candidates, query, fb).empty());
      }
    }
  }
}

TEST_CASE("exact_answer examples") {
  const GameConfig c32(3, 2);
  const Strategy optimal = oracle::optimal_strategy(c32);
  const Transcript empty{c32, {}};
  const KnowledgeState all = initial_state(c32);
  // Silence leaves {2,3}: two more Singles. Single(1) needs one more round.
  CHECK(exact_answer(all, {1}, AdversaryContext{c32, optimal, empty}, 100) == Feedback::silence());

  const GameConfig c22(2, 2);
  const Strategy tree = tree_split_strategy();
  CHECK(exact_answer(initial_state(c22), {1}, AdversaryContext{c22, tree, Transcript{c22, {}}}, 100) ==
        Feedback::single(1));

  const GameConfig c21(2, 1);
  Feedback either = exact_answer(initial_state(c21), {1, 2}, AdversaryContext{c21, tree, Transcript{c21, {}}}, 100);
  CHECK((either == Feedback::single(1) || either == Feedback::single(2)));
}

TEST_CASE("run_adversarial examples") {
  GameResult greedy_linear = run_adversarial(linear_scan_strategy(), greedy_adversary(), GameConfig(3, 1));
  CHECK(greedy_linear.rounds_used == 3);
  CHECK(greedy_linear.completed);
  CHECK(greedy_linear.witness_live == StationSet{3});

  GameResult greedy_tree = run_adversarial(tree_split_strategy(), greedy_adversary(), GameConfig(2, 2));
  CHECK(greedy_tree.rounds_used >= 2);
  CHECK(greedy_tree.completed);

  // tree_split is not optimal at n=3, d=2 (f = 3): Silence on {1} costs it 5 rounds
  const GameConfig c(3, 2);
  GameResult exact_tree = run_adversarial(tree_split_strategy(), exact_adversary(default_round_cap(c)), c);
  CHECK(exact_tree.rounds_used >= 3);
  CHECK(exact_tree.rounds_used == 5);
  CHECK(exact_tree.rounds_used == worst_case_rounds(tree_split_strategy(), c).max_rounds);
}

TEST_CASE("an adversary that contradicts itself is reported") {
  Adversary liar{"liar", [](const KnowledgeState&, const StationSet&, const AdversaryContext&) {
                   return Feedback::collision();
                 }};
  CHECK_THROWS_MATCHES(run_adversarial(linear_scan_strategy(), liar, GameConfig(3, 2)), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return is_kind(e, ErrorKind::AdversaryInconsistent); }));
}

TEST_CASE("an early stop is exposed by the adversarial witness") {
  Strategy quitter{"quitter", [](const GameConfig&, const Transcript& t) -> Action {
                     return t.size() == 0 ? Action{StationSet{1}} : std::nullopt;
                   }};
  GameResult r = run_adversarial(quitter, greedy_adversary(), GameConfig(3, 1));
  CHECK_FALSE(r.completed);
  CHECK(r.witness_live != transmitted_set(r.transcript));
}

TEST_CASE("adversarial runs are replayable and greedy forces no more than exact") {
  for (const Strategy& s : {linear_scan_strategy(), tree_split_strategy()}) {
    for (StationId n = 1; n <= 6; ++n) {
      for (StationId d = 1; d <= std::min(n, 3); ++d) {
        const GameConfig c(n, d);
        const std::size_t cap = default_round_cap(c);
        GameResult greedy = run_adversarial(s, greedy_adversary(), c);
        GameResult exact = run_adversarial(s, exact_adversary(cap), c);
        for (const GameResult* r : {&greedy, &exact}) {
          REQUIRE(r->completed);
          for (const Round& round : r->transcript.rounds)
            REQUIRE(feedback_consistent(round.query, round.feedback, r->witness_live));
          REQUIRE(r->rounds_used >= run_fixed(s, c, r->witness_live).rounds_used);
        }
        REQUIRE(greedy.rounds_used <= exact.rounds_used);
        REQUIRE(exact.rounds_used == worst_case_rounds(s, c).max_rounds);
      }
    }
  }
}
