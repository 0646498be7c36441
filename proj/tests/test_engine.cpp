#include <catch2/catch_amalgamated.hpp>

#include <macq/engine.hpp>

using namespace macq;

TEST_CASE("run_fixed examples") {
  GameResult a = run_fixed(linear_scan_strategy(), GameConfig(2, 1), {2});
  CHECK(a.rounds_used == 2);
  CHECK(a.completed);
  CHECK(a.transcript.rounds[0] == Round{{1}, Feedback::silence()});
  CHECK(a.transcript.rounds[1] == Round{{2}, Feedback::single(2)});

  GameResult b = run_fixed(tree_split_strategy(), GameConfig(4, 1), {3});
  CHECK(b.rounds_used == 1);
  CHECK(b.completed);
  CHECK(b.transcript.rounds[0].feedback == Feedback::single(3));

  GameResult c = run_fixed(linear_scan_strategy(), GameConfig(1, 1), {1});
  CHECK(c.rounds_used == 1);
  CHECK(c.completed);
}

TEST_CASE("run_fixed stops at the d-th Single even if the strategy continues") {
  // would keep querying {1,2} forever
  Strategy eager{"eager", [](const GameConfig&, const Transcript& t) -> Action {
                   return t.size() < 2 ? StationSet{static_cast<StationId>(t.size()) + 1} : StationSet{1, 2};
                 }};
  GameResult r = run_fixed(eager, GameConfig(3, 2), {1, 2});
  CHECK(r.rounds_used == 2);
  CHECK(r.completed);
}

TEST_CASE("run_fixed errors") {
  Strategy stuck{"stuck", [](const GameConfig&, const Transcript&) -> Action { return StationSet{}; }};
  CHECK_THROWS_MATCHES(run_fixed(stuck, GameConfig(3, 1), {2}, 10), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::CapExceeded; }));

  Strategy wild{"wild", [](const GameConfig&, const Transcript&) -> Action { return StationSet{9}; }};
  CHECK_THROWS_MATCHES(run_fixed(wild, GameConfig(3, 1), {2}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::InvalidQuery; }));

  CHECK_THROWS_AS(run_fixed(linear_scan_strategy(), GameConfig(3, 2), {2}), Error);
}

TEST_CASE("the cap is not hit when completion lands exactly on it") {
  GameResult r = run_fixed(linear_scan_strategy(), GameConfig(3, 1), {3}, 3);
  CHECK(r.rounds_used == 3);
  CHECK(r.completed);
}

TEST_CASE("a strategy that quits early is incomplete") {
  Strategy quitter{"quitter", [](const GameConfig&, const Transcript&) -> Action { return std::nullopt; }};
  GameResult r = run_fixed(quitter, GameConfig(3, 1), {2});
  CHECK(r.rounds_used == 0);
  CHECK_FALSE(r.completed);
  CHECK_THROWS_MATCHES(worst_case_rounds(quitter, GameConfig(3, 1)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::Incomplete; }));
}

TEST_CASE("worst_case_rounds examples") {
  WorstCase linear = worst_case_rounds(linear_scan_strategy(), GameConfig(4, 1));
  CHECK(linear.max_rounds == 4);
  CHECK(linear.argmax_live == StationSet{4});

  WorstCase tree = worst_case_rounds(tree_split_strategy(), GameConfig(4, 1));
  CHECK(tree.max_rounds == 1);

  WorstCase both = worst_case_rounds(linear_scan_strategy(), GameConfig(2, 2));
  CHECK(both.max_rounds == 2);
  CHECK(both.argmax_live == StationSet{1, 2});
}

TEST_CASE("worst_case_rounds respects the enumeration budget") {
  CHECK_THROWS_MATCHES(worst_case_rounds(linear_scan_strategy(), GameConfig(40, 20)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::BudgetExceeded; }));
  CHECK_THROWS_AS(worst_case_rounds(linear_scan_strategy(), GameConfig(6, 3), 100, 19), Error);
  CHECK_NOTHROW(worst_case_rounds(linear_scan_strategy(), GameConfig(6, 3), 100, 20));
}

TEST_CASE("completed runs reveal exactly the live set and need at least d rounds") {
  for (const Strategy& s : {linear_scan_strategy(), tree_split_strategy()}) {
    for (StationId n = 1; n <= 8; ++n) {
      for (StationId d = 1; d <= n; ++d) {
        const GameConfig c(n, d);
        for_each_subset_of_size(n, d, [&](const StationSet& live) {
          GameResult r = run_fixed(s, c, live);
          if (r.completed) REQUIRE(transmitted_set(r.transcript) == live);
          REQUIRE(r.completed);
        });
        REQUIRE(worst_case_rounds(s, c).max_rounds >= static_cast<std::size_t>(d));
      }
    }
  }
}
