#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

#include <macq/channel.hpp>
#include <macq/io.hpp>

using namespace macq;

TEST_CASE("evaluate_query examples") {
  CHECK(evaluate_query({3}, {3, 5}) == Feedback::single(3));
  CHECK(evaluate_query({}, {1, 2}) == Feedback::silence());
  CHECK(evaluate_query({1, 2}, {1, 2, 4}) == Feedback::collision());
}

TEST_CASE("feedback_consistent examples") {
  CHECK(feedback_consistent({1}, Feedback::silence(), {2, 3}));
  CHECK_FALSE(feedback_consistent({1}, Feedback::single(1), {2, 3}));
  CHECK(feedback_consistent({1, 2}, Feedback::collision(), {1, 2}));
}

TEST_CASE("transmitted_set examples") {
  Transcript t{GameConfig(3, 2), {}};
  CHECK(transmitted_set(t).empty());
  t.append({1}, Feedback::single(1));
  t.append({2, 3}, Feedback::collision());
  CHECK(transmitted_set(t) == StationSet{1});

  Transcript u{GameConfig(2, 2), {}};
  u.append({1}, Feedback::single(1));
  u.append({2}, Feedback::single(2));
  CHECK(transmitted_set(u) == StationSet{1, 2});
}

TEST_CASE("transmitted_set ignores non-Single rounds") {
  Transcript t{GameConfig(4, 2), {}};
  t.append({2}, Feedback::single(2));
  StationSet before = transmitted_set(t);
  t.append({1, 3}, Feedback::collision());
  t.append({4}, Feedback::silence());
  CHECK(transmitted_set(t) == before);
}

TEST_CASE("feedback depends only on the intersection size, exhaustively for n <= 5") {
  for (StationId n = 1; n <= 5; ++n) {
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t q = 0; q < subsets; ++q) {
      for (std::uint64_t s = 1; s < subsets; ++s) {
        StationSet query = StationSet::from_mask(q);
        StationSet live = StationSet::from_mask(s);
        Feedback fb = evaluate_query(query, live);
        int l = std::popcount(q & s);
        if (l == 0) {
          REQUIRE(fb == Feedback::silence());
        } else if (l == 1) {
          REQUIRE(fb == Feedback::single(std::countr_zero(q & s) + 1));
        } else {
          REQUIRE(fb == Feedback::collision());
        }
        REQUIRE(feedback_consistent(query, fb, live));
      }
    }
  }
}

TEST_CASE("evaluate_query is equivariant under relabeling") {
  std::mt19937 rng(7);
  const StationId n = 6;
  std::vector<StationId> perm(n + 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    auto relabel = [&](const StationSet& s) {
      StationSet out;
      for (StationId id : s.members()) out.insert(perm[static_cast<std::size_t>(id)]);
      return out;
    };
    StationSet query = StationSet::from_mask(rng() & 63);
    StationSet live = StationSet::from_mask((rng() & 63) | 1);
    Feedback fb = evaluate_query(query, live);
    Feedback image = evaluate_query(relabel(query), relabel(live));
    if (fb.is_single()) {
      CHECK(image == Feedback::single(perm[static_cast<std::size_t>(fb.station())]));
    } else {
      CHECK(image == fb);
    }
  }
}

TEST_CASE("StationSet spills ids above 64 into extra words") {
  StationSet s{1, 64, 65, 130};
  CHECK(s.size() == 4);
  CHECK_FALSE(s.is_small());
  CHECK(s.contains(130));
  CHECK(s.max_id() == 130);
  CHECK(s.min_id() == 1);
  CHECK(s.members() == std::vector<StationId>{1, 64, 65, 130});
  s.erase(65);
  s.erase(130);
  CHECK(s.is_small());
  CHECK(s == StationSet{1, 64});
  CHECK((StationSet{70, 80} & StationSet{80, 90}) == StationSet{80});
  CHECK((StationSet{70, 80} - StationSet{80}) == StationSet{70});
  CHECK(evaluate_query({100, 3}, {100, 200}) == Feedback::single(100));
}

TEST_CASE("StationSet orders lexicographically by members") {
  CHECK(StationSet{1, 2} < StationSet{1, 3});
  CHECK(StationSet{1, 3} < StationSet{2});
  CHECK(StationSet{1} < StationSet{1, 2});
  CHECK(StationSet{} < StationSet{1});
  CHECK(StationSet{1, 70} < StationSet{2});
  CHECK(subsets_of_size(3, 2) == std::vector<StationSet>{{1, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("GameConfig rejects invalid sizes") {
  CHECK_THROWS_AS(GameConfig(0, 1), Error);
  CHECK_THROWS_AS(GameConfig(3, 0), Error);
  CHECK_THROWS_AS(GameConfig(3, 4), Error);
  CHECK_THROWS_AS(GameConfig(65, 1), Error);
  CHECK_NOTHROW(GameConfig(65, 1, 128));
}

TEST_CASE("transcript document has the fixed field order and round-trips") {
  Transcript t{GameConfig(4, 2), {}};
  t.append({1, 2, 3, 4}, Feedback::collision());
  t.append({1, 2}, Feedback::single(1));
  t.append({}, Feedback::silence());
  auto doc = io::transcript_to_json(t, {1, 3});
  CHECK(doc.dump() ==
        R"({"n":4,"d":2,"live":[1,3],"rounds":[{"query":[1,2,3,4],"feedback":"collision"},)"
        R"({"query":[1,2],"feedback":{"single":1}},{"query":[],"feedback":"silence"}]})");

  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Transcript random{GameConfig(8, 3), {}};
    StationSet live = StationSet::from_mask(rng() & 255);
    int rounds = static_cast<int>(rng() % 6);
    for (int r = 0; r < rounds; ++r) {
      StationSet q = StationSet::from_mask(rng() & 255);
      random.append(q, evaluate_query(q, live));
    }
    auto parsed = io::transcript_from_json(io::Json::parse(io::transcript_to_json(random, live).dump()));
    CHECK(parsed.transcript == random);
    CHECK(parsed.live == live);
  }
}

TEST_CASE("malformed transcript documents are rejected") {
  CHECK_THROWS_AS(io::transcript_from_json(io::Json::parse(R"({"n":2})")), Error);
  CHECK_THROWS_AS(
      io::transcript_from_json(io::Json::parse(R"({"n":2,"d":1,"live":[1],"rounds":[{"query":[1],"feedback":"loud"}]})")),
      Error);
}
