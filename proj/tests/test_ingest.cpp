#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "encnet/ingest.hpp"
#include "encnet/rng.hpp"

using namespace encnet;

TEST_CASE("parse_sightings reads well-formed rows") {
  std::istringstream in(
      "# comment\n"
      "alice,gate,100\n"
      "\n"
      "bob,gate,130\r\n"
      "alice,lobby,90\n");
  const auto s = parse_sightings(in);
  REQUIRE(s.size() == 3);
  CHECK(s[0] == Sighting{"alice", "gate", 100});
  CHECK(s[1] == Sighting{"bob", "gate", 130});
  CHECK(s[2] == Sighting{"alice", "lobby", 90});
}

TEST_CASE("parse_sightings rejects malformed rows with line numbers") {
  auto expect_line = [](const char* text, std::size_t line) {
    std::istringstream in(text);
    try {
      parse_sightings(in);
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(e.line() == line);
    }
  };
  expect_line("a,s,1\nb,s\n", 2);
  expect_line("a,s,1,extra\n", 1);
  expect_line("a,s,notatime\n", 1);
  expect_line("a,s,-5\n", 1);
  expect_line(",s,1\n", 1);
  expect_line("a,,1\n", 1);
  expect_line("# ok\na,s,12.5\n", 2);
}

TEST_CASE("sessionize merges a chain of close sightings") {
  // 0 -> 250 -> 550: each step within the gap, one session spanning all.
  const std::vector<Sighting> s{{"a", "s", 0}, {"a", "s", 250}, {"a", "s", 550}};
  const auto sessions = sessionize(s, 300, 60);
  REQUIRE(sessions.size() == 1);
  CHECK(sessions[0] == Session{"a", "s", 0, 610});
}

TEST_CASE("sessionize splits on gaps and keys") {
  const std::vector<Sighting> s{
      {"a", "s", 0}, {"a", "s", 400}, {"a", "t", 0}, {"b", "s", 0}};
  const auto sessions = sessionize(s, 300, 60);
  REQUIRE(sessions.size() == 4);
  CHECK(sessions[0] == Session{"a", "s", 0, 60});
  CHECK(sessions[1] == Session{"a", "s", 400, 460});
  CHECK(sessions[2] == Session{"a", "t", 0, 60});
  CHECK(sessions[3] == Session{"b", "s", 0, 60});
}

TEST_CASE("sessionize collapses duplicate detections") {
  const std::vector<Sighting> s{{"a", "s", 10}, {"a", "s", 10}, {"a", "s", 10}};
  const auto sessions = sessionize(s, 300, 60);
  REQUIRE(sessions.size() == 1);
  CHECK(sessions[0] == Session{"a", "s", 10, 70});
}

TEST_CASE("sessionize merges when implied presence overlaps despite the gap") {
  // gap 50 < spacing 90 < scan 100: the two implied intervals [0,100) and
  // [90,190) overlap, so they must fuse rather than produce two
  // overlapping sessions.
  const std::vector<Sighting> s{{"a", "s", 0}, {"a", "s", 90}};
  const auto sessions = sessionize(s, 50, 100);
  REQUIRE(sessions.size() == 1);
  CHECK(sessions[0] == Session{"a", "s", 0, 190});
}

TEST_CASE("sessionize validates parameters") {
  CHECK_THROWS_AS(sessionize({}, 0, 60), argument_error);
  CHECK_THROWS_AS(sessionize({}, 300, 0), argument_error);
  CHECK(sessionize({}, 300, 60).empty());
}

TEST_CASE("sessions are disjoint and sorted for any input") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    std::vector<Sighting> s;
    const char* devices[] = {"a", "b"};
    const char* scanners[] = {"x", "y"};
    const std::size_t count = 5 + rng.below(60);
    for (std::size_t i = 0; i < count; ++i)
      s.push_back(Sighting{devices[rng.below(2)], scanners[rng.below(2)],
                           static_cast<Seconds>(rng.below(3000))});
    const Seconds gap = 60 + static_cast<Seconds>(rng.below(300));
    const Seconds period = 10 + static_cast<Seconds>(rng.below(200));
    const auto sessions = sessionize(s, gap, period);
    REQUIRE_NOTHROW(validate_sessions(sessions));
    for (std::size_t i = 1; i < sessions.size(); ++i) {
      const auto ka = std::tie(sessions[i - 1].device_id, sessions[i - 1].scanner_id,
                               sessions[i - 1].start);
      const auto kb = std::tie(sessions[i].device_id, sessions[i].scanner_id, sessions[i].start);
      CHECK(ka < kb);
    }
  }
}

TEST_CASE("sessionize is idempotent on its own implied scan train") {
  // Rebuild the periodic detections a session stands for (one per scan
  // period from the start, plus the final one) and sessionize again:
  // nothing should move. Requires scan_period <= gap.
  const Seconds gap = 300;
  const Seconds period = 60;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    std::vector<Sighting> s;
    const std::size_t count = 3 + rng.below(40);
    for (std::size_t i = 0; i < count; ++i)
      s.push_back(Sighting{"dev", rng.below(2) ? "s1" : "s2",
                           static_cast<Seconds>(rng.below(5000))});
    const auto sessions = sessionize(s, gap, period);

    std::vector<Sighting> train;
    for (const Session& ses : sessions) {
      for (Seconds t = ses.start; t + period < ses.end; t += period)
        train.push_back(Sighting{ses.device_id, ses.scanner_id, t});
      train.push_back(Sighting{ses.device_id, ses.scanner_id, ses.end - period});
    }
    CHECK(sessionize(train, gap, period) == sessions);
  }
}
