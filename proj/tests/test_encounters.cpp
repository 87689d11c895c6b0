#include <catch2/catch_amalgamated.hpp>

#include <limits>

#include "encnet/encounters.hpp"
#include "encnet/ingest.hpp"
#include "encnet/rng.hpp"

using namespace encnet;

namespace {

Session ses(const char* d, const char* sc, Seconds s, Seconds e) {
  return Session{d, sc, s, e};
}

}  // namespace

TEST_CASE("build_encounters intersects overlapping sessions") {
  const auto trace = build_encounters({ses("a", "s", 0, 100), ses("b", "s", 40, 160)}, 0);
  REQUIRE(trace.encounters.size() == 1);
  CHECK(trace.encounters[0] == Encounter{"a", "b", "s", 40, 100});
  CHECK(trace.devices == std::set<std::string>{"a", "b"});
}

TEST_CASE("build_encounters requires same scanner and distinct devices") {
  CHECK(build_encounters({ses("a", "s", 0, 100), ses("b", "t", 0, 100)}, 0).encounters.empty());
  CHECK(build_encounters({ses("a", "s", 0, 50), ses("a", "s", 60, 100)}, 0).encounters.empty());
  // touching intervals have zero-length intersection
  CHECK(build_encounters({ses("a", "s", 0, 50), ses("b", "s", 50, 100)}, 0).encounters.empty());
}

TEST_CASE("build_encounters emits all pairs of a copresent group") {
  const auto trace = build_encounters(
      {ses("a", "s", 0, 100), ses("b", "s", 0, 100), ses("c", "s", 0, 100)}, 0);
  REQUIRE(trace.encounters.size() == 3);
  CHECK(trace.encounters[0] == Encounter{"a", "b", "s", 0, 100});
  CHECK(trace.encounters[1] == Encounter{"a", "c", "s", 0, 100});
  CHECK(trace.encounters[2] == Encounter{"b", "c", "s", 0, 100});
}

TEST_CASE("merge_gap fuses near-adjacent same-pair encounters") {
  // a leaves for 30 s; pair intervals [0,50) and [80,120).
  const std::vector<Session> sessions{ses("a", "s", 0, 50), ses("a", "s", 80, 150),
                                      ses("b", "s", 0, 120)};
  const auto split = build_encounters(sessions, 29);
  REQUIRE(split.encounters.size() == 2);
  CHECK(split.encounters[0] == Encounter{"a", "b", "s", 0, 50});
  CHECK(split.encounters[1] == Encounter{"a", "b", "s", 80, 120});

  const auto merged = build_encounters(sessions, 30);
  REQUIRE(merged.encounters.size() == 1);
  CHECK(merged.encounters[0] == Encounter{"a", "b", "s", 0, 120});
}

TEST_CASE("merge_gap zero still joins touching spans") {
  // b is copresent with a at the same scanner through two abutting a-sessions.
  const std::vector<Session> sessions{ses("a", "s", 0, 50), ses("a", "s", 50, 100),
                                      ses("b", "s", 0, 100)};
  const auto trace = build_encounters(sessions, 0);
  REQUIRE(trace.encounters.size() == 1);
  CHECK(trace.encounters[0] == Encounter{"a", "b", "s", 0, 100});
}

TEST_CASE("build_encounters validates merge_gap") {
  CHECK_THROWS_AS(build_encounters({}, -1), argument_error);
}

TEST_CASE("encounters stay inside both endpoint sessions when merge_gap is 0") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    Rng rng(seed);
    std::vector<Sighting> sightings;
    const char* devices[] = {"a", "b", "c"};
    for (std::size_t i = 0; i < 40; ++i)
      sightings.push_back(
          Sighting{devices[rng.below(3)], "s", static_cast<Seconds>(rng.below(2000))});
    const auto sessions = sessionize(sightings, 120, 60);
    const auto trace = build_encounters(sessions, 0);
    REQUIRE_NOTHROW(validate_trace(trace));
    for (const Encounter& e : trace.encounters) {
      for (const std::string& dev : {e.a, e.b}) {
        bool contained = false;
        for (const Session& s : sessions)
          if (s.device_id == dev && s.scanner_id == e.scanner_id && s.start <= e.start &&
              e.end <= s.end)
            contained = true;
        CHECK(contained);
      }
    }
  }
}

TEST_CASE("aggregate accumulates durations and event counts") {
  TemporalTrace trace;
  trace.devices = {"a", "b", "c", "lonely"};
  trace.encounters = {Encounter{"a", "b", "s", 0, 10}, Encounter{"a", "b", "t", 5, 25},
                      Encounter{"a", "c", "s", 0, 7}};
  const AggregateGraph g = aggregate(trace);
  CHECK(g.nodes.size() == 4);
  REQUIRE(g.edges.size() == 2);
  CHECK(g.edges.at({"a", "b"}) == EdgeData{30, 2});
  CHECK(g.edges.at({"a", "c"}) == EdgeData{7, 1});
}

namespace {

TemporalTrace removal_fixture() {
  TemporalTrace trace;
  trace.devices = {"a", "b", "c"};
  // durations: 5, 10, 20, 40, 80
  trace.encounters = {Encounter{"a", "b", "s", 0, 5}, Encounter{"a", "c", "s", 10, 20},
                      Encounter{"b", "c", "s", 30, 50}, Encounter{"a", "b", "s", 60, 100},
                      Encounter{"a", "c", "s", 200, 280}};
  return trace;
}

}  // namespace

TEST_CASE("remove_encounters drops floor(fraction * count) events") {
  const auto trace = removal_fixture();
  CHECK(remove_encounters(trace, 0.0, RemovalPolicy::briefest).encounters.size() == 5);
  CHECK(remove_encounters(trace, 0.2, RemovalPolicy::briefest).encounters.size() == 4);
  CHECK(remove_encounters(trace, 0.5, RemovalPolicy::briefest).encounters.size() == 3);
  CHECK(remove_encounters(trace, 0.99, RemovalPolicy::briefest).encounters.size() == 1);
  CHECK(remove_encounters(trace, 1.0, RemovalPolicy::briefest).encounters.empty());
}

TEST_CASE("floor uses real-number semantics for decimal fractions") {
  TemporalTrace trace;
  trace.devices = {"a", "b"};
  for (int i = 0; i < 10; ++i)
    trace.encounters.push_back(Encounter{"a", "b", "s", i * 100, i * 100 + 10 + i});
  // 0.3 * 10 must remove exactly 3, although 0.3 is not exact in binary.
  CHECK(remove_encounters(trace, 0.3, RemovalPolicy::briefest).encounters.size() == 7);
  CHECK(remove_encounters(trace, 0.7, RemovalPolicy::briefest).encounters.size() == 3);
}

TEST_CASE("removal policies rank by duration from opposite ends") {
  const auto trace = removal_fixture();

  const auto brief = remove_encounters(trace, 0.4, RemovalPolicy::briefest);
  REQUIRE(brief.encounters.size() == 3);  // 5 and 10 gone
  CHECK(brief.encounters[0].duration() == 20);
  CHECK(brief.encounters[1].duration() == 40);
  CHECK(brief.encounters[2].duration() == 80);

  const auto persistent = remove_encounters(trace, 0.4, RemovalPolicy::most_persistent);
  REQUIRE(persistent.encounters.size() == 3);  // 80 and 40 gone
  CHECK(persistent.encounters[0].duration() == 5);
  CHECK(persistent.encounters[1].duration() == 10);
  CHECK(persistent.encounters[2].duration() == 20);
}

TEST_CASE("removal breaks duration ties by earliest start") {
  TemporalTrace trace;
  trace.devices = {"a", "b"};
  trace.encounters = {Encounter{"a", "b", "s", 0, 10}, Encounter{"a", "b", "s", 20, 30},
                      Encounter{"a", "b", "s", 40, 50}};
  const auto out = remove_encounters(trace, 0.34, RemovalPolicy::briefest);
  REQUIRE(out.encounters.size() == 2);
  CHECK(out.encounters[0].start == 20);
  CHECK(out.encounters[1].start == 40);
}

TEST_CASE("removal keeps devices and canonical order") {
  const auto trace = removal_fixture();
  const auto out = remove_encounters(trace, 0.5, RemovalPolicy::most_persistent);
  CHECK(out.devices == trace.devices);
  REQUIRE_NOTHROW(validate_trace(out));
}

TEST_CASE("removal validates the fraction") {
  const auto trace = removal_fixture();
  CHECK_THROWS_AS(remove_encounters(trace, -0.1, RemovalPolicy::briefest), argument_error);
  CHECK_THROWS_AS(remove_encounters(trace, 1.1, RemovalPolicy::briefest), argument_error);
  CHECK_THROWS_AS(
      remove_encounters(trace, std::numeric_limits<double>::quiet_NaN(), RemovalPolicy::briefest),
      argument_error);
}
