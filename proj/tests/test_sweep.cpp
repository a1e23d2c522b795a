#include <doctest.h>

#include "weylns/error.hpp"
#include "weylns/sweep.hpp"

using namespace weylns;

TEST_CASE("ranges") {
  CHECK(Range::parse("3..8") == Range{3, 8});
  CHECK(Range::parse("5") == Range{5, 5});
  CHECK(Range{4, 4}.to_string() == "4");
  CHECK(Range{1, 3}.to_string() == "1..3");
  for (const char* bad : {"", "3..", "..4", "a", "3-4", "3..4x"}) CHECK_THROWS_AS(Range::parse(bad), Error);
}

TEST_CASE("families") {
  for (Family f : all_families()) CHECK(parse_family(to_string(f)) == f);
  CHECK_THROWS_AS(parse_family("nope"), Error);
}

TEST_CASE("spec validation") {
  SweepSpec s;
  CHECK_NOTHROW(s.validate());
  s.n = {2, 4};
  CHECK_THROWS_AS(s.validate(), Error);
  s.n = {3, 9};
  CHECK_THROWS_AS(s.validate(), Error);
  s.unbounded = true;
  CHECK_NOTHROW(s.validate());
  s.e = {3, 2};
  CHECK_THROWS_AS(s.validate(), Error);
  s.e = {1, 1};
  s.families.clear();
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("sweeps are deterministic and stream in order") {
  SweepSpec s;
  s.n = {3, 4};
  s.e = {1, 2};
  s.f = {1, 2};
  s.words = 4;
  s.trials = 20;
  std::vector<std::string> streamed;
  const auto one = run_sweep(s, [&](const CheckRecord& r) { streamed.push_back(to_line(r)); });
  s.jobs = 3;
  const auto three = run_sweep(s);
  CHECK(one.ok());
  CHECK(report_document(s, one).dump() == report_document(s, three).dump());
  REQUIRE(streamed.size() == one.records.size());
  for (std::size_t i = 0; i < streamed.size(); ++i) CHECK(streamed[i] == to_line(one.records[i]));
  const auto doc = report_document(s, one);
  CHECK(doc["schema"] == "weylns/1");
  CHECK(doc["summary"]["failed"] == 0);
}

TEST_CASE("sabotage produces failures with counterexamples") {
  SweepSpec s;
  s.n = {4, 4};
  s.e = {2, 2};
  s.families = {Family::Intertwining};
  s.sabotage = 1;
  const auto r = run_sweep(s);
  CHECK_FALSE(r.ok());
  bool witnessed = false;
  for (const auto& rec : r.records) witnessed = witnessed || (!rec.pass && rec.counterexample.has_value());
  CHECK(witnessed);
}
