#include <gtest/gtest.h>

#include <filesystem>

#include "mkin/error.hpp"
#include "mkin/scenario.hpp"

using namespace mkin;

namespace {

const std::string kDir = MKIN_SCENARIO_DIR;

const char* kSmall = R"(
ball = euclidean
track = [(0, 2)]
curves {
  line = "segment:0,0,12,0"
  wheel = "circle:0,1,1,-1.5707963267948966"
}
motion { fixed = line, moving = wheel, steps = 64 }
verify { es1 = true, es2 = true }
numerics { h = 0.01 }
)";

}  // namespace

TEST(Scenario, ParsesAndRoundTrips) {
  const Scenario s = parse_scenario(kSmall);
  EXPECT_EQ(s.ball, "euclidean");
  ASSERT_EQ(s.track.size(), 1u);
  EXPECT_EQ(s.track[0], (Vec2{0, 2}));
  EXPECT_EQ(s.motion.steps, 64);
  EXPECT_TRUE(s.verify.es1);
  EXPECT_FALSE(s.verify.statement1);
  EXPECT_EQ(s.numerics.h, 0.01);
  const Scenario again = parse_scenario(print_scenario(s));
  EXPECT_EQ(again, s);
  EXPECT_EQ(print_scenario(again), print_scenario(s));
}

TEST(Scenario, BundledFilesRoundTrip) {
  for (const char* f : {"wheel.scn", "hypocycloid3.scn", "l4_suite.scn", "failing.scn"}) {
    const Scenario s = load_scenario(kDir + "/" + f);
    EXPECT_EQ(parse_scenario(print_scenario(s)), s) << f;
  }
}

TEST(Scenario, ErrorsCarryLocation) {
  try {
    parse_scenario("seed = 1\nball = l0\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_GT(e.column(), 0);
  }
  try {
    parse_scenario("ball = euclidean\ncolour = 3\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownKey);
    EXPECT_EQ(e.line(), 2);
  }
  try {
    parse_scenario("ball = euclidean\nmotion { fixed = nowhere, moving = nowhere }\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnresolvedName);
  }
  try {
    parse_scenario("ball = euclidean\ntrack = [(0, 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
}

TEST(Scenario, VerifyWheel) {
  RunOptions o;
  o.mode = RunMode::verify;
  o.threads = 2;
  o.out_dir = (std::filesystem::temp_directory_path() / "mkin_unit_wheel").string();
  const RunReport r = run(parse_scenario(kSmall), o);
  EXPECT_EQ(r.exit_status, 0) << report_text(r);
  ASSERT_EQ(r.checks.size(), 2u);
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name;
}

TEST(Scenario, FailingCheckSetsExitStatus) {
  Scenario s = parse_scenario(kSmall);
  s.tolerance.es1 = 0.0;
  s.numerics.h = 0.05;
  RunOptions o;
  o.mode = RunMode::verify;
  o.only = "es1";
  const RunReport r = run(s, o);
  EXPECT_EQ(r.exit_status, 1);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_FALSE(r.checks[0].pass);
}

TEST(Scenario, ReportIsDeterministic) {
  RunOptions o;
  o.mode = RunMode::verify;
  o.threads = 4;
  const Scenario s = parse_scenario(kSmall);
  EXPECT_EQ(report_csv(run(s, o)), report_csv(run(s, o)));
}

TEST(Scenario, HypocycloidDemo) {
  const Scenario s = hypocycloid_scenario(4, "euclidean");
  EXPECT_EQ(s.verify.cusps, 4);
  RunOptions o;
  o.mode = RunMode::verify;
  o.only = "cusps";
  o.out_dir = (std::filesystem::temp_directory_path() / "mkin_unit_hypo").string();
  const RunReport r = run(s, o);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_TRUE(r.checks[0].pass) << report_text(r);
}
