#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "quizreward/error.hpp"
#include "quizreward/rng.hpp"
#include "quizreward/simulator.hpp"

namespace quizreward {
namespace {

Money m(const char* text) { return parse_money(text); }

TEST(SimRng, StreamIsFixedByTheStandard) {
  std::mt19937_64 reference;
  reference.discard(9999);
  EXPECT_EQ(reference(), 9981545732273789042ULL);

  SimRng rng(42);
  EXPECT_EQ(rng.next_u64(), 13930160852258120406ULL);
  SimRng again(42);
  EXPECT_DOUBLE_EQ(again.uniform(), 0.755155532954539);
}

TEST(SimRng, BoundedDrawsStayInRange) {
  SimRng rng(5);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 10'000; ++i) {
    const auto v = rng.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(RunSimulation, PerfectScoresExhaustCase1Capacity) {
  Scenario s = Scenario::baseline(QuizCase::Case1, 200);
  s.population = population::FixedScore{1.0};
  const SimReport r = run_simulation(s, 9);
  EXPECT_EQ(r.winners, 37);
  EXPECT_EQ(r.registrations, 37);
  EXPECT_EQ(r.submissions, 37);
  EXPECT_EQ(r.closure_reason, RunEnd::FloorReached);
}

TEST(RunSimulation, ZeroScoresNeverWin) {
  Scenario s = Scenario::baseline(QuizCase::Case2, 50);
  s.population = population::FixedScore{0.0};
  const SimReport r = run_simulation(s, 1);
  EXPECT_EQ(r.winners, 0);
  EXPECT_EQ(r.registrations, 50);
  EXPECT_EQ(r.closure_reason, RunEnd::PlayersExhausted);
  // 50 f - 50 c - h = 50 - 5 - 5
  EXPECT_EQ(r.profit.micros, 40'000'000);
}

TEST(RunSimulation, RegistrationCapEndsTheRun) {
  Scenario s = Scenario::baseline(QuizCase::Case2, 100);
  s.config.registration_cap = 10;
  const SimReport r = run_simulation(s, 3);
  EXPECT_EQ(r.registrations, 10);
  EXPECT_EQ(r.closure_reason, RunEnd::CapReached);
}

TEST(RunSimulation, SameSeedSameReport) {
  Scenario s = Scenario::baseline(QuizCase::Case3, 500);
  s.population = population::TruncatedNormal{0.6, 0.15};
  EXPECT_EQ(run_simulation(s, 77), run_simulation(s, 77));
  EXPECT_NE(run_simulation(s, 77), run_simulation(s, 78));
}

TEST(RunSimulation, RejectsInvalidScenarios) {
  Scenario s = Scenario::baseline(QuizCase::Case2, 0);
  EXPECT_THROW(run_simulation(s, 1), QuizError);
  s.num_players = 10;
  s.population = population::Uniform{0.8, 0.2};
  EXPECT_THROW(run_simulation(s, 1), QuizError);
  s.population = population::Bernoulli{1.2};
  EXPECT_THROW(run_simulation(s, 1), QuizError);
}

// Regression golden for the arrival/score stream. A change here means reports
// are no longer reproducible from old seeds.
TEST(RunSimulation, GoldenBernoulliRun) {
  const SimReport r = run_simulation(Scenario::baseline(QuizCase::Case2, 1000), 2021);
  EXPECT_EQ(r.registrations, 212);
  EXPECT_EQ(r.winners, 46);
  // 212 - 75.945306 - 21.2 - 5
  EXPECT_EQ(r.profit.micros, 109'854'694);
}

TEST(RunTrials, SingleTrialEqualsTheReport) {
  const Scenario s = Scenario::baseline(QuizCase::Case2, 300, 1, 11);
  const TrialSummary summary = run_trials(s);
  const SimReport single = run_simulation(s, 11);
  ASSERT_EQ(summary.reports.size(), 1u);
  EXPECT_EQ(summary.reports[0], single);
  EXPECT_EQ(summary.winners.mean, static_cast<double>(single.winners));
  EXPECT_EQ(summary.winners.stddev, 0.0);
  EXPECT_EQ(summary.registrations.min, summary.registrations.max);
  EXPECT_EQ(summary.profit.mean, single.profit.to_double());
}

TEST(RunTrials, ParallelMatchesSerialReference) {
  Scenario s = Scenario::baseline(QuizCase::Case3, 2000, 40, 123);
  s.population = population::Uniform{0.4, 1.0};
  const TrialSummary parallel = run_trials(s);
  const TrialSummary serial = run_trials_serial(s);
  EXPECT_EQ(parallel, serial);
  for (std::size_t i = 0; i < parallel.reports.size(); ++i) {
    EXPECT_EQ(parallel.reports[i].seed, 123 + i);
  }
}

TEST(Summarize, SampleStatistics) {
  const std::vector<double> values = {1.0, 2.0, 3.0, 4.0};
  const Stats s = summarize(values);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_DOUBLE_EQ(s.stddev, std::sqrt(5.0 / 3.0));
  EXPECT_EQ(s.min, 1.0);
  EXPECT_EQ(s.max, 4.0);
}

TEST(EmpiricalMaxWinners, Examples) {
  EXPECT_EQ(empirical_max_winners(m("100"), Ratio(0.9695), m("1")), 37);
  EXPECT_EQ(empirical_max_winners(m("100"), Ratio(0.5), m("1")), 6);
  EXPECT_EQ(empirical_max_winners(m("100"), Ratio(0.9695), m("0.75")), 46);
  EXPECT_EQ(empirical_max_winners(m("1"), Ratio(0.9695), m("1")), 0);
}

TEST(EmpiricalMaxWinners, AgreesWithClosedForm) {
  SimRng rng(1000);
  for (int i = 0; i < 1500; ++i) {
    const auto pool = Money::from_micros(static_cast<std::int64_t>((1.0 + rng.uniform() * 9999.0) * 1e6));
    const Ratio x(0.01 + rng.uniform() * 0.989);
    const auto floor = Money::from_micros(
        std::max<std::int64_t>(10'000, static_cast<std::int64_t>(rng.uniform() * pool.micros())));
    ASSERT_EQ(empirical_max_winners(pool, x, floor), max_winners(pool, x, floor))
        << pool.to_decimal() << " " << x.value() << " " << floor.to_decimal();
  }
}

TEST(Sweep, ParsesRanges) {
  const auto p = parse_sweep_parameter("cp=0.5:1.0:0.25");
  EXPECT_EQ(p.name, "cp");
  EXPECT_EQ(p.values, (std::vector<double>{0.5, 0.75, 1.0}));
  EXPECT_EQ(parse_sweep_parameter("sf=0").values, std::vector<double>{0.0});
  EXPECT_EQ(parse_sweep_parameter("ratio=0.9:0.99:0.01").values.size(), 10u);
  for (const char* bad : {"cp", "=1", "bogus=1", "cp=1:0:0.1", "cp=0:1:0", "cp=a:b:c", "cp=0:1"}) {
    EXPECT_THROW(parse_sweep_parameter(bad), QuizError) << bad;
  }
}

TEST(Sweep, CpGridReproducesCapacityGain) {
  const Scenario s = Scenario::baseline(QuizCase::Case2, 2000, 3);
  const std::vector<SweepParameter> grid = {{"cp", {1.0, 0.75}}};
  const auto rows = sweep(s, grid);
  ASSERT_EQ(rows.size(), 2u);
  ASSERT_TRUE(rows[0].capacity && rows[1].capacity) << rows[0].error << rows[1].error;
  EXPECT_EQ(*rows[0].capacity, 37);
  EXPECT_EQ(*rows[1].capacity, 46);
  EXPECT_NEAR(46.0 / 37.0 - 1.0, 0.243, 1e-3);

  const std::vector<SweepParameter> half = {{"cp", {0.5}}};
  EXPECT_EQ(*sweep(s, half)[0].capacity, 59);
}

TEST(Sweep, ZeroGainHoldsThresholdConstant) {
  Scenario s = Scenario::baseline(QuizCase::Case3, 500, 2);
  s.population = population::Uniform{0.0, 1.0};
  const std::vector<SweepParameter> grid = {{"sf", {0.0}}};
  const auto rows = sweep(s, grid);
  ASSERT_TRUE(rows[0].summary);
  for (const auto& report : rows[0].summary->reports) {
    ASSERT_GT(report.threshold_trajectory.size(), 1u);
    for (const auto& point : report.threshold_trajectory) EXPECT_EQ(point.threshold, 0.70);
  }
}

TEST(Sweep, InvalidPointsBecomeErrorRows) {
  const Scenario s = Scenario::baseline(QuizCase::Case2, 100);
  const std::vector<SweepParameter> grid = {{"cp", {0.75, 1.5}}, {"ratio", {0.9695, 0.5}}};
  const auto rows = sweep(s, grid);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].parameters[0].second, 0.75);
  EXPECT_EQ(rows[1].parameters[1].second, 0.5);
  EXPECT_TRUE(rows[0].error.empty());
  EXPECT_TRUE(rows[1].error.empty());
  EXPECT_NE(rows[2].error.find("config.cp"), std::string::npos);
  EXPECT_FALSE(rows[3].summary.has_value());
}

// With a threshold-sensitive population the controller pulls the realized
// success rate toward the 20% target.
TEST(ControllerEfficacy, RealizedSuccessMovesTowardTarget) {
  for (double p_win : {0.5, 0.8, 1.0}) {
    Scenario s = Scenario::baseline(QuizCase::Case3, 5000, 20, 31);
    // Uniform(lo, 1) with P(score > 0.70) = p_win.
    s.population = population::Uniform{1.0 - 0.30 / p_win, 1.0};
    const TrialSummary summary = run_trials(s);
    EXPECT_LT(std::abs(summary.success_rate.mean - 0.2), std::abs(p_win - 0.2)) << p_win;
    for (const auto& report : summary.reports) {
      for (const auto& point : report.threshold_trajectory) {
        ASSERT_GE(point.threshold, 0.60);
        ASSERT_LE(point.threshold, 0.95);
      }
    }
  }
}

}  // namespace
}  // namespace quizreward
