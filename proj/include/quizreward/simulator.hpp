#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "quizreward/config.hpp"
#include "quizreward/engine.hpp"
#include "quizreward/money.hpp"

namespace quizreward {

namespace population {

struct FixedScore {
  double value = 0.0;
};
struct Uniform {
  double low = 0.0;
  double high = 1.0;
};
/// Normal draw clipped to [0, 1].
struct TruncatedNormal {
  double mean = 0.5;
  double stddev = 0.1;
};
/// Wins with probability p_win whatever the threshold: scores land just above
/// or just below the current threshold.
struct Bernoulli {
  double p_win = 0.2;
  static constexpr double kMargin = 0.01;
};

}  // namespace population

using PopulationModel = std::variant<population::FixedScore, population::Uniform,
                                     population::TruncatedNormal, population::Bernoulli>;

void validate_population(const PopulationModel& model);

struct Scenario {
  QuizConfig config;
  PopulationModel population = population::Bernoulli{};
  std::int64_t num_players = 1;
  std::uint64_t seed = 0;
  std::int64_t trials = 1;

  void validate() const;

  /// Baseline config for `quiz_case` with a 20% Bernoulli population.
  static Scenario baseline(QuizCase quiz_case, std::int64_t num_players,
                           std::int64_t trials = 1, std::uint64_t seed = 1);
};

enum class RunEnd { FloorReached, PoolInsufficient, PlayersExhausted, CapReached };

const char* to_string(RunEnd end) noexcept;

struct ThresholdPoint {
  std::int64_t seq = 0;
  double threshold = 0.0;
  friend bool operator==(const ThresholdPoint&, const ThresholdPoint&) = default;
};

struct SimReport {
  std::uint64_t seed = 0;
  std::int64_t capacity = 0;
  std::int64_t registrations = 0;
  std::int64_t submissions = 0;
  std::int64_t winners = 0;
  Money total_payout;
  Money min_pool;  // lowest pool balance observed after any event
  SignedMoney profit;
  RunEnd closure_reason = RunEnd::PlayersExhausted;
  std::vector<ThresholdPoint> threshold_trajectory;

  double success_rate() const {
    return submissions == 0 ? 0.0 : static_cast<double>(winners) / static_cast<double>(submissions);
  }
  friend bool operator==(const SimReport&, const SimReport&) = default;
};

/// Drives one quiz to closure or player exhaustion and returns the final
/// engine (including its event log).
Quiz simulate_quiz(const Scenario& scenario, std::uint64_t seed, RunEnd* end = nullptr);

SimReport run_simulation(const Scenario& scenario, std::uint64_t seed);

struct Stats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for a single trial
  double min = 0.0;
  double max = 0.0;
  friend bool operator==(const Stats&, const Stats&) = default;
};

Stats summarize(std::span<const double> values);

struct TrialSummary {
  std::vector<SimReport> reports;  // index-ordered; reports[i].seed = seed + i
  Stats winners;
  Stats registrations;
  Stats total_payout;   // currency units
  Stats profit;         // currency units
  Stats success_rate;
  friend bool operator==(const TrialSummary&, const TrialSummary&) = default;
};

TrialSummary summarize(std::vector<SimReport> reports);

/// Trials run with seeds scenario.seed + i. The OpenMP version fans trials out
/// across threads; both produce identical summaries.
TrialSummary run_trials(const Scenario& scenario);
TrialSummary run_trials_serial(const Scenario& scenario);

/// Brute-force capacity: pays rounded terms one by one (iterated
/// multiplication, no closed form) while each exceeds the floor and the pool
/// still covers it.
std::int64_t empirical_max_winners(Money pool, Ratio x, Money floor);

struct SweepParameter {
  std::string name;
  std::vector<double> values;
};

/// Parses NAME=LO:HI:STEP (HI inclusive).
SweepParameter parse_sweep_parameter(const std::string& spec);

struct SweepRow {
  std::vector<std::pair<std::string, double>> parameters;
  std::optional<std::int64_t> capacity;
  std::optional<TrialSummary> summary;
  std::string error;  // non-empty when the grid point was invalid
};

/// One row per point of the Cartesian product of `grid`, first parameter
/// outermost. Sweeping cp re-derives the case: cp = 1 is Case 1, and cp < 1
/// turns a Case-1 scenario into Case 2.
std::vector<SweepRow> sweep(const Scenario& scenario, std::span<const SweepParameter> grid);

/// Names accepted by sweep().
std::span<const char* const> sweep_parameter_names();

}  // namespace quizreward
