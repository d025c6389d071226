#include "quizreward/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>

#include "quizreward/error.hpp"
#include "quizreward/rng.hpp"

namespace quizreward {

namespace {

bool is_fraction(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

void require(bool ok, const std::string& message) {
  if (!ok) fail(ErrorKind::Validation, message);
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double draw_score(const PopulationModel& model, double threshold, SimRng& rng) {
  return std::visit(
      overloaded{
          [](const population::FixedScore& m) { return m.value; },
          [&](const population::Uniform& m) { return m.low + (m.high - m.low) * rng.uniform(); },
          [&](const population::TruncatedNormal& m) {
            return std::clamp(m.mean + m.stddev * rng.normal(), 0.0, 1.0);
          },
          [&](const population::Bernoulli& m) {
            return rng.uniform() < m.p_win
                       ? std::min(threshold + population::Bernoulli::kMargin, 1.0)
                       : std::max(threshold - population::Bernoulli::kMargin, 0.0);
          },
      },
      model);
}

}  // namespace

void validate_population(const PopulationModel& model) {
  std::visit(overloaded{
                 [](const population::FixedScore& m) {
                   require(is_fraction(m.value), "population.value: must lie in [0,1]");
                 },
                 [](const population::Uniform& m) {
                   require(is_fraction(m.low), "population.low: must lie in [0,1]");
                   require(is_fraction(m.high), "population.high: must lie in [0,1]");
                   require(m.low <= m.high, "population.low: must not exceed population.high");
                 },
                 [](const population::TruncatedNormal& m) {
                   require(std::isfinite(m.mean), "population.mean: must be a finite number");
                   require(std::isfinite(m.stddev) && m.stddev >= 0.0,
                           "population.stddev: must be a non-negative number");
                 },
                 [](const population::Bernoulli& m) {
                   require(is_fraction(m.p_win), "population.p_win: must lie in [0,1]");
                 },
             },
             model);
}

void Scenario::validate() const {
  config.validate();
  validate_population(population);
  require(num_players >= 1, "simulation.num_players: must be a positive integer");
  require(trials >= 1, "simulation.trials: must be a positive integer");
}

Scenario Scenario::baseline(QuizCase quiz_case, std::int64_t num_players, std::int64_t trials,
                            std::uint64_t seed) {
  Scenario s;
  s.config = QuizConfig::baseline(quiz_case);
  s.population = population::Bernoulli{0.2};
  s.num_players = num_players;
  s.trials = trials;
  s.seed = seed;
  return s;
}

const char* to_string(RunEnd end) noexcept {
  switch (end) {
    case RunEnd::FloorReached: return "floor_reached";
    case RunEnd::PoolInsufficient: return "pool_insufficient";
    case RunEnd::PlayersExhausted: return "players_exhausted";
    case RunEnd::CapReached: return "cap_reached";
  }
  return "unknown";
}

Quiz simulate_quiz(const Scenario& scenario, std::uint64_t seed, RunEnd* end) {
  scenario.validate();
  Quiz quiz = Quiz::create(scenario.config);
  SimRng rng(seed);

  // Arrival order is a lazily drawn Fisher-Yates permutation of player ids.
  std::vector<std::int64_t> order(static_cast<std::size_t>(scenario.num_players));
  std::iota(order.begin(), order.end(), 0);
  const auto& cap = scenario.config.registration_cap;

  RunEnd how = RunEnd::PlayersExhausted;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (cap && quiz.state().registration_count >= *cap) {
      how = RunEnd::CapReached;
      break;
    }
    const auto j = i + static_cast<std::size_t>(rng.below(order.size() - i));
    std::swap(order[i], order[j]);
    const std::string player = "player-" + std::to_string(order[i]);

    quiz.register_player(player);
    quiz.submit_score(player, draw_score(scenario.population, quiz.state().threshold, rng));
    if (const auto& closed = quiz.state().closed) {
      how = *closed == CloseReason::FloorReached ? RunEnd::FloorReached : RunEnd::PoolInsufficient;
      break;
    }
  }
  if (end != nullptr) *end = how;
  return quiz;
}

SimReport run_simulation(const Scenario& scenario, std::uint64_t seed) {
  RunEnd end{};
  const Quiz quiz = simulate_quiz(scenario, seed, &end);

  SimReport report;
  report.seed = seed;
  report.capacity = quiz.state().schedule.capacity;
  report.registrations = quiz.state().registration_count;
  report.winners = quiz.state().next_winner_index - 1;
  report.total_payout = quiz.ledger().payouts;
  report.profit = quiz.profit();
  report.closure_reason = end;

  const Money injection = quiz.config().injection_per_registration();
  Money pool = quiz.config().ipp;
  report.min_pool = pool;
  for (const Event& event : quiz.events()) {
    if (std::holds_alternative<events::Registered>(event.kind)) {
      pool += injection;
    } else if (const auto* paid = std::get_if<events::RewardPaid>(&event.kind)) {
      pool -= paid->amount;
      report.min_pool = std::min(report.min_pool, pool);
    } else if (std::holds_alternative<events::ScoreSubmitted>(event.kind)) {
      ++report.submissions;
    } else if (const auto* update = std::get_if<events::ThresholdUpdated>(&event.kind)) {
      report.threshold_trajectory.push_back({event.seq, update->threshold});
    } else if (std::holds_alternative<events::QuizCreated>(event.kind)) {
      report.threshold_trajectory.push_back({event.seq, quiz.config().controller.base_threshold});
    }
  }
  return report;
}

Stats summarize(std::span<const double> values) {
  Stats s;
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

TrialSummary summarize(std::vector<SimReport> reports) {
  TrialSummary summary;
  const auto column = [&](auto field) {
    std::vector<double> values;
    values.reserve(reports.size());
    for (const auto& r : reports) values.push_back(field(r));
    return summarize(values);
  };
  summary.winners = column([](const SimReport& r) { return static_cast<double>(r.winners); });
  summary.registrations =
      column([](const SimReport& r) { return static_cast<double>(r.registrations); });
  summary.total_payout = column([](const SimReport& r) { return r.total_payout.to_double(); });
  summary.profit = column([](const SimReport& r) { return r.profit.to_double(); });
  summary.success_rate = column([](const SimReport& r) { return r.success_rate(); });
  summary.reports = std::move(reports);
  return summary;
}

TrialSummary run_trials_serial(const Scenario& scenario) {
  scenario.validate();
  std::vector<SimReport> reports;
  reports.reserve(static_cast<std::size_t>(scenario.trials));
  for (std::int64_t i = 0; i < scenario.trials; ++i) {
    reports.push_back(run_simulation(scenario, scenario.seed + static_cast<std::uint64_t>(i)));
  }
  return summarize(std::move(reports));
}

TrialSummary run_trials(const Scenario& scenario) {
  scenario.validate();
  std::vector<SimReport> reports(static_cast<std::size_t>(scenario.trials));
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < scenario.trials; ++i) {
    try {
      reports[static_cast<std::size_t>(i)] =
          run_simulation(scenario, scenario.seed + static_cast<std::uint64_t>(i));
    } catch (...) {
#pragma omp critical(quizreward_trial_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return summarize(std::move(reports));
}

std::int64_t empirical_max_winners(Money pool, Ratio x, Money floor) {
  if (floor.is_zero()) fail(ErrorKind::Validation, "viability floor must be positive");
  std::int64_t remaining = pool.micros();
  long double term =
      static_cast<long double>(floor_micros(static_cast<long double>(pool.micros()) * (1.0L - x.value())));
  std::int64_t paid = 0;
  for (;;) {
    const std::int64_t reward = floor_micros(term);
    if (reward <= floor.micros() || reward > remaining) break;
    remaining -= reward;
    ++paid;
    term *= x.value();
  }
  return paid;
}

}  // namespace quizreward
