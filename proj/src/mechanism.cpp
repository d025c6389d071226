#include "quizreward/mechanism.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "quizreward/config.hpp"
#include "quizreward/error.hpp"

namespace quizreward {

Ratio::Ratio(double value) : value_(value) {
  if (!(std::isfinite(value) && value > 0.0 && value < 1.0)) {
    fail(ErrorKind::Validation, "ratio must lie strictly inside (0,1), got " + std::to_string(value));
  }
}

Money gp_first_term(Money pool, Ratio x) {
  const long double a = static_cast<long double>(pool.micros()) * (1.0L - x.value());
  return Money::from_micros(floor_micros(a));
}

Money reward_term(Money first_term, Ratio x, std::int64_t k) {
  if (k < 1) fail(ErrorKind::Validation, "reward index must be >= 1, got " + std::to_string(k));
  const long double term = static_cast<long double>(first_term.micros()) *
                           std::pow(static_cast<long double>(x.value()), static_cast<long double>(k - 1));
  return Money::from_micros(floor_micros(term));
}

Money nth_reward(const RewardSchedule& schedule, std::int64_t k) {
  return reward_term(schedule.first_term, schedule.ratio, k);
}

Money schedule_sum(const RewardSchedule& schedule, std::int64_t n) {
  if (n <= 0) return Money{};
  const long double x = schedule.ratio.value();
  const long double a = static_cast<long double>(schedule.first_term.micros());
  const long double sum = a * (1.0L - std::pow(x, static_cast<long double>(n))) / (1.0L - x);
  const auto micros = floor_micros(sum);
  // The snap in floor_micros may nudge the n -> infinity limit a hair above the
  // normalizing pool; the pool is the hard bound.
  return Money::from_micros(std::min(micros, schedule.normalizing_pool.micros()));
}

std::int64_t max_winners(Money pool, Ratio x, Money floor) {
  if (floor.is_zero()) {
    fail(ErrorKind::Validation, "viability floor must be positive (capacity would be infinite)");
  }
  const Money a = gp_first_term(pool, x);
  if (a <= floor) return 0;

  const long double q = std::log(static_cast<long double>(a.micros()) / floor.micros()) /
                        -std::log(static_cast<long double>(x.value()));
  auto n = static_cast<std::int64_t>(std::ceil(q));
  if (n < 1) n = 1;
  while (n > 1 && reward_term(a, x, n) <= floor) --n;
  while (reward_term(a, x, n + 1) > floor) ++n;
  return n;
}

namespace {

struct Grid {
  std::int64_t points = 0;
  std::int64_t denominator = 0;  // > 0 when x_i = i / denominator exactly
  double step = 0.0;

  double at(std::int64_t i) const {
    return denominator > 0 ? static_cast<double>(i) / static_cast<double>(denominator)
                           : static_cast<double>(i) * step;
  }
};

Grid make_grid(Money floor, double grid_step) {
  if (!(std::isfinite(grid_step) && grid_step > 0.0 && grid_step <= 1e-3)) {
    fail(ErrorKind::Validation, "grid_step must lie in (0, 1e-3]");
  }
  if (floor.is_zero()) fail(ErrorKind::Validation, "viability floor must be positive");
  Grid grid;
  grid.step = grid_step;
  const double inverse = 1.0 / grid_step;
  const double rounded = std::round(inverse);
  if (std::abs(inverse - rounded) < 1e-9 * inverse) {
    grid.denominator = static_cast<std::int64_t>(rounded);
    grid.points = grid.denominator - 1;
  } else {
    grid.points = static_cast<std::int64_t>(std::ceil(inverse)) - 1;
    while (grid.points > 0 && grid.at(grid.points) >= 1.0) --grid.points;
  }
  return grid;
}

std::int64_t capacity_at(const Grid& grid, std::int64_t index, Money pool, Money floor) {
  const double x = grid.at(index);
  if (!(x > 0.0 && x < 1.0)) return 0;
  return max_winners(pool, Ratio(x), floor);
}

std::optional<OptimalRatio> reduce(const Grid& grid, const std::vector<std::int64_t>& capacity) {
  std::int64_t best = 0;
  for (auto n : capacity) best = std::max(best, n);
  if (best == 0) return std::nullopt;

  std::int64_t first = -1;
  std::int64_t last = -1;
  std::int64_t count = 0;
  for (std::size_t i = 0; i < capacity.size(); ++i) {
    if (capacity[i] != best) continue;
    if (first < 0) first = static_cast<std::int64_t>(i);
    last = static_cast<std::int64_t>(i);
    ++count;
  }
  return OptimalRatio{Ratio(grid.at(first + 1)), best, grid.at(first + 1), grid.at(last + 1), count};
}

}  // namespace

std::optional<OptimalRatio> optimal_ratio_serial(Money pool, Money floor, double grid_step) {
  const Grid grid = make_grid(floor, grid_step);
  if (pool <= floor) return std::nullopt;
  std::vector<std::int64_t> capacity(static_cast<std::size_t>(grid.points));
  for (std::int64_t i = 0; i < grid.points; ++i) {
    capacity[static_cast<std::size_t>(i)] = capacity_at(grid, i + 1, pool, floor);
  }
  return reduce(grid, capacity);
}

std::optional<OptimalRatio> optimal_ratio(Money pool, Money floor, double grid_step) {
  const Grid grid = make_grid(floor, grid_step);
  if (pool <= floor) return std::nullopt;
  std::vector<std::int64_t> capacity(static_cast<std::size_t>(grid.points));
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < grid.points; ++i) {
    capacity[static_cast<std::size_t>(i)] = capacity_at(grid, i + 1, pool, floor);
  }
  return reduce(grid, capacity);
}

RewardSchedule build_schedule(const QuizConfig& config) {
  config.validate();
  const Money floor = config.viability_floor();
  RewardSchedule schedule{gp_first_term(config.ipp, config.ratio), config.ratio, floor,
                          max_winners(config.ipp, config.ratio, floor), config.ipp};
  if (schedule.capacity == 0) {
    fail(ErrorKind::NoViableSchedule,
         "no viable schedule: first reward " + schedule.first_term.to_decimal() +
             " does not exceed the floor " + floor.to_decimal());
  }
  return schedule;
}

}  // namespace quizreward
