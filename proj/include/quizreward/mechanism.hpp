#pragma once

#include <cstdint>
#include <optional>

#include "quizreward/money.hpp"

namespace quizreward {

struct QuizConfig;

/// Common ratio of a geometric reward schedule, strictly inside (0, 1).
class Ratio {
 public:
  explicit Ratio(double value);
  double value() const noexcept { return value_; }
  friend bool operator==(Ratio, Ratio) = default;

 private:
  double value_;
};

/// Geometric payout contract: reward(k) = first_term * ratio^(k-1), paid while
/// it stays strictly above `floor`. `capacity` is the number of such rewards.
struct RewardSchedule {
  Money first_term;
  Ratio ratio;
  Money floor;
  std::int64_t capacity = 0;
  Money normalizing_pool;

  friend bool operator==(const RewardSchedule&, const RewardSchedule&) = default;
};

/// pool * (1 - x), rounded down: the first term whose infinite geometric sum
/// equals the pool.
Money gp_first_term(Money pool, Ratio x);

/// first_term * x^(k-1) rounded down; k starts at 1.
Money reward_term(Money first_term, Ratio x, std::int64_t k);
Money nth_reward(const RewardSchedule& schedule, std::int64_t k);

/// Sum of the first n unrounded terms, rounded down once at the end.
Money schedule_sum(const RewardSchedule& schedule, std::int64_t n);

/// Largest n with reward(n) > floor for the schedule normalized on `pool`.
/// Closed form ceil(ln(a/floor) / -ln x), then corrected by direct evaluation
/// of the rounded terms on either side of the boundary.
std::int64_t max_winners(Money pool, Ratio x, Money floor);

struct OptimalRatio {
  Ratio ratio;                    // smallest grid x attaining `capacity`
  std::int64_t capacity = 0;
  double plateau_low = 0.0;       // grid extent of points sharing `capacity`
  double plateau_high = 0.0;
  std::int64_t plateau_points = 0;
};

/// Grid search for the ratio maximizing capacity. Returns nullopt when no grid
/// point yields a viable schedule. The OpenMP version and the serial reference
/// return identical results.
std::optional<OptimalRatio> optimal_ratio(Money pool, Money floor, double grid_step);
std::optional<OptimalRatio> optimal_ratio_serial(Money pool, Money floor, double grid_step);

/// Schedule for a validated config, normalized on its initial pool. Throws
/// NoViableSchedule when the capacity is zero.
RewardSchedule build_schedule(const QuizConfig& config);

}  // namespace quizreward
