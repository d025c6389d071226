#pragma once

#include <cstdint>
#include <vector>

namespace quizreward {

/// Tuning for the adaptive winning-score threshold. All quantities are
/// fractions in [0, 1]; `gain` is threshold units per unit of success-rate
/// deviation (0.10 corresponds to ten percentage points at full deviation).
struct ControllerSettings {
  double base_threshold = 0.70;
  double gain = 0.10;
  double target_success = 0.20;
  std::int64_t window = 5;
  double min_threshold = 0.60;
  double max_threshold = 0.95;

  /// Throws ValidationError naming the offending field (prefixed by `path`).
  void validate(const char* path = "controller") const;

  friend bool operator==(const ControllerSettings&, const ControllerSettings&) = default;
};

enum class Outcome : std::uint8_t { Loss, Win };

/// Tumbling-window threshold controller. Outcomes accumulate until `window`
/// of them are pending; the window then flushes, its success rate s = wins/W
/// moves the threshold to clamp(base + gain * (s - target), min, max), and a
/// fresh window starts. Each update is computed from the base threshold, not
/// from the previous value, so updates never compound.
class ThresholdController {
 public:
  ThresholdController() = default;
  explicit ThresholdController(const ControllerSettings& settings);

  /// Returns true when this outcome completed a window and the threshold was
  /// recomputed.
  bool record_outcome(Outcome outcome);

  /// Recomputes and stores the threshold for window success rate `s`.
  double update_threshold(double success_rate);

  double threshold() const noexcept { return threshold_; }
  const ControllerSettings& settings() const noexcept { return settings_; }
  const std::vector<Outcome>& pending() const noexcept { return pending_; }
  std::int64_t update_count() const noexcept { return updates_; }

  friend bool operator==(const ThresholdController&, const ThresholdController&) = default;

 private:
  ControllerSettings settings_{};
  double threshold_ = settings_.base_threshold;
  std::vector<Outcome> pending_;
  std::int64_t updates_ = 0;
};

}  // namespace quizreward
