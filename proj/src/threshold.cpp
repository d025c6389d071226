#include "quizreward/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quizreward/error.hpp"

namespace quizreward {

namespace {

void require(bool ok, const char* path, const char* field, const char* constraint) {
  if (!ok) {
    fail(ErrorKind::Validation, std::string(path) + "." + field + ": " + constraint);
  }
}

bool is_fraction(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

}  // namespace

void ControllerSettings::validate(const char* path) const {
  require(std::isfinite(base_threshold) && base_threshold > 0.0 && base_threshold <= 1.0, path,
          "t0", "must lie in (0,1]");
  require(std::isfinite(gain) && gain >= 0.0, path, "sf", "must be a non-negative number");
  require(is_fraction(target_success), path, "s_target", "must lie in [0,1]");
  require(window >= 1, path, "window", "must be a positive integer");
  require(is_fraction(min_threshold), path, "t_min", "must lie in [0,1]");
  require(is_fraction(max_threshold), path, "t_max", "must lie in [0,1]");
  require(min_threshold <= base_threshold && base_threshold <= max_threshold, path, "t0",
          "must satisfy t_min <= t0 <= t_max");
}

ThresholdController::ThresholdController(const ControllerSettings& settings)
    : settings_(settings), threshold_(settings.base_threshold) {
  settings_.validate();
  pending_.reserve(static_cast<std::size_t>(settings_.window));
}

bool ThresholdController::record_outcome(Outcome outcome) {
  pending_.push_back(outcome);
  if (static_cast<std::int64_t>(pending_.size()) < settings_.window) return false;
  const auto wins = std::count(pending_.begin(), pending_.end(), Outcome::Win);
  pending_.clear();
  update_threshold(static_cast<double>(wins) / static_cast<double>(settings_.window));
  return true;
}

double ThresholdController::update_threshold(double success_rate) {
  if (!is_fraction(success_rate)) {
    fail(ErrorKind::Validation, "success rate must lie in [0,1]");
  }
  const double raw =
      settings_.base_threshold + settings_.gain * (success_rate - settings_.target_success);
  threshold_ = std::clamp(raw, settings_.min_threshold, settings_.max_threshold);
  ++updates_;
  return threshold_;
}

}  // namespace quizreward
