#include "quizreward/config.hpp"

#include <cmath>
#include <string>

#include "quizreward/error.hpp"

namespace quizreward {

const char* to_string(QuizCase c) noexcept {
  switch (c) {
    case QuizCase::Case1: return "Case1";
    case QuizCase::Case2: return "Case2";
    case QuizCase::Case3: return "Case3";
  }
  return "Unknown";
}

namespace {

Money share_of(Money amount, double share) {
  return Money::from_micros(floor_micros(static_cast<long double>(amount.micros()) * share));
}

void require(bool ok, const std::string& message) {
  if (!ok) fail(ErrorKind::Validation, message);
}

}  // namespace

Money QuizConfig::user_cost() const {
  return user_cost_override ? *user_cost_override : share_of(ipp, user_cost_pct);
}

Money QuizConfig::hosting_cost() const {
  return hosting_cost_override ? *hosting_cost_override : share_of(ipp, hosting_cost_pct);
}

Money QuizConfig::viability_floor() const {
  return quiz_case == QuizCase::Case1 ? fee : share_of(fee, cp);
}

Money QuizConfig::injection_per_registration() const { return fee - share_of(fee, cp); }

void QuizConfig::validate() const {
  require(ipp.micros() > 0, "config.ipp: must be positive");
  require(fee.micros() > 0, "config.fee: must be positive");
  require(std::isfinite(cp) && cp > 0.0 && cp <= 1.0, "config.cp: must lie in (0,1]");
  if (quiz_case == QuizCase::Case1) {
    require(cp == 1.0, "config.cp: Case1 requires cp = 1 (the house keeps the entire fee)");
  } else {
    require(cp < 1.0, std::string("config.cp: ") + to_string(quiz_case) +
                          " requires cp < 1 (part of each fee feeds the pool)");
  }
  require(std::isfinite(user_cost_pct) && user_cost_pct >= 0.0,
          "config.user_cost_pct: must be a non-negative number");
  require(std::isfinite(hosting_cost_pct) && hosting_cost_pct >= 0.0,
          "config.hosting_cost_pct: must be a non-negative number");
  require(!registration_cap || *registration_cap >= 1,
          "config.registration_cap: must be a positive integer");
  require(!viability_floor().is_zero(), "config.fee: cp*fee rounds to zero micro-units");
  controller.validate("config.controller");
}

QuizConfig QuizConfig::baseline(QuizCase c) {
  QuizConfig config;
  config.ipp = Money::units(100);
  config.fee = Money::units(1);
  config.cp = c == QuizCase::Case1 ? 1.0 : 0.75;
  config.quiz_case = c;
  return config;
}

}  // namespace quizreward
