#pragma once

#include <cstdint>
#include <optional>

#include "quizreward/mechanism.hpp"
#include "quizreward/money.hpp"
#include "quizreward/threshold.hpp"

namespace quizreward {

/// Case1: the house keeps the whole fee and the pool only shrinks.
/// Case2: a share (1 - cp) of every fee is injected into the pool.
/// Case3: Case2 plus the adaptive threshold controller.
enum class QuizCase : int { Case1 = 1, Case2 = 2, Case3 = 3 };

const char* to_string(QuizCase c) noexcept;

struct QuizConfig {
  Money ipp;                    // initial prize pool, funded by the house
  Money fee;                    // registration fee per attempt
  double cp = 1.0;              // share of each fee retained by the house
  Ratio ratio{0.9695};
  QuizCase quiz_case = QuizCase::Case1;
  ControllerSettings controller{};
  double user_cost_pct = 0.001;     // per-registration cost as a share of ipp
  double hosting_cost_pct = 0.05;   // one-off hosting cost as a share of ipp
  std::optional<Money> user_cost_override;
  std::optional<Money> hosting_cost_override;
  std::optional<std::int64_t> registration_cap;

  Money user_cost() const;
  Money hosting_cost() const;
  /// Amount the next reward must strictly exceed: f in Case 1, cp*f otherwise.
  Money viability_floor() const;
  Money injection_per_registration() const;
  bool controller_enabled() const noexcept { return quiz_case == QuizCase::Case3; }

  void validate() const;

  /// ipp = 100, f = 1, x = 0.9695; cp = 1 for Case 1 and 0.75 otherwise.
  static QuizConfig baseline(QuizCase c);

  friend bool operator==(const QuizConfig&, const QuizConfig&) = default;
};

}  // namespace quizreward
