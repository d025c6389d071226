#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "quizreward/config.hpp"
#include "quizreward/mechanism.hpp"
#include "quizreward/money.hpp"
#include "quizreward/threshold.hpp"

namespace quizreward {

enum class CloseReason { FloorReached, PoolInsufficient };

const char* to_string(CloseReason reason) noexcept;

namespace events {

struct QuizCreated {
  QuizConfig config;
  friend bool operator==(const QuizCreated&, const QuizCreated&) = default;
};
struct Registered {
  std::string player_id;
  friend bool operator==(const Registered&, const Registered&) = default;
};
struct ScoreSubmitted {
  std::string player_id;
  double score = 0.0;
  friend bool operator==(const ScoreSubmitted&, const ScoreSubmitted&) = default;
};
struct RewardPaid {
  std::string player_id;
  Money amount;
  std::int64_t winner_index = 0;
  friend bool operator==(const RewardPaid&, const RewardPaid&) = default;
};
struct ThresholdUpdated {
  double threshold = 0.0;
  friend bool operator==(const ThresholdUpdated&, const ThresholdUpdated&) = default;
};
struct QuizClosed {
  CloseReason reason = CloseReason::FloorReached;
  friend bool operator==(const QuizClosed&, const QuizClosed&) = default;
};

}  // namespace events

using EventKind = std::variant<events::QuizCreated, events::Registered, events::ScoreSubmitted,
                               events::RewardPaid, events::ThresholdUpdated, events::QuizClosed>;

struct Event {
  std::int64_t seq = 0;
  EventKind kind;
  friend bool operator==(const Event&, const Event&) = default;
};

struct Ledger {
  Money fees_collected;
  Money house_retained;
  Money injected_to_pool;
  Money payouts;
  Money user_costs;
  Money hosting_cost;
  friend bool operator==(const Ledger&, const Ledger&) = default;
};

struct PoolState {
  Money pool;
  RewardSchedule schedule{Money{}, Ratio(0.5), Money{}, 0, Money{}};
  std::int64_t next_winner_index = 1;
  double threshold = 0.0;
  std::optional<CloseReason> closed;   // nullopt while open
  ThresholdController controller;
  std::int64_t registration_count = 0;
  friend bool operator==(const PoolState&, const PoolState&) = default;
};

/// Event-sourced state machine for one quiz. Every mutation goes through
/// apply(), so a command and a replay of its events produce identical state.
///
/// ScoreSubmitted is the event that settles a submission: applying it pays the
/// reward, feeds the controller and closes the quiz when the next reward is no
/// longer viable. The RewardPaid / ThresholdUpdated / QuizClosed events that
/// follow it record those effects; on replay each must match what the
/// submission produced, in order, or the log is rejected. Logs that omit them
/// still replay to the same state.
///
/// Single-threaded: callers serialize access per quiz.
class Quiz {
 public:
  static Quiz create(const QuizConfig& config);
  static Quiz replay(std::span<const Event> log);

  void register_player(std::string_view player_id);
  Outcome submit_score(std::string_view player_id, double score);

  /// Applies one event; seq must continue the log without gaps.
  void apply(const Event& event);

  bool is_open() const noexcept;
  SignedMoney profit() const noexcept;

  const QuizConfig& config() const noexcept { return config_; }
  const PoolState& state() const noexcept { return state_; }
  const Ledger& ledger() const noexcept { return ledger_; }
  const std::vector<Event>& events() const noexcept { return log_; }
  /// Registrations not yet consumed by a submission, keyed by player.
  const std::map<std::string, std::int64_t, std::less<>>& open_registrations() const noexcept {
    return open_registrations_;
  }

  /// Compares everything except the event log itself.
  bool same_state(const Quiz& other) const;

 private:
  Quiz() = default;

  void emit(EventKind kind);
  std::optional<CloseReason> closure_due() const;
  void require_open(const char* action) const;
  void expect_followup(const EventKind& kind, const char* name);

  void on(const events::QuizCreated& e);
  void on(const events::Registered& e);
  void on(const events::ScoreSubmitted& e);
  void on(const events::RewardPaid& e);
  void on(const events::ThresholdUpdated& e);
  void on(const events::QuizClosed& e);

  bool created_ = false;
  QuizConfig config_{};
  PoolState state_{};
  Ledger ledger_{};
  std::map<std::string, std::int64_t, std::less<>> open_registrations_;
  // Effects of the last submission not yet recorded in the log.
  std::vector<EventKind> followups_;
  std::vector<Event> log_;
};

}  // namespace quizreward
