#include "quizreward/engine.hpp"

#include <cmath>
#include <type_traits>
#include <utility>

#include "quizreward/error.hpp"

namespace quizreward {

const char* to_string(CloseReason reason) noexcept {
  switch (reason) {
    case CloseReason::FloorReached: return "floor_reached";
    case CloseReason::PoolInsufficient: return "pool_insufficient";
  }
  return "unknown";
}

Quiz Quiz::create(const QuizConfig& config) {
  Quiz quiz;
  quiz.emit(events::QuizCreated{config});
  return quiz;
}

Quiz Quiz::replay(std::span<const Event> log) {
  if (log.empty()) fail(ErrorKind::CorruptLog, "CorruptLog: empty log (missing seq 1)");
  Quiz quiz;
  for (const Event& event : log) {
    try {
      quiz.apply(event);
    } catch (const QuizError& e) {
      if (e.kind() == ErrorKind::CorruptLog) throw;
      fail(ErrorKind::InvalidTransition,
           "InvalidTransition at seq " + std::to_string(event.seq) + ": " + e.what());
    }
  }
  return quiz;
}

void Quiz::register_player(std::string_view player_id) {
  emit(events::Registered{std::string(player_id)});
}

Outcome Quiz::submit_score(std::string_view player_id, double score) {
  emit(events::ScoreSubmitted{std::string(player_id), score});
  const Outcome outcome = !followups_.empty() && std::holds_alternative<events::RewardPaid>(followups_.front())
                              ? Outcome::Win
                              : Outcome::Loss;
  while (!followups_.empty()) emit(EventKind(followups_.front()));
  return outcome;
}

void Quiz::emit(EventKind kind) {
  const std::int64_t seq = log_.empty() ? 1 : log_.back().seq + 1;
  apply(Event{seq, std::move(kind)});
}

void Quiz::apply(const Event& event) {
  const std::int64_t expected = log_.empty() ? 1 : log_.back().seq + 1;
  if (event.seq > expected) {
    fail(ErrorKind::CorruptLog, "CorruptLog: missing seq " + std::to_string(expected));
  }
  if (event.seq < expected) {
    fail(ErrorKind::CorruptLog, "CorruptLog: out-of-order seq " + std::to_string(event.seq) +
                                    " (expected " + std::to_string(expected) + ")");
  }
  const bool is_creation = std::holds_alternative<events::QuizCreated>(event.kind);
  if (created_ == is_creation) {
    fail(ErrorKind::InvalidTransition,
         is_creation ? "quiz already created" : "first event must be QuizCreated");
  }
  std::visit([this](const auto& e) { on(e); }, event.kind);
  log_.push_back(event);
}

bool Quiz::is_open() const noexcept { return created_ && !state_.closed; }

SignedMoney Quiz::profit() const noexcept {
  return SignedMoney{ledger_.fees_collected.micros() - ledger_.payouts.micros() -
                     ledger_.user_costs.micros() - ledger_.hosting_cost.micros()};
}

bool Quiz::same_state(const Quiz& other) const {
  return created_ == other.created_ && config_ == other.config_ && state_ == other.state_ &&
         ledger_ == other.ledger_ && open_registrations_ == other.open_registrations_ &&
         followups_ == other.followups_;
}

std::optional<CloseReason> Quiz::closure_due() const {
  const Money next = nth_reward(state_.schedule, state_.next_winner_index);
  if (next <= state_.schedule.floor) return CloseReason::FloorReached;
  if (state_.pool < next) return CloseReason::PoolInsufficient;
  return std::nullopt;
}

void Quiz::require_open(const char* action) const {
  if (state_.closed) {
    fail(ErrorKind::QuizClosed, std::string("QuizClosed: cannot ") + action + ", quiz closed (" +
                                    to_string(*state_.closed) + ")");
  }
}

void Quiz::expect_followup(const EventKind& kind, const char* name) {
  if (followups_.empty() || followups_.front() != kind) {
    fail(ErrorKind::InvalidTransition,
         std::string(name) + " does not match the effects of the preceding submission");
  }
  followups_.erase(followups_.begin());
}

void Quiz::on(const events::QuizCreated& e) {
  RewardSchedule schedule = build_schedule(e.config);  // validates the config
  config_ = e.config;
  state_ = PoolState{};
  state_.pool = config_.ipp;
  state_.schedule = schedule;
  state_.controller = ThresholdController(config_.controller);
  state_.threshold = state_.controller.threshold();
  ledger_ = Ledger{};
  ledger_.hosting_cost = config_.hosting_cost();
  created_ = true;
}

void Quiz::on(const events::Registered& e) {
  require_open("register");
  if (e.player_id.empty()) fail(ErrorKind::Validation, "player_id: must be non-empty");
  if (config_.registration_cap && state_.registration_count >= *config_.registration_cap) {
    fail(ErrorKind::CapReached,
         "CapReached: registration cap " + std::to_string(*config_.registration_cap) + " reached");
  }
  followups_.clear();
  const Money injection = config_.injection_per_registration();
  ledger_.fees_collected += config_.fee;
  ledger_.injected_to_pool += injection;
  ledger_.house_retained += config_.fee - injection;
  ledger_.user_costs += config_.user_cost();
  state_.pool += injection;
  ++state_.registration_count;
  ++open_registrations_[e.player_id];
}

void Quiz::on(const events::ScoreSubmitted& e) {
  require_open("submit a score");
  if (!(std::isfinite(e.score) && e.score >= 0.0 && e.score <= 1.0)) {
    fail(ErrorKind::Validation, "score: must lie in [0,1]");
  }
  const auto it = open_registrations_.find(e.player_id);
  if (it == open_registrations_.end()) {
    fail(ErrorKind::NotRegistered, "NotRegistered: player " + e.player_id +
                                       " has no unconsumed registration");
  }
  if (--it->second == 0) open_registrations_.erase(it);
  followups_.clear();

  // Strict: a score equal to the threshold loses.
  const bool won = e.score > state_.threshold;
  if (won) {
    // The closure check after the previous submission guarantees the pool
    // covers this reward and that it clears the floor.
    const std::int64_t index = state_.next_winner_index;
    const Money reward = nth_reward(state_.schedule, index);
    state_.pool -= reward;
    ledger_.payouts += reward;
    ++state_.next_winner_index;
    followups_.emplace_back(events::RewardPaid{e.player_id, reward, index});
  }
  if (config_.controller_enabled() &&
      state_.controller.record_outcome(won ? Outcome::Win : Outcome::Loss)) {
    state_.threshold = state_.controller.threshold();
    followups_.emplace_back(events::ThresholdUpdated{state_.threshold});
  }
  if (const auto reason = closure_due()) {
    state_.closed = *reason;
    followups_.emplace_back(events::QuizClosed{*reason});
  }
}

void Quiz::on(const events::RewardPaid& e) { expect_followup(e, "RewardPaid"); }

void Quiz::on(const events::ThresholdUpdated& e) { expect_followup(e, "ThresholdUpdated"); }

void Quiz::on(const events::QuizClosed& e) { expect_followup(e, "QuizClosed"); }

}  // namespace quizreward
