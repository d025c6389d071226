#pragma once

#include <stdexcept>
#include <string>

namespace quizreward {

enum class ErrorKind {
  Validation,
  NoViableSchedule,
  QuizClosed,
  CapReached,
  NotRegistered,
  CorruptLog,
  InvalidTransition,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (and the CLI
/// exit-code mapping) can dispatch without parsing messages.
class QuizError : public std::runtime_error {
 public:
  QuizError(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw QuizError(kind, message);
}

}  // namespace quizreward
