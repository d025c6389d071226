#include "quizreward/money.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quizreward/error.hpp"

namespace quizreward {

namespace {

std::string format_micros(std::int64_t micros) {
  const bool negative = micros < 0;
  // Magnitude via unsigned to survive INT64_MIN.
  const std::uint64_t magnitude =
      negative ? 0 - static_cast<std::uint64_t>(micros) : static_cast<std::uint64_t>(micros);
  const std::uint64_t whole = magnitude / kMicrosPerUnit;
  const std::uint64_t frac = magnitude % kMicrosPerUnit;
  std::string frac_digits = std::to_string(frac);
  frac_digits.insert(0, 6 - frac_digits.size(), '0');
  return (negative ? "-" : "") + std::to_string(whole) + "." + frac_digits;
}

}  // namespace

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::NoViableSchedule: return "NoViableSchedule";
    case ErrorKind::QuizClosed: return "QuizClosed";
    case ErrorKind::CapReached: return "CapReached";
    case ErrorKind::NotRegistered: return "NotRegistered";
    case ErrorKind::CorruptLog: return "CorruptLog";
    case ErrorKind::InvalidTransition: return "InvalidTransition";
  }
  return "UnknownError";
}

Money Money::from_micros(std::int64_t micros) {
  if (micros < 0) {
    fail(ErrorKind::Validation, "money must be non-negative, got " + format_micros(micros));
  }
  return Money(micros);
}

std::string Money::to_decimal() const { return format_micros(micros_); }

Money& Money::operator+=(Money other) {
  if (other.micros_ > std::numeric_limits<std::int64_t>::max() - micros_) {
    fail(ErrorKind::Validation, "money overflow");
  }
  micros_ += other.micros_;
  return *this;
}

Money& Money::operator-=(Money other) {
  if (other.micros_ > micros_) {
    fail(ErrorKind::Validation,
         "money underflow: " + to_decimal() + " - " + other.to_decimal());
  }
  micros_ -= other.micros_;
  return *this;
}

Money operator*(Money a, std::int64_t times) {
  if (times < 0) fail(ErrorKind::Validation, "money scaled by a negative count");
  if (times != 0 && a.micros_ > std::numeric_limits<std::int64_t>::max() / times) {
    fail(ErrorKind::Validation, "money overflow");
  }
  return Money(a.micros_ * times);
}

std::string SignedMoney::to_decimal() const { return format_micros(micros); }

Money parse_money(std::string_view text) {
  const auto bad = [&](const char* why) -> Money {
    fail(ErrorKind::Validation, "invalid money \"" + std::string(text) + "\": " + why);
  };
  if (text.empty()) return bad("empty");
  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty()) return bad("missing integer part");
  if (dot != std::string_view::npos && frac.empty()) return bad("missing fractional digits");
  if (frac.size() > 6) return bad("more than 6 fractional digits");
  const auto all_digits = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!all_digits(whole) || !all_digits(frac)) return bad("expected digits");
  if (whole.size() > 12) return bad("too large");

  std::int64_t micros = 0;
  for (char c : whole) micros = micros * 10 + (c - '0');
  micros *= kMicrosPerUnit;
  std::int64_t scale = kMicrosPerUnit;
  for (char c : frac) {
    scale /= 10;
    micros += (c - '0') * scale;
  }
  return Money::from_micros(micros);
}

std::int64_t floor_micros(long double micros) {
  if (!(micros >= 0)) return 0;  // also maps NaN to zero
  const long double snap = std::min(micros * 1e-13L, 1e-4L);
  return static_cast<std::int64_t>(std::floor(micros + snap));
}

}  // namespace quizreward
