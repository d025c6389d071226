#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace quizreward {

inline constexpr std::int64_t kMicrosPerUnit = 1'000'000;

/// Non-negative currency amount in integer micro-units (1e-6 of one unit).
/// Arithmetic is exact; subtraction that would go below zero throws.
class Money {
 public:
  constexpr Money() = default;

  static Money from_micros(std::int64_t micros);
  static Money units(std::int64_t whole) { return from_micros(whole * kMicrosPerUnit); }

  constexpr std::int64_t micros() const noexcept { return micros_; }
  double to_double() const noexcept {
    return static_cast<double>(micros_) / static_cast<double>(kMicrosPerUnit);
  }
  std::string to_decimal() const;
  bool is_zero() const noexcept { return micros_ == 0; }

  Money& operator+=(Money other);
  Money& operator-=(Money other);
  friend Money operator+(Money a, Money b) { return a += b; }
  friend Money operator-(Money a, Money b) { return a -= b; }
  friend Money operator*(Money a, std::int64_t times);

  friend constexpr auto operator<=>(Money, Money) = default;
  friend constexpr bool operator==(Money, Money) = default;

 private:
  constexpr explicit Money(std::int64_t micros) : micros_(micros) {}
  std::int64_t micros_ = 0;
};

/// Signed amount, used only for profit.
struct SignedMoney {
  std::int64_t micros = 0;

  double to_double() const noexcept {
    return static_cast<double>(micros) / static_cast<double>(kMicrosPerUnit);
  }
  std::string to_decimal() const;

  friend constexpr auto operator<=>(SignedMoney, SignedMoney) = default;
};

/// Parses "12", "12.5", "0.000001". At most six fractional digits; no sign,
/// exponent, or whitespace.
Money parse_money(std::string_view text);

/// Rounds a micro-unit quantity down to an integer micro-unit. Values lying
/// within floating-point noise below an integer snap up to it, so that
/// 1e8 * (1 - 0.9695) yields 3050000 rather than 3049999.
std::int64_t floor_micros(long double micros);

}  // namespace quizreward
