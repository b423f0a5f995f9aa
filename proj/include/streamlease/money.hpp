#pragma once

#include <cctype>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace streamlease {

/// Fixed-point money in integer cents. All lease arithmetic stays exact;
/// doubles appear only in the dimensionless objective terms.
class Money {
 public:
  constexpr Money() = default;

  static constexpr Money from_cents(std::int64_t cents) {
    Money m;
    m.cents_ = cents;
    return m;
  }

  /// Parses a decimal amount such as "12", "-0.5" or "10.25". At most two
  /// fractional digits are accepted; anything else is rejected.
  static Money from_string(const std::string& text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
      negative = text[i] == '-';
      ++i;
    }
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw std::invalid_argument("invalid money amount: '" + text + "'");
    }
    std::int64_t units = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      units = units * 10 + (text[i] - '0');
      ++i;
    }
    std::int64_t frac = 0;
    if (i < text.size() && text[i] == '.') {
      ++i;
      std::size_t digits = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        frac = frac * 10 + (text[i] - '0');
        ++digits;
        ++i;
      }
      if (digits == 0 || digits > 2) {
        throw std::invalid_argument("money amounts take at most two fractional digits: '" +
                                    text + "'");
      }
      if (digits == 1) {
        frac *= 10;
      }
    }
    if (i != text.size()) {
      throw std::invalid_argument("invalid money amount: '" + text + "'");
    }
    std::int64_t cents = units * 100 + frac;
    return from_cents(negative ? -cents : cents);
  }

  constexpr std::int64_t cents() const { return cents_; }
  constexpr double dollars() const { return static_cast<double>(cents_) / 100.0; }

  /// Decimal rendering with exactly two fractional digits, e.g. "4.90".
  std::string str() const {
    std::int64_t c = cents_ < 0 ? -cents_ : cents_;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%lld.%02lld", cents_ < 0 ? "-" : "",
                  static_cast<long long>(c / 100), static_cast<long long>(c % 100));
    return buf;
  }

  constexpr Money operator-() const { return from_cents(-cents_); }
  constexpr Money& operator+=(Money other) {
    cents_ += other.cents_;
    return *this;
  }
  constexpr Money& operator-=(Money other) {
    cents_ -= other.cents_;
    return *this;
  }

  friend constexpr Money operator+(Money a, Money b) { return from_cents(a.cents_ + b.cents_); }
  friend constexpr Money operator-(Money a, Money b) { return from_cents(a.cents_ - b.cents_); }
  friend constexpr Money operator*(Money a, std::int64_t n) { return from_cents(a.cents_ * n); }
  friend constexpr Money operator*(std::int64_t n, Money a) { return a * n; }

  constexpr auto operator<=>(const Money&) const = default;

 private:
  std::int64_t cents_ = 0;
};

/// Dimensionless quotient of two amounts (used by the objective terms).
inline double money_ratio(Money numerator, Money denominator) {
  return static_cast<double>(numerator.cents()) / static_cast<double>(denominator.cents());
}

/// A per-unit rate applied to a real-valued quantity, rounded to the
/// nearest cent.
inline Money money_scale(Money unit, double quantity) {
  return Money::from_cents(std::llround(static_cast<double>(unit.cents()) * quantity));
}

}  // namespace streamlease
