#pragma once

#include <cmath>
#include <stdexcept>

namespace efpf {

// Signed log-magnitude scalar: represents sign * exp(log_mag).
//
// Allocation probabilities in this library underflow IEEE double routinely
// (three-parameter IBP joint probabilities do so by n ~ 50), so every
// probability-scale quantity travels in this form and is materialized to a
// plain double only at API edges where the value is known to be O(1).
//
// sign is exactly -1, 0, or +1; when sign == 0 the magnitude is ignored and
// the value is an exact zero. Addition of opposite-sign values with equal
// log magnitude yields the exact zero.
class LogReal {
 public:
  constexpr LogReal() noexcept : sign_(0), log_mag_(0.0) {}

  static LogReal from_value(double v) {
    if (std::isnan(v)) throw std::domain_error("LogReal: NaN value");
    if (v == 0.0) return LogReal();
    return LogReal(v > 0.0 ? +1 : -1, std::log(std::fabs(v)));
  }

  // log_mag may be any double (including +-inf for overflow/zero sentinels).
  static LogReal from_log(double log_mag, int sign = +1) {
    if (std::isnan(log_mag)) throw std::domain_error("LogReal: NaN log magnitude");
    if (sign == 0 || log_mag == -INFINITY) return LogReal();
    return LogReal(sign > 0 ? +1 : -1, log_mag);
  }

  static constexpr LogReal zero() noexcept { return LogReal(); }
  static LogReal one() noexcept { return LogReal(+1, 0.0); }

  int sign() const noexcept { return sign_; }
  bool is_zero() const noexcept { return sign_ == 0; }

  // Natural log of the value; requires a strictly positive value.
  double log() const {
    if (sign_ <= 0) throw std::domain_error("LogReal::log: value is not positive");
    return log_mag_;
  }

  // Log of |value|; -inf for zero.
  double log_abs() const noexcept { return sign_ == 0 ? -INFINITY : log_mag_; }

  // Materialize; overflows to +-inf and underflows to 0 like exp().
  double value() const noexcept {
    return sign_ == 0 ? 0.0 : static_cast<double>(sign_) * std::exp(log_mag_);
  }

  friend LogReal operator*(const LogReal& a, const LogReal& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return LogReal();
    return LogReal(a.sign_ * b.sign_, a.log_mag_ + b.log_mag_);
  }

  friend LogReal operator/(const LogReal& a, const LogReal& b) {
    if (b.sign_ == 0) throw std::domain_error("LogReal: division by zero");
    if (a.sign_ == 0) return LogReal();
    return LogReal(a.sign_ * b.sign_, a.log_mag_ - b.log_mag_);
  }

  friend LogReal operator+(const LogReal& a, const LogReal& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    if (a.sign_ == b.sign_) {
      const LogReal& hi = a.log_mag_ >= b.log_mag_ ? a : b;
      const LogReal& lo = a.log_mag_ >= b.log_mag_ ? b : a;
      return LogReal(a.sign_, hi.log_mag_ + std::log1p(std::exp(lo.log_mag_ - hi.log_mag_)));
    }
    if (a.log_mag_ == b.log_mag_) return LogReal();  // exact cancellation
    const LogReal& hi = a.log_mag_ > b.log_mag_ ? a : b;
    const LogReal& lo = a.log_mag_ > b.log_mag_ ? b : a;
    // log(1 - exp(d)), d < 0: switch forms at -ln 2 so neither end loses
    // precision. The exp form alone rounds exp(d) to 1 for |d| < 2^-53 and
    // would collapse a resolvable difference to log1p(-1) = -inf.
    const double d = lo.log_mag_ - hi.log_mag_;
    const double drop = d > -0.6931471805599453 ? std::log(-std::expm1(d))
                                                : std::log1p(-std::exp(d));
    return LogReal(hi.sign_, hi.log_mag_ + drop);
  }

  friend LogReal operator-(const LogReal& a, const LogReal& b) { return a + (-b); }

  LogReal operator-() const noexcept { return LogReal(-sign_, log_mag_); }

  LogReal& operator*=(const LogReal& o) { return *this = *this * o; }
  LogReal& operator+=(const LogReal& o) { return *this = *this + o; }

  // Integer power; 0^0 == 1 by convention, negative powers of zero are a
  // domain error.
  LogReal pow_int(long long e) const {
    if (sign_ == 0) {
      if (e > 0) return LogReal();
      if (e == 0) return one();
      throw std::domain_error("LogReal: zero to a negative power");
    }
    int s = (sign_ < 0 && (e % 2 != 0)) ? -1 : +1;
    return LogReal(s, log_mag_ * static_cast<double>(e));
  }

  // Real power; requires a nonnegative base.
  LogReal pow(double e) const {
    if (sign_ < 0) throw std::domain_error("LogReal: real power of a negative value");
    if (sign_ == 0) {
      if (e > 0) return LogReal();
      if (e == 0) return one();
      throw std::domain_error("LogReal: zero to a negative power");
    }
    return LogReal(+1, log_mag_ * e);
  }

  // Value-order comparison.
  friend bool operator==(const LogReal& a, const LogReal& b) {
    return a.sign_ == b.sign_ && (a.sign_ == 0 || a.log_mag_ == b.log_mag_);
  }
  friend bool operator<(const LogReal& a, const LogReal& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    if (a.sign_ == 0) return false;
    return a.sign_ > 0 ? a.log_mag_ < b.log_mag_ : a.log_mag_ > b.log_mag_;
  }
  friend bool operator>(const LogReal& a, const LogReal& b) { return b < a; }
  friend bool operator<=(const LogReal& a, const LogReal& b) { return !(b < a); }
  friend bool operator>=(const LogReal& a, const LogReal& b) { return !(a < b); }

 private:
  // A -inf magnitude is always the exact zero, whatever sign an arithmetic
  // path hands in; sign == 0 must remain the single zero representation.
  constexpr LogReal(int sign, double log_mag) noexcept
      : sign_(log_mag == -INFINITY ? 0 : sign), log_mag_(log_mag) {}

  int sign_;
  double log_mag_;
};

}  // namespace efpf
