#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

namespace possec {

/// Probability carried as its natural logarithm.
///
/// Zero probability is an explicit sentinel state: no arithmetic ever runs
/// on a -inf log value, so recursions cannot produce NaN through 0*inf
/// patterns. Values are immutable apart from the compound operators and safe
/// to share across threads.
class LogProb {
 public:
  /// Default-constructs the zero probability.
  constexpr LogProb() noexcept = default;

  static constexpr LogProb zero() noexcept { return LogProb{}; }
  static constexpr LogProb one() noexcept { return LogProb{0.0, FromLogTag{}}; }

  /// Wraps a natural-log value. Rounding overshoot up to 1e-12 above log(1)
  /// is clamped to exactly 1; anything larger is rejected.
  static LogProb from_log(double log_value) {
    if (std::isnan(log_value)) {
      throw std::invalid_argument("LogProb: log value is NaN");
    }
    if (log_value > 0.0) {
      if (log_value > kOvershootTolerance) {
        throw std::domain_error("LogProb: log value exceeds log(1) beyond rounding tolerance");
      }
      log_value = 0.0;
    }
    if (log_value == -std::numeric_limits<double>::infinity()) return zero();
    return LogProb{log_value, FromLogTag{}};
  }

  static LogProb from_linear(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("LogProb: linear probability must lie in [0, 1]");
    }
    if (p == 0.0) return zero();
    return LogProb{std::log(p), FromLogTag{}};
  }

  bool is_zero() const noexcept { return zero_; }

  /// Natural-log value; -infinity for the zero probability.
  double log() const noexcept {
    return zero_ ? -std::numeric_limits<double>::infinity() : log_;
  }

  double log10() const noexcept { return log() / kLn10; }

  double linear() const noexcept { return zero_ ? 0.0 : std::exp(log_); }

  /// Product of probabilities: plain addition of log values.
  LogProb operator*(LogProb rhs) const noexcept {
    if (zero_ || rhs.zero_) return zero();
    return LogProb{log_ + rhs.log_, FromLogTag{}};
  }

  LogProb& operator*=(LogProb rhs) noexcept { return *this = *this * rhs; }

  /// Sum of probabilities via stable two-term log-add. The result may not
  /// exceed 1 beyond rounding tolerance; use log_sum_exp for long sums.
  LogProb operator+(LogProb rhs) const {
    if (zero_) return rhs;
    if (rhs.zero_) return *this;
    const double hi = std::max(log_, rhs.log_);
    const double lo = std::min(log_, rhs.log_);
    return from_log(hi + std::log1p(std::exp(lo - hi)));
  }

  LogProb& operator+=(LogProb rhs) { return *this = *this + rhs; }

  /// p^k. Defined for k >= 0; 0^0 is 1 by convention.
  LogProb pow(double exponent) const {
    if (exponent < 0.0) throw std::invalid_argument("LogProb::pow: negative exponent");
    if (exponent == 0.0) return one();
    if (zero_) return zero();
    return from_log(log_ * exponent);
  }

  friend bool operator==(LogProb a, LogProb b) noexcept {
    if (a.zero_ || b.zero_) return a.zero_ == b.zero_;
    return a.log_ == b.log_;
  }

  friend bool operator<(LogProb a, LogProb b) noexcept { return a.log() < b.log(); }
  friend bool operator>(LogProb a, LogProb b) noexcept { return b < a; }
  friend bool operator<=(LogProb a, LogProb b) noexcept { return !(b < a); }
  friend bool operator>=(LogProb a, LogProb b) noexcept { return !(a < b); }

 private:
  struct FromLogTag {};
  constexpr LogProb(double lv, FromLogTag) noexcept : log_(lv), zero_(false) {}

  static constexpr double kOvershootTolerance = 1e-12;
  static constexpr double kLn10 = 2.302585092994045684;

  double log_ = 0.0;
  bool zero_ = true;
};

/// Max-shift log-sum-exp over the whole term list. -infinity entries stand
/// for zero probability and drop out; an all-zero (or empty) list returns
/// -infinity. The result is unclamped, so normalization checks can see
/// totals slightly above 1.
inline double log_sum_exp(std::span<const double> log_terms) noexcept {
  double hi = -std::numeric_limits<double>::infinity();
  for (double t : log_terms) {
    if (t > hi) hi = t;
  }
  if (!(hi > -std::numeric_limits<double>::infinity())) return hi;
  double acc = 0.0;
  for (double t : log_terms) {
    if (t > -std::numeric_limits<double>::infinity()) acc += std::exp(t - hi);
  }
  return hi + std::log(acc);
}

}  // namespace possec
