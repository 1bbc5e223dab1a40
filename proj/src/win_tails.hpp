#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "possec/core.hpp"

namespace possec::detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log Pr[Bin(n, p) >= k0]. Terms are summed relative to the boundary term
// with the pmf ratio recurrence; truncation stops once a term falls below
// 1e-18 of the running sum, which keeps the result exact at double
// precision. Below the mode the complement of the lower tail is used so the
// relative accumulation never grows.
inline double log_binomial_upper_tail(double p, std::int64_t n, std::int64_t k0) {
  if (k0 <= 0) return 0.0;
  if (k0 > n) return kNegInf;
  if (p <= 0.0) return kNegInf;
  if (p >= 1.0) return 0.0;

  const double odds = p / (1.0 - p);
  if (static_cast<double>(k0) > p * static_cast<double>(n + 1)) {
    // Above the mode: ascending sum with decreasing terms.
    const double lt0 = log_binomial_pmf(p, n, static_cast<double>(k0)).log();
    double term = 1.0;
    double acc = 1.0;
    for (std::int64_t k = k0; k < n; ++k) {
      term *= static_cast<double>(n - k) / static_cast<double>(k + 1) * odds;
      acc += term;
      if (term < acc * 1e-18) break;
    }
    return lt0 + std::log(acc);
  }

  // At or below the mode: 1 - Pr[Bin <= k0 - 1], descending sum.
  const double lt0 = log_binomial_pmf(p, n, static_cast<double>(k0 - 1)).log();
  double term = 1.0;
  double acc = 1.0;
  for (std::int64_t k = k0 - 1; k >= 1; --k) {
    term *= static_cast<double>(k) / static_cast<double>(n - k + 1) / odds;
    acc += term;
    if (term < acc * 1e-18) break;
  }
  const double log_lower = lt0 + std::log(acc);
  if (log_lower >= 0.0) return kNegInf;
  const double upper = -std::expm1(log_lower);
  return upper > 0.0 ? std::log(upper) : kNegInf;
}

// log P_SSLE(q, m): the Theorem-1 collapse of the win probability into two
// binomial tails, Pr[X >= ceil(m/2)] + Pr[X >= floor(m/2) + 1] for
// X ~ Bin(m, q).
inline double log_win_ssle_collapsed(double q, std::int64_t m) {
  if (m == 0) return 0.0;
  const double t1 = log_binomial_upper_tail(q, m, (m + 1) / 2);
  const double t2 = log_binomial_upper_tail(q, m, m / 2 + 1);
  if (t1 == kNegInf) return t2;
  if (t2 == kNegInf) return t1;
  const double hi = t1 > t2 ? t1 : t2;
  const double lo = t1 > t2 ? t2 : t1;
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace possec::detail
