#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace possec::detail {

// Per-kernel table of log(i!) values. Each entry comes from lgammal directly,
// so there is no cumulative drift; lookups make inner loops O(1).
class LogFactorialTable {
 public:
  explicit LogFactorialTable(std::int64_t max_n) : lf_(max_n + 1) {
    for (std::int64_t i = 0; i <= max_n; ++i) {
      lf_[i] = std::lgammal(static_cast<long double>(i) + 1.0L);
    }
  }

  long double log_factorial(std::int64_t i) const { return lf_[i]; }

  long double log_choose(std::int64_t n, std::int64_t k) const {
    return lf_[n] - lf_[k] - lf_[n - k];
  }

  // log Bin(p, n, k) for an in-range integer k; log_p/log_1mp precomputed.
  double log_pmf(long double log_p, long double log_1mp, std::int64_t n,
                 std::int64_t k) const {
    return static_cast<double>(log_choose(n, k) + static_cast<long double>(k) * log_p +
                               static_cast<long double>(n - k) * log_1mp);
  }

 private:
  std::vector<long double> lf_;
};

inline double log_add(double x, double y) noexcept {
  const double ninf = -std::numeric_limits<double>::infinity();
  if (x == ninf) return y;
  if (y == ninf) return x;
  const double hi = x > y ? x : y;
  const double lo = x > y ? y : x;
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace possec::detail
