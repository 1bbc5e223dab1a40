#include "possec/grinding.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "binomial_table.hpp"

namespace possec {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_grinding_kind(GameKind kind) {
  if (kind != GameKind::ssle && kind != GameKind::ple) {
    throw std::invalid_argument("grinding games exist for ssle and ple only");
  }
}

struct DualRows {
  std::vector<double> log_a;  // log a_{i,j}
  std::vector<double> log_c;  // log (1 - a_{i,j})
};

DualRows initial_row(std::int64_t cols) {
  DualRows r;
  r.log_a.assign(cols, 0.0);
  r.log_c.assign(cols, kNegInf);
  r.log_a[0] = kNegInf;  // a_{i,0} = 0: the maximum never goes negative
  r.log_c[0] = 0.0;
  return r;
}

// One time step of the recursion, next and prev must differ.
void advance_row(GameKind kind, double alpha, const DualRows& prev, DualRows& next) {
  const std::int64_t cols = static_cast<std::int64_t>(prev.log_a.size());
  const double log_alpha = std::log(alpha);

#pragma omp parallel for schedule(static)
  for (std::int64_t j = 1; j < cols; ++j) {
    const double la_up = prev.log_a[j];
    const double lc_up = prev.log_c[j];
    const double lc_diag = prev.log_c[j - 1];

    double la_next;
    double extra;  // log of the complement increment a_up * (growth mass)
    if (lc_diag == kNegInf) {
      // a_{i-1,j-1} = 1: no chain past j-1 can exist, nothing advances to j.
      la_next = la_up;
      extra = kNegInf;
    } else if (kind == GameKind::ssle) {
      // a' = a_up (1 - alpha c_diag);  1 - a' = c_up + a_up alpha c_diag
      const double c_diag = std::exp(lc_diag);
      la_next = la_up + std::log1p(-alpha * c_diag);
      extra = la_up + log_alpha + lc_diag;
    } else {
      // a' = a_up e^{-alpha c_diag};  1 - a' = c_up + a_up (1 - e^{-alpha c_diag})
      const double c_diag = std::exp(lc_diag);
      la_next = la_up - alpha * c_diag;
      const double log_x = log_alpha + lc_diag;  // log(alpha c_diag)
      // -expm1(-x) = x (1 - x/2 + ...): below e^-40 the linear form is exact
      // at double precision and immune to underflow of x itself.
      const double log_y = log_x < -40.0 ? log_x : std::log(-std::expm1(-std::exp(log_x)));
      extra = la_up + log_y;
    }
    next.log_a[j] = la_next;
    next.log_c[j] = detail::log_add(lc_up, extra);
  }
  next.log_a[0] = kNegInf;
  next.log_c[0] = 0.0;
}

// b_i from the complement row: sum_s Bin(delta_up, i, s) Pr[M_i >= s].
double assemble_win(const HonestWalkParams& hw, std::int64_t i,
                    const std::vector<double>& log_c,
                    const detail::LogFactorialTable& table,
                    std::vector<double>& scratch) {
  if (i == 0) return 0.0;
  const long double log_up = std::logl(static_cast<long double>(hw.delta_up));
  const long double log_null = std::logl(static_cast<long double>(hw.delta_null));
  scratch.clear();
  for (std::int64_t s = 0; s <= i; ++s) {
    const double lw = table.log_pmf(log_up, log_null, i, s);
    if (log_c[s] == kNegInf) continue;
    scratch.push_back(lw + log_c[s]);
  }
  return log_sum_exp(scratch);
}

}  // namespace

HonestWalkParams honest_walk_params(GameKind kind, AdversaryPower alpha) {
  check_grinding_kind(kind);
  const double a = alpha.value();
  const double up = kind == GameKind::ssle ? 1.0 - a : 1.0 - std::exp(a - 1.0);
  return {up, 1.0 - up};
}

GrindingTable::GrindingTable(GameKind kind, double alpha, std::int64_t horizon,
                             std::vector<double> log_below,
                             std::vector<double> log_at_least)
    : kind_(kind),
      alpha_(alpha),
      horizon_(horizon),
      log_below_(std::move(log_below)),
      log_at_least_(std::move(log_at_least)) {}

std::size_t GrindingTable::index(std::int64_t i, std::int64_t j) const {
  if (i < 0 || i > horizon_ || j < 0 || j > horizon_ + 1) {
    throw std::out_of_range("grinding table index outside [0,n] x [0,n+1]");
  }
  return static_cast<std::size_t>(i * (horizon_ + 2) + j);
}

LogProb GrindingTable::below(std::int64_t i, std::int64_t j) const {
  return LogProb::from_log(log_below_[index(i, j)]);
}

LogProb GrindingTable::at_least(std::int64_t i, std::int64_t j) const {
  return LogProb::from_log(log_at_least_[index(i, j)]);
}

GrindingTable grinding_table(GameKind kind, AdversaryPower alpha, std::int64_t horizon) {
  check_grinding_kind(kind);
  if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  if (horizon > kGrindingTableCap) {
    throw std::invalid_argument(
        "full grinding table capped at n = 2000; use grinding_final_row or "
        "grinding_win_curve for larger horizons");
  }
  const std::int64_t cols = horizon + 2;
  std::vector<double> la(static_cast<std::size_t>((horizon + 1) * cols));
  std::vector<double> lc(la.size());

  DualRows row = initial_row(cols);
  DualRows next = row;
  std::copy(row.log_a.begin(), row.log_a.end(), la.begin());
  std::copy(row.log_c.begin(), row.log_c.end(), lc.begin());
  for (std::int64_t i = 1; i <= horizon; ++i) {
    advance_row(kind, alpha.value(), row, next);
    std::swap(row, next);
    std::copy(row.log_a.begin(), row.log_a.end(), la.begin() + i * cols);
    std::copy(row.log_c.begin(), row.log_c.end(), lc.begin() + i * cols);
  }
  return GrindingTable(kind, alpha.value(), horizon, std::move(la), std::move(lc));
}

GrindingRow grinding_final_row(GameKind kind, AdversaryPower alpha, std::int64_t horizon) {
  check_grinding_kind(kind);
  if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  DualRows row = initial_row(horizon + 2);
  DualRows next = row;
  for (std::int64_t i = 1; i <= horizon; ++i) {
    advance_row(kind, alpha.value(), row, next);
    std::swap(row, next);
  }
  return {horizon, std::move(row.log_a), std::move(row.log_c)};
}

std::vector<LogProb> grinding_win_curve(GameKind kind, AdversaryPower alpha,
                                        std::int64_t horizon) {
  check_grinding_kind(kind);
  if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  const HonestWalkParams hw = honest_walk_params(kind, alpha);
  const detail::LogFactorialTable table(horizon);
  std::vector<LogProb> curve(horizon + 1);
  curve[0] = LogProb::one();  // M_0 = S_0 = 0, ties go to the adversary

  DualRows row = initial_row(horizon + 2);
  DualRows next = row;
  std::vector<double> scratch;
  scratch.reserve(horizon + 1);
  for (std::int64_t i = 1; i <= horizon; ++i) {
    advance_row(kind, alpha.value(), row, next);
    std::swap(row, next);
    curve[i] = LogProb::from_log(assemble_win(hw, i, row.log_c, table, scratch));
  }
  return curve;
}

LogProb grinding_win_probability(GameKind kind, AdversaryPower alpha, std::int64_t horizon) {
  check_grinding_kind(kind);
  if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  if (horizon == 0) return LogProb::one();
  const HonestWalkParams hw = honest_walk_params(kind, alpha);
  const detail::LogFactorialTable table(horizon);
  DualRows row = initial_row(horizon + 2);
  DualRows next = row;
  for (std::int64_t i = 1; i <= horizon; ++i) {
    advance_row(kind, alpha.value(), row, next);
    std::swap(row, next);
  }
  std::vector<double> scratch;
  return LogProb::from_log(assemble_win(hw, horizon, row.log_c, table, scratch));
}

double zeta(double a, double alpha) {
  if (!(a > -1.0 && a < 0.0)) throw std::invalid_argument("zeta is defined on (-1, 0)");
  return std::exp(a * (std::log(-a) - std::log(alpha) - std::log1p(a)) - std::log1p(a));
}

SpeedFunctional speed_gamma(AdversaryPower alpha) {
  const double a = alpha.value();
  // ln zeta on the increasing branch: negative at -1+, positive at the peak.
  const auto ln_zeta = [a](double x) {
    return x * (std::log(-x) - std::log(a) - std::log1p(x)) - std::log1p(x);
  };
  double lo = -1.0 + 1e-12;
  double hi = -a / (1.0 + a);
  if (!(ln_zeta(lo) < 0.0 && ln_zeta(hi) > 0.0)) {
    throw std::runtime_error("speed_gamma: bisection bracket failed");
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (ln_zeta(mid) < 0.0 ? lo : hi) = mid;
  }
  return {a, 0.5 * (lo + hi)};
}

namespace {

double honest_rate(GameKind kind, double a) {
  return kind == GameKind::ssle ? 1.0 - a : 1.0 - std::exp(a - 1.0);
}

// Rearranged closed equations from the threshold theorem, in log form:
//   SSLE: ((1-a)/a^2)^(a-1) = a
//   PLE:  ((1-e^{a-1})/(a e^{a-1}))^(e^{a-1}-1) = e^{a-1}
double closed_equation(GameKind kind, double a) {
  if (kind == GameKind::ssle) {
    return (a - 1.0) * (std::log1p(-a) - 2.0 * std::log(a)) - std::log(a);
  }
  const double e = std::exp(a - 1.0);
  return (e - 1.0) * (std::log1p(-e) - std::log(a) - (a - 1.0)) - (a - 1.0);
}

}  // namespace

ThresholdReport security_threshold_report(GameKind kind) {
  check_grinding_kind(kind);
  // Nested solve: -gamma(alpha) grows with alpha while delta_up falls, so
  // the difference is increasing and brackets on (0.01, 0.49).
  double lo = 0.01;
  double hi = 0.49;
  int iterations = 0;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    const double diff = -speed_gamma(AdversaryPower(mid)).gamma - honest_rate(kind, mid);
    (diff < 0.0 ? lo : hi) = mid;
    ++iterations;
  }
  const double nested = 0.5 * (lo + hi);
  const double residual =
      std::abs(-speed_gamma(AdversaryPower(nested)).gamma - honest_rate(kind, nested));

  // Independent route: bisection on the closed equation.
  lo = 0.01;
  hi = 0.49;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (closed_equation(kind, mid) < 0.0 ? lo : hi) = mid;
  }
  const double closed = 0.5 * (lo + hi);
  const double delta = std::abs(nested - closed);
  if (delta > 1e-6) {
    throw std::runtime_error("security threshold: nested and closed-equation solves disagree");
  }
  return {kind, nested, iterations, residual, closed, delta};
}

AdversaryPower security_threshold(GameKind kind) {
  return AdversaryPower(security_threshold_report(kind).alpha);
}

}  // namespace possec
