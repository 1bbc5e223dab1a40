#include "possec/private_game.hpp"

#include <cmath>
#include <stdexcept>

#include "binomial_table.hpp"
#include "win_tails.hpp"

namespace possec {

namespace {

void check_horizon(std::int64_t horizon) {
  if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  if (horizon > kHorizonCap) {
    throw std::invalid_argument("horizon exceeds the exact-analytics cap of 100000");
  }
}

}  // namespace

GapPmf::GapPmf(GameKind kind, std::int64_t horizon, std::vector<LogProb> masses)
    : kind_(kind), horizon_(horizon), masses_(std::move(masses)) {
  if (static_cast<std::int64_t>(masses_.size()) != 2 * horizon_ + 1) {
    throw std::invalid_argument("gap pmf must cover exactly [-horizon, horizon]");
  }
}

LogProb GapPmf::at(std::int64_t gap) const noexcept {
  if (gap < -horizon_ || gap > horizon_) return LogProb::zero();
  return masses_[static_cast<std::size_t>(gap + horizon_)];
}

double GapPmf::total_log_mass() const {
  std::vector<double> logs;
  logs.reserve(masses_.size());
  for (const LogProb& m : masses_) logs.push_back(m.log());
  return log_sum_exp(logs);
}

GapPmf gap_pmf_ssle(AdversaryPower alpha, std::int64_t horizon) {
  check_horizon(horizon);
  const double a = alpha.value();
  std::vector<LogProb> masses(2 * horizon + 1);
  for (std::int64_t v = -horizon; v <= horizon; ++v) {
    masses[v + horizon] = log_binomial_pmf(a, horizon, (horizon + v) / 2.0);
  }
  return GapPmf(GameKind::ssle, horizon, std::move(masses));
}

GapPmf gap_pmf_ple(AdversaryPower alpha, std::int64_t horizon, GameKind kind) {
  check_horizon(horizon);
  if (kind != GameKind::ple && kind != GameKind::independent_ssle) {
    throw std::invalid_argument("gap_pmf_ple models the lazy walks: ple or ind");
  }
  const StepProbs sp = step_probs(kind, alpha);
  const double q = sp.p_up / (sp.p_up + sp.p_down);
  const detail::LogFactorialTable table(horizon);
  const long double log_p0 = std::logl(static_cast<long double>(sp.p_null));
  const long double log_1mp0 = std::logl(static_cast<long double>(sp.p_up + sp.p_down));
  const long double log_q = std::logl(static_cast<long double>(q));
  const long double log_1mq = std::logl(static_cast<long double>(1.0 - q));

  const std::int64_t n = horizon;
  std::vector<LogProb> masses(2 * n + 1);

#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t idx = 0; idx <= 2 * n; ++idx) {
    const std::int64_t v = idx - n;
    const std::int64_t abs_v = v < 0 ? -v : v;
    // l must match the parity of n + v so that (n - l + v) / 2 is integral.
    std::vector<double> terms;
    terms.reserve((n - abs_v) / 2 + 1);
    for (std::int64_t l = (n + v) % 2; l <= n - abs_v; l += 2) {
      const std::int64_t m = n - l;
      const std::int64_t k = (m + v) / 2;
      const double t = table.log_pmf(log_p0, log_1mp0, n, l) +
                       table.log_pmf(log_q, log_1mq, m, k);
      terms.push_back(t);
    }
    masses[idx] = terms.empty() ? LogProb::zero() : LogProb::from_log(log_sum_exp(terms));
  }
  return GapPmf(kind, n, std::move(masses));
}

GapPmf gap_pmf(GameKind kind, AdversaryPower alpha, std::int64_t horizon) {
  return kind == GameKind::ssle ? gap_pmf_ssle(alpha, horizon)
                                : gap_pmf_ple(alpha, horizon, kind);
}

LogProb catch_up_probability(GameKind kind, AdversaryPower alpha, std::int64_t deficit) {
  if (deficit < 1) throw std::invalid_argument("catch-up deficit must be at least 1");
  alpha.require_minority();
  const StepProbs sp = step_probs(kind, alpha);
  const double log_r1 = std::log(sp.p_up) - std::log(sp.p_down);
  return LogProb::from_log(static_cast<double>(deficit) * log_r1);
}

double expected_gap(GameKind kind, AdversaryPower alpha, std::int64_t horizon) {
  if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  const StepProbs sp = step_probs(kind, alpha);
  return (sp.p_up - sp.p_down) * static_cast<double>(horizon);
}

WinProbability win_probability(GameKind kind, AdversaryPower alpha, std::int64_t horizon) {
  check_horizon(horizon);
  alpha.require_minority();
  const double a = alpha.value();
  if (horizon == 0) return {0, kind, a, LogProb::one()};

  if (kind == GameKind::ssle) {
    return {horizon, kind, a,
            LogProb::from_log(detail::log_win_ssle_collapsed(a, horizon))};
  }

  // Lazy walks: condition on the null-event count l. The remaining n - l
  // rounds form an SSLE game with power p_up / (p_up + p_down) whose
  // catch-up ratio equals p_up / p_down, so each conditional term collapses
  // the same way as Theorem 1. Iterating l downward (shorter inner games
  // first) allows a rigorous early stop: every remaining term is bounded by
  // the current inner value.
  const StepProbs sp = step_probs(kind, alpha);
  const double q = sp.p_up / (sp.p_up + sp.p_down);
  const std::int64_t n = horizon;
  std::vector<double> terms;
  terms.reserve(256);
  double best = detail::kNegInf;
  for (std::int64_t l = n; l >= 0; --l) {
    const double inner = detail::log_win_ssle_collapsed(q, n - l);
    if (best != detail::kNegInf && inner < best - 46.1) break;
    const double t = log_binomial_pmf(sp.p_null, n, static_cast<double>(l)).log() + inner;
    if (t > best) best = t;
    terms.push_back(t);
  }
  return {horizon, kind, a, LogProb::from_log(log_sum_exp(terms))};
}

}  // namespace possec
