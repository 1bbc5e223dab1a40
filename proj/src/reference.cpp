#include "possec/reference.hpp"

#include <cmath>
#include <stdexcept>

#include "binomial_table.hpp"

namespace possec::reference {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

GapPmf gap_pmf_ple(AdversaryPower alpha, std::int64_t horizon, GameKind kind) {
  if (horizon < 0 || horizon > kHorizonCap) {
    throw std::invalid_argument("horizon outside [0, 100000]");
  }
  if (kind != GameKind::ple && kind != GameKind::independent_ssle) {
    throw std::invalid_argument("gap_pmf_ple models the lazy walks: ple or ind");
  }
  const StepProbs sp = step_probs(kind, alpha);
  const double q = sp.p_up / (sp.p_up + sp.p_down);
  const std::int64_t n = horizon;
  std::vector<LogProb> masses(2 * n + 1);
  std::vector<double> terms;
  for (std::int64_t v = -n; v <= n; ++v) {
    const std::int64_t abs_v = v < 0 ? -v : v;
    terms.clear();
    for (std::int64_t l = 0; l <= n - abs_v; ++l) {
      const LogProb null_count = log_binomial_pmf(sp.p_null, n, static_cast<double>(l));
      const LogProb walk = log_binomial_pmf(q, n - l, (n - l + v) / 2.0);
      const LogProb term = null_count * walk;
      if (!term.is_zero()) terms.push_back(term.log());
    }
    masses[v + n] = terms.empty() ? LogProb::zero() : LogProb::from_log(log_sum_exp(terms));
  }
  return GapPmf(kind, n, std::move(masses));
}

WinProbability win_probability(GameKind kind, AdversaryPower alpha, std::int64_t horizon) {
  alpha.require_minority();
  if (horizon < 0 || horizon > kHorizonCap) {
    throw std::invalid_argument("horizon outside [0, 100000]");
  }
  if (horizon == 0) return {0, kind, alpha.value(), LogProb::one()};
  const GapPmf pmf = kind == GameKind::ssle ? gap_pmf_ssle(alpha, horizon)
                                            : gap_pmf_ple(alpha, horizon, kind);
  const double log_r1 = catch_up_probability(kind, alpha, 1).log();
  std::vector<double> terms;
  terms.reserve(2 * horizon + 1);
  for (std::int64_t v = -horizon; v <= horizon; ++v) {
    const LogProb mass = pmf.at(v);
    if (mass.is_zero()) continue;
    terms.push_back(v >= 0 ? mass.log() : mass.log() + static_cast<double>(-v) * log_r1);
  }
  return {horizon, kind, alpha.value(), LogProb::from_log(log_sum_exp(terms))};
}

namespace {

// Serial one-row advance of the dual-form grinding recursion.
void advance_serial(GameKind kind, double a, const std::vector<double>& la,
                    const std::vector<double>& lc, std::vector<double>& nla,
                    std::vector<double>& nlc) {
  const std::int64_t cols = static_cast<std::int64_t>(la.size());
  nla[0] = kNegInf;
  nlc[0] = 0.0;
  for (std::int64_t j = 1; j < cols; ++j) {
    const double lc_diag = lc[j - 1];
    if (lc_diag == kNegInf) {
      nla[j] = la[j];
      nlc[j] = lc[j];
      continue;
    }
    const double c_diag = std::exp(lc_diag);
    double extra;
    if (kind == GameKind::ssle) {
      nla[j] = la[j] + std::log1p(-a * c_diag);
      extra = la[j] + std::log(a) + lc_diag;
    } else {
      nla[j] = la[j] - a * c_diag;
      const double log_x = std::log(a) + lc_diag;
      const double log_y =
          log_x < -40.0 ? log_x : std::log(-std::expm1(-std::exp(log_x)));
      extra = la[j] + log_y;
    }
    nlc[j] = detail::log_add(lc[j], extra);
  }
}

}  // namespace

GrindingTable grinding_table(GameKind kind, AdversaryPower alpha, std::int64_t horizon) {
  if (kind != GameKind::ssle && kind != GameKind::ple) {
    throw std::invalid_argument("grinding games exist for ssle and ple only");
  }
  if (horizon < 0 || horizon > kGrindingTableCap) {
    throw std::invalid_argument("full grinding table capped at n = 2000");
  }
  const std::int64_t cols = horizon + 2;
  std::vector<double> all_a(static_cast<std::size_t>((horizon + 1) * cols));
  std::vector<double> all_c(all_a.size());
  std::vector<double> la(cols, 0.0), lc(cols, kNegInf), nla(cols), nlc(cols);
  la[0] = kNegInf;
  lc[0] = 0.0;
  std::copy(la.begin(), la.end(), all_a.begin());
  std::copy(lc.begin(), lc.end(), all_c.begin());
  for (std::int64_t i = 1; i <= horizon; ++i) {
    advance_serial(kind, alpha.value(), la, lc, nla, nlc);
    la.swap(nla);
    lc.swap(nlc);
    std::copy(la.begin(), la.end(), all_a.begin() + i * cols);
    std::copy(lc.begin(), lc.end(), all_c.begin() + i * cols);
  }
  return GrindingTable(kind, alpha.value(), horizon, std::move(all_a), std::move(all_c));
}

std::vector<LogProb> grinding_win_curve(GameKind kind, AdversaryPower alpha,
                                        std::int64_t horizon) {
  if (kind != GameKind::ssle && kind != GameKind::ple) {
    throw std::invalid_argument("grinding games exist for ssle and ple only");
  }
  if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  const HonestWalkParams hw = honest_walk_params(kind, alpha);
  const detail::LogFactorialTable table(horizon);
  const long double log_up = std::logl(static_cast<long double>(hw.delta_up));
  const long double log_null = std::logl(static_cast<long double>(hw.delta_null));

  std::vector<LogProb> curve(horizon + 1);
  curve[0] = LogProb::one();
  const std::int64_t cols = horizon + 2;
  std::vector<double> la(cols, 0.0), lc(cols, kNegInf), nla(cols), nlc(cols);
  la[0] = kNegInf;
  lc[0] = 0.0;
  std::vector<double> terms;
  for (std::int64_t i = 1; i <= horizon; ++i) {
    advance_serial(kind, alpha.value(), la, lc, nla, nlc);
    la.swap(nla);
    lc.swap(nlc);
    terms.clear();
    for (std::int64_t s = 0; s <= i; ++s) {
      if (lc[s] == kNegInf) continue;
      terms.push_back(table.log_pmf(log_up, log_null, i, s) + lc[s]);
    }
    curve[i] = LogProb::from_log(log_sum_exp(terms));
  }
  return curve;
}

WinProbabilityEstimate estimate_win_probability(GameKind kind, AdversaryPower alpha,
                                                std::int64_t horizon,
                                                const SimConfig& config) {
  config.validate();
  if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  alpha.require_minority();
  const StepProbs sp = step_probs(kind, alpha);

  std::int64_t extension =
      static_cast<std::int64_t>(std::llround(static_cast<double>(horizon) *
                                             config.catchup_horizon_multiplier));
  if (config.horizon > 0 && horizon + extension > config.horizon) {
    extension = std::max<std::int64_t>(0, config.horizon - horizon);
  }

  std::int64_t wins = 0;
  for (std::int64_t t = 0; t < config.runs; ++t) {
    TrialRng rng(config.seed, static_cast<std::uint64_t>(t));
    std::int64_t gap = simulate_gap_trajectory(kind, alpha, horizon, rng);
    bool won = gap >= 0;
    for (std::int64_t round = 0; !won && round < extension; ++round) {
      gap += simulate_gap_trajectory(kind, alpha, 1, rng);
      won = gap >= 0;
    }
    wins += won ? 1 : 0;
  }
  const double mean = static_cast<double>(wins) / static_cast<double>(config.runs);
  const double se = std::sqrt(mean * (1.0 - mean) / static_cast<double>(config.runs));
  const double drift = sp.p_down - sp.p_up;
  const double log_r1 = std::log(sp.p_up) - std::log(sp.p_down);
  const double implied_deficit = std::max(1.0, drift * static_cast<double>(extension));
  return {{mean, se, config.runs}, extension, std::exp(log_r1 * implied_deficit)};
}

GapHistogram estimate_gap_pmf(GameKind kind, AdversaryPower alpha, std::int64_t horizon,
                              const SimConfig& config) {
  config.validate();
  if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  std::vector<std::int64_t> counts(2 * horizon + 1, 0);
  for (std::int64_t t = 0; t < config.runs; ++t) {
    TrialRng rng(config.seed, static_cast<std::uint64_t>(t));
    const std::int64_t gap = simulate_gap_trajectory(kind, alpha, horizon, rng);
    ++counts[static_cast<std::size_t>(gap + horizon)];
  }
  return {horizon, config.runs, std::move(counts)};
}

}  // namespace possec::reference
