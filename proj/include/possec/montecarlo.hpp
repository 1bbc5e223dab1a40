#pragma once

#include <cstdint>
#include <vector>

#include "possec/core.hpp"

namespace possec {

/// Shared knobs of every stochastic oracle. Identical config + parameters
/// give bit-identical estimates regardless of thread count: trial streams
/// derive from (seed, trial index) and every aggregate is an integer count.
struct SimConfig {
  std::uint64_t seed = 0x5eed1e5529a1f00dULL;
  std::int64_t runs = 1'000'000;
  /// Optional hard cap on total rounds per trajectory (0 = no cap beyond
  /// n + extension).
  std::int64_t horizon = 0;
  /// Max tracked particle count per position in the BRW simulators.
  std::int64_t saturation_cap = 1'000'000;
  /// First-passage truncation: a losing gap gets n * multiplier extra
  /// rounds to catch up before the trial is scored lost.
  double catchup_horizon_multiplier = 50.0;

  void validate() const;
};

struct McEstimate {
  double mean;
  double std_error;  ///< sample std / sqrt(runs)
  std::int64_t runs;
};

/// Deterministic per-trial random stream (xoshiro256++ seeded through
/// splitmix64 from (seed, trial)). Never shared between trials.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t next();
  double uniform();  ///< [0, 1)
  bool bernoulli(double p);
  /// Inversion below mean 30, rounded normal approximation above.
  std::int64_t poisson(double mean);
  /// Bernoulli sums for small counts, inversion for small means, rounded
  /// normal approximation above.
  std::int64_t binomial(std::int64_t trials, double p);

 private:
  double normal();
  std::uint64_t s_[4];
};

/// One game trajectory; returns G_n. Draws follow the game definitions:
/// SSLE one Bernoulli(alpha) leader per round; PLE independent
/// Poisson(alpha) / Poisson(1-alpha) leader counts; independent SSLE two
/// independent Bernoullis with parameters alpha and 1-alpha.
std::int64_t simulate_gap_trajectory(GameKind kind, AdversaryPower alpha,
                                     std::int64_t horizon, TrialRng& rng);

struct WinProbabilityEstimate {
  McEstimate estimate;
  /// Rounds simulated past the horizon before truncating the catch-up.
  std::int64_t extension_rounds;
  /// Analytic bound r_1^(drift-implied deficit) on the downward truncation
  /// bias: trials still negative at truncation sit near deficit drift*ext.
  double truncation_bias_bound;
};

/// Fraction of trials with G_n >= 0, or that return to gap 0 within the
/// truncated extension after being negative at n. Truncation bias is
/// downward: the analytic value uses an infinite catch-up horizon.
WinProbabilityEstimate estimate_win_probability(GameKind kind, AdversaryPower alpha,
                                                std::int64_t horizon,
                                                const SimConfig& config);

struct GapHistogram {
  std::int64_t horizon;
  std::int64_t runs;
  std::vector<std::int64_t> counts;  ///< indexed by gap + horizon

  double probability(std::int64_t gap) const;
  double std_error(std::int64_t gap) const;
};

GapHistogram estimate_gap_pmf(GameKind kind, AdversaryPower alpha, std::int64_t horizon,
                              const SimConfig& config);

McEstimate estimate_expected_gap(GameKind kind, AdversaryPower alpha, std::int64_t horizon,
                                 const SimConfig& config);

/// One branching-random-walk trial tracking per-position particle counts;
/// returns the maximum occupied position at time n. Counts cap at
/// saturation_cap; a saturated source position advances with probability
/// 1 - (1-alpha)^cap (SSLE) or 1 - e^{-alpha cap} (PLE) while child counts
/// stay capped. Caps below 1000 are rejected: the bias would be too large
/// for validation use.
std::int64_t simulate_brw_max(GameKind kind, AdversaryPower alpha, std::int64_t horizon,
                              std::int64_t saturation_cap, TrialRng& rng);

struct BrwMaxHistogram {
  std::int64_t horizon;
  std::int64_t runs;
  std::vector<std::int64_t> counts;  ///< counts[m] = trials with M_n = m

  /// Empirical Pr[M_n < j], the simulation counterpart of a table cell.
  double cdf_below(std::int64_t j) const;
  double cdf_std_error(std::int64_t j) const;
  double mean() const;
};

BrwMaxHistogram estimate_brw_max(GameKind kind, AdversaryPower alpha, std::int64_t horizon,
                                 const SimConfig& config);

}  // namespace possec
