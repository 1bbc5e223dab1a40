#pragma once

#include <cstdint>
#include <vector>

#include "possec/core.hpp"

namespace possec {

/// Largest horizon accepted by the exact analytics. Beyond this the
/// persistence module extrapolates from a fitted decay exponent.
inline constexpr std::int64_t kHorizonCap = 100'000;

/// Distribution of the gap G_n over the support [-n, n].
class GapPmf {
 public:
  GapPmf(GameKind kind, std::int64_t horizon, std::vector<LogProb> masses);

  GameKind kind() const noexcept { return kind_; }
  std::int64_t horizon() const noexcept { return horizon_; }

  /// Mass at a gap value; zero outside [-horizon, horizon].
  LogProb at(std::int64_t gap) const noexcept;

  /// Masses indexed by gap + horizon.
  const std::vector<LogProb>& masses() const noexcept { return masses_; }

  /// log of the total mass, max-shift summed. Unclamped so normalization
  /// checks can observe totals marginally above 1.
  double total_log_mass() const;

 private:
  GameKind kind_;
  std::int64_t horizon_;
  std::vector<LogProb> masses_;
};

/// Pr[G_n = v] = Bin(alpha, n, (n+v)/2) for the SSLE walk.
GapPmf gap_pmf_ssle(AdversaryPower alpha, std::int64_t horizon);

/// Pr[G_n = v] for the lazy walks (PLE or independent SSLE), as a mixture
/// over the null-event count l:
///   sum_{l=0}^{n-|v|} Bin(p_null, n, l) * Bin(p_up/(1-p_null), n-l, (n-l+v)/2)
/// The null count is binomial over all n rounds; this reading is validated
/// against an exact multinomial oracle in the test suite.
GapPmf gap_pmf_ple(AdversaryPower alpha, std::int64_t horizon,
                   GameKind kind = GameKind::ple);

/// Dispatches on kind.
GapPmf gap_pmf(GameKind kind, AdversaryPower alpha, std::int64_t horizon);

/// r_M = (p_up / p_down)^M: probability that a gap at -M ever returns to 0.
/// Requires alpha < 1/2 (transience toward -infinity) and M >= 1.
LogProb catch_up_probability(GameKind kind, AdversaryPower alpha, std::int64_t deficit);

/// E[G_n] = (p_up - p_down) * n.
double expected_gap(GameKind kind, AdversaryPower alpha, std::int64_t horizon);

struct WinProbability {
  std::int64_t horizon;
  GameKind kind;
  double alpha;
  LogProb value;
};

/// Probability that the adversary wins the private game at any length >= n:
///   sum_{v>=0} Pr[G_n = v] + sum_{v>=1} Pr[G_n = -v] * r_v.
/// The decomposition reads the catch-up event over an infinite horizon; see
/// the README for the exact reading. Requires alpha < 1/2.
WinProbability win_probability(GameKind kind, AdversaryPower alpha, std::int64_t horizon);

}  // namespace possec
