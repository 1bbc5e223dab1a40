#pragma once

#include <cstdint>
#include <vector>

#include "possec/core.hpp"

namespace possec {

/// Largest horizon for which the full a_{i,j} table is retained in memory.
/// Row-by-row evaluators (grinding_final_row, grinding_win_curve) have no
/// such bound.
inline constexpr std::int64_t kGrindingTableCap = 2'000;

/// Per-round growth law of the honest chain under grinding.
struct HonestWalkParams {
  double delta_up;    ///< chain grows by one:  1-alpha (SSLE), 1-e^{alpha-1} (PLE)
  double delta_null;  ///< chain unchanged
};

/// Only SSLE and PLE have grinding games.
HonestWalkParams honest_walk_params(GameKind kind, AdversaryPower alpha);

/// Table of a_{i,j} = Pr[M_i < j] for the branching-random-walk maximum,
/// i in [0, n], j in [0, n+1]. Every cell is carried in both log(a) and
/// log(1-a) form: cells near 1 keep full precision in the complement, which
/// the b_n sum needs when a_{n,s} is within 1e-12 of 1.
class GrindingTable {
 public:
  GrindingTable(GameKind kind, double alpha, std::int64_t horizon,
                std::vector<double> log_below, std::vector<double> log_at_least);

  GameKind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  std::int64_t horizon() const noexcept { return horizon_; }

  /// a_{i,j} = Pr[M_i < j]
  LogProb below(std::int64_t i, std::int64_t j) const;
  /// 1 - a_{i,j} = Pr[M_i >= j]
  LogProb at_least(std::int64_t i, std::int64_t j) const;

 private:
  std::size_t index(std::int64_t i, std::int64_t j) const;

  GameKind kind_;
  double alpha_;
  std::int64_t horizon_;
  std::vector<double> log_below_;
  std::vector<double> log_at_least_;
};

/// Fills the table by the branching recursions
///   SSLE: a_{i,j} = a_{i-1,j} (1 - alpha + alpha a_{i-1,j-1})
///   PLE:  a_{i,j} = a_{i-1,j} exp(alpha (a_{i-1,j-1} - 1))
/// with boundary a_{0,j} = 1 for j > 0 and a_{i,0} = 0 (the first-child
/// chain never moves backward, so M_i >= 0 always).
GrindingTable grinding_table(GameKind kind, AdversaryPower alpha, std::int64_t horizon);

/// Final table row with O(n) memory: log Pr[M_n < j] and log Pr[M_n >= j]
/// for j = 0..n+1.
struct GrindingRow {
  std::int64_t time;
  std::vector<double> log_below;
  std::vector<double> log_at_least;
};
GrindingRow grinding_final_row(GameKind kind, AdversaryPower alpha, std::int64_t horizon);

/// b_i = Pr[M_i - S_i >= 0] = sum_s Bin(delta_up, i, s) (1 - a_{i,s}) for
/// every i = 0..horizon, computed row by row with two rows of memory.
std::vector<LogProb> grinding_win_curve(GameKind kind, AdversaryPower alpha,
                                        std::int64_t horizon);

/// b_horizon alone.
LogProb grinding_win_probability(GameKind kind, AdversaryPower alpha, std::int64_t horizon);

/// zeta(a) = (-a / (alpha (a+1)))^a / (a+1) on (-1, 0); gamma solves
/// zeta(gamma) = 1 there.
double zeta(double a, double alpha);

/// Almost-sure linear growth rate of the BRW maximum: M_n / n -> -gamma.
struct SpeedFunctional {
  double alpha;
  double gamma;  ///< in (-1, 0)
};

/// Bisection for the unique root of zeta on the increasing branch
/// (-1, -alpha/(1+alpha)), to absolute tolerance 1e-12. The same gamma
/// serves SSLE and PLE: the speed depends on the offspring law only through
/// its mean, which Bernoulli(alpha) and Poisson(alpha) share.
SpeedFunctional speed_gamma(AdversaryPower alpha);

struct ThresholdReport {
  GameKind kind;
  double alpha;             ///< nested-bisection solution of -gamma(alpha) = delta_up(alpha)
  int iterations;
  double residual;          ///< |-gamma - delta_up| at the solution
  double closed_form_alpha; ///< root of the theorem's rearranged closed equation
  double cross_check_delta; ///< |alpha - closed_form_alpha|, required < 1e-6
};

/// Security threshold of the grinding game: the power at which the BRW
/// speed matches the honest growth rate. Solved two independent ways and
/// cross-checked.
ThresholdReport security_threshold_report(GameKind kind);
AdversaryPower security_threshold(GameKind kind);

}  // namespace possec
