#pragma once

#include <cstdint>
#include <string_view>

#include "possec/core.hpp"
#include "possec/private_game.hpp"

namespace possec {

/// Which win-probability curve a persistence quantity is read from.
enum class CurveSource { private_game, grinding };

CurveSource parse_curve_source(std::string_view name);
std::string_view to_string(CurveSource source);

/// Largest horizon the grinding persistence scan evaluates exactly; the
/// b-curve recursion is O(n^2), so deeper targets extrapolate from a fit.
inline constexpr std::int64_t kGrindingScanCap = 5'000;

/// Least-squares line through (n, ln P(n)) over a window: P(n) ~ e^{-rate n}.
struct DecayFit {
  double rate;       ///< the a in e^{-a n}; positive below the threshold
  double intercept;  ///< fitted ln P at n = 0
  std::int64_t n_min;
  std::int64_t n_max;
  double max_residual;  ///< max |ln P - fit| over the window, never hidden
  bool valid;           ///< false when max_residual exceeds 0.5 log-units
};

/// Fits the decay exponent over [n_min, n_max] using `points` evenly spaced
/// horizons. Requires alpha below the source's threshold (1/2 for the
/// private game, the grinding security threshold otherwise).
DecayFit fit_decay(GameKind kind, AdversaryPower alpha, std::int64_t n_min,
                   std::int64_t n_max, CurveSource source, int points = 9);

/// The one-point method a = -ln(P(n)) / n.
double one_point_rate(GameKind kind, AdversaryPower alpha, std::int64_t n,
                      CurveSource source);

enum class PersistenceMethod { exact_scan, fit_extrapolation };

std::string_view to_string(PersistenceMethod method);

struct PersistenceReport {
  GameKind kind;
  double alpha;
  double epsilon;
  std::int64_t n0;  ///< smallest horizon with win probability <= epsilon
  PersistenceMethod method;
  /// Grinding reports scan b_n, the fixed-length win probability; that is a
  /// proxy for the any-length persistence event, not the event itself.
  bool proxy;
  bool reachable;  ///< false when epsilon cannot be bracketed or extrapolated
};

/// Smallest n0 with P(n0) <= epsilon. Exact scan while the curve is within
/// the scan cap; beyond it the fitted exponent extrapolates and the method
/// field says so.
PersistenceReport persistence_parameter(GameKind kind, AdversaryPower alpha,
                                        double epsilon, CurveSource source);

/// SSLE-versus-PLE settlement reduction in percent:
/// 100 (1 - n0_SSLE / n0_PLE) when both scans reach epsilon exactly, else
/// the fitted-rate ratio form 100 (1 - rate_PLE / rate_SSLE).
double reduction_ratio(AdversaryPower alpha, double epsilon, CurveSource source);

/// The fitted-rate ratio form over an explicit window.
double reduction_ratio_fitted(AdversaryPower alpha, std::int64_t n_min, std::int64_t n_max,
                              CurveSource source);

}  // namespace possec
