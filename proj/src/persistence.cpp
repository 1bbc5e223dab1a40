#include "possec/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "possec/grinding.hpp"

namespace possec {

namespace {

void require_below_threshold(GameKind kind, AdversaryPower alpha, CurveSource source) {
  if (source == CurveSource::private_game) {
    alpha.require_minority();
    return;
  }
  const double threshold = security_threshold(kind).value();
  if (alpha.value() >= threshold) {
    throw std::domain_error("adversary power at or above the grinding security threshold: "
                            "the win probability does not decay");
  }
}

// Curve evaluator caching the grinding b-curve, which is produced whole.
class WinCurve {
 public:
  WinCurve(GameKind kind, AdversaryPower alpha, CurveSource source)
      : kind_(kind), alpha_(alpha), source_(source) {}

  double log_win(std::int64_t n) {
    if (source_ == CurveSource::private_game) {
      return win_probability(kind_, alpha_, n).value.log();
    }
    if (n >= static_cast<std::int64_t>(curve_.size())) {
      curve_ = grinding_win_curve(kind_, alpha_, std::max<std::int64_t>(n, 256));
    }
    return curve_[static_cast<std::size_t>(n)].log();
  }

  std::int64_t scan_cap() const {
    return source_ == CurveSource::private_game ? kHorizonCap : kGrindingScanCap;
  }

 private:
  GameKind kind_;
  AdversaryPower alpha_;
  CurveSource source_;
  std::vector<LogProb> curve_;
};

DecayFit fit_through(WinCurve& curve, std::int64_t n_min, std::int64_t n_max, int points) {
  if (points < 2) throw std::invalid_argument("decay fit needs at least two points");
  std::vector<std::int64_t> ns;
  ns.reserve(points);
  for (int i = 0; i < points; ++i) {
    const std::int64_t n =
        n_min + (n_max - n_min) * static_cast<std::int64_t>(i) / (points - 1);
    if (ns.empty() || ns.back() != n) ns.push_back(n);
  }
  std::vector<double> ys;
  ys.reserve(ns.size());
  for (std::int64_t n : ns) ys.push_back(curve.log_win(n));

  const double count = static_cast<double>(ns.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double x = static_cast<double>(ns[i]);
    sx += x;
    sy += ys[i];
    sxx += x * x;
    sxy += x * ys[i];
  }
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / count;
  double max_residual = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    max_residual = std::max(
        max_residual, std::abs(ys[i] - (intercept + slope * static_cast<double>(ns[i]))));
  }
  return {-slope, intercept, n_min, n_max, max_residual, max_residual <= 0.5};
}

// Default window when a caller gives none: anchored at 4 / rate_guess to
// skip the pre-asymptotic bend, spanning a factor of three. The one-point
// guess probes n = 600 (or the scan cap if smaller).
std::pair<std::int64_t, std::int64_t> default_fit_window(WinCurve& curve) {
  const std::int64_t probe = std::min<std::int64_t>(600, curve.scan_cap());
  const double rate_guess = -curve.log_win(probe) / static_cast<double>(probe);
  std::int64_t w0 = std::max<std::int64_t>(
      200, static_cast<std::int64_t>(std::ceil(4.0 / std::max(rate_guess, 1e-12))));
  w0 = std::min(w0, curve.scan_cap() / 3);
  return {w0, 3 * w0};
}

}  // namespace

CurveSource parse_curve_source(std::string_view name) {
  if (name == "private") return CurveSource::private_game;
  if (name == "grinding") return CurveSource::grinding;
  throw std::invalid_argument("unknown curve source: " + std::string(name));
}

std::string_view to_string(CurveSource source) {
  return source == CurveSource::private_game ? "private" : "grinding";
}

std::string_view to_string(PersistenceMethod method) {
  return method == PersistenceMethod::exact_scan ? "exact-scan" : "fit-extrapolation";
}

DecayFit fit_decay(GameKind kind, AdversaryPower alpha, std::int64_t n_min,
                   std::int64_t n_max, CurveSource source, int points) {
  if (n_min < 1 || n_min >= n_max) {
    throw std::invalid_argument("decay fit window must satisfy 1 <= n_min < n_max");
  }
  require_below_threshold(kind, alpha, source);
  WinCurve curve(kind, alpha, source);
  return fit_through(curve, n_min, n_max, points);
}

double one_point_rate(GameKind kind, AdversaryPower alpha, std::int64_t n,
                      CurveSource source) {
  if (n < 1) throw std::invalid_argument("one-point rate needs n >= 1");
  require_below_threshold(kind, alpha, source);
  WinCurve curve(kind, alpha, source);
  return -curve.log_win(n) / static_cast<double>(n);
}

PersistenceReport persistence_parameter(GameKind kind, AdversaryPower alpha,
                                        double epsilon, CurveSource source) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie strictly inside (0, 1)");
  }
  require_below_threshold(kind, alpha, source);
  const bool proxy = source == CurveSource::grinding;
  const double log_eps = std::log(epsilon);
  WinCurve curve(kind, alpha, source);
  const std::int64_t cap = curve.scan_cap();

  // Exponential bracket, then bisection for the first crossing. The win
  // curve is non-increasing in n; the bracket is re-verified afterward.
  std::int64_t lo = 0;
  std::int64_t hi = 1;
  bool bracketed = true;
  while (curve.log_win(hi) > log_eps) {
    if (hi >= cap) {
      bracketed = false;
      break;
    }
    lo = hi;
    hi = std::min(hi * 2, cap);
  }
  if (bracketed) {
    while (hi - lo > 1) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (curve.log_win(mid) <= log_eps) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    if (curve.log_win(hi) > log_eps || curve.log_win(hi - 1) <= log_eps) {
      throw std::runtime_error("persistence scan: bracketing invariant violated "
                               "(win curve not monotone over the scan range)");
    }
    return {kind, alpha.value(), epsilon, hi, PersistenceMethod::exact_scan, proxy, true};
  }

  const auto [w0, w1] = default_fit_window(curve);
  const DecayFit fit = fit_through(curve, w0, w1, 9);
  if (!fit.valid || fit.rate <= 0.0) {
    return {kind, alpha.value(), epsilon, 0, PersistenceMethod::fit_extrapolation, proxy,
            false};
  }
  const auto n0 =
      static_cast<std::int64_t>(std::ceil((fit.intercept - log_eps) / fit.rate));
  return {kind, alpha.value(), epsilon, n0, PersistenceMethod::fit_extrapolation, proxy,
          true};
}

double reduction_ratio(AdversaryPower alpha, double epsilon, CurveSource source) {
  const PersistenceReport ssle =
      persistence_parameter(GameKind::ssle, alpha, epsilon, source);
  const PersistenceReport ple =
      persistence_parameter(GameKind::ple, alpha, epsilon, source);
  if (ssle.reachable && ple.reachable && ssle.method == PersistenceMethod::exact_scan &&
      ple.method == PersistenceMethod::exact_scan) {
    return 100.0 * (1.0 - static_cast<double>(ssle.n0) / static_cast<double>(ple.n0));
  }
  // At least one side left the exact range: compare fitted rates instead,
  // each over its own default window.
  WinCurve ssle_curve(GameKind::ssle, alpha, source);
  WinCurve ple_curve(GameKind::ple, alpha, source);
  const auto [s0, s1] = default_fit_window(ssle_curve);
  const auto [p0, p1] = default_fit_window(ple_curve);
  const DecayFit fs = fit_through(ssle_curve, s0, s1, 9);
  const DecayFit fp = fit_through(ple_curve, p0, p1, 9);
  if (!fs.valid || !fp.valid || fs.rate <= 0.0 || fp.rate <= 0.0) {
    throw std::runtime_error("reduction ratio: no valid decay fit on at least one side");
  }
  return 100.0 * (1.0 - fp.rate / fs.rate);
}

double reduction_ratio_fitted(AdversaryPower alpha, std::int64_t n_min, std::int64_t n_max,
                              CurveSource source) {
  const DecayFit fs = fit_decay(GameKind::ssle, alpha, n_min, n_max, source);
  const DecayFit fp = fit_decay(GameKind::ple, alpha, n_min, n_max, source);
  if (!fs.valid || !fp.valid || fs.rate <= 0.0 || fp.rate <= 0.0) {
    throw std::runtime_error("reduction ratio: no valid decay fit on at least one side");
  }
  return 100.0 * (1.0 - fp.rate / fs.rate);
}

}  // namespace possec
