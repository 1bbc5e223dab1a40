#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "possec/log_prob.hpp"

namespace possec {

/// Leader-election flavour of a game. independent_ssle is the variant where
/// adversarial and honest single-leader elections run on divergent beacons
/// and become independent Bernoullis; it only appears in the non-grinding
/// private-game analytics.
enum class GameKind { ssle, ple, independent_ssle };

std::string_view to_string(GameKind kind);

/// Parses "ssle", "ple" or "ind"; throws std::invalid_argument otherwise.
GameKind parse_game_kind(std::string_view name);

/// Fraction of the total stake controlled by the adversary.
class AdversaryPower {
 public:
  explicit AdversaryPower(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
      throw std::invalid_argument("adversary power must lie strictly inside (0, 1)");
    }
  }

  double value() const noexcept { return alpha_; }

  /// Operations built on a walk that drifts toward the honest side need
  /// alpha < 1/2 and must reject anything else.
  void require_minority() const {
    if (alpha_ >= 0.5) {
      throw std::domain_error(
          "adversary power must be below 1/2: the gap walk is not transient "
          "toward the honest side otherwise");
    }
  }

 private:
  double alpha_;
};

/// Per-round transition probabilities of the gap random walk.
struct StepProbs {
  double p_up;    ///< gap increases by one
  double p_down;  ///< gap decreases by one
  double p_null;  ///< gap unchanged (null event)
};

/// Gap-walk step probabilities for a game kind:
///   SSLE             (alpha, 1 - alpha, 0)
///   PLE              (e^{a-1} - e^{-1}, e^{-a} - e^{-1}, remainder)
///   independent SSLE (a^2, (1-a)^2, 2a(1-a))
StepProbs step_probs(GameKind kind, AdversaryPower alpha);

/// log of Bin(p, n, k) = C(n,k) p^k (1-p)^(n-k), with the convention that
/// the pmf is zero off the non-negative integers <= n. The coefficient goes
/// through log-gamma, never factorial products.
LogProb log_binomial_pmf(double p, std::int64_t n, double k);

}  // namespace possec
