#include "possec/core.hpp"

#include <cmath>

namespace possec {

std::string_view to_string(GameKind kind) {
  switch (kind) {
    case GameKind::ssle: return "ssle";
    case GameKind::ple: return "ple";
    case GameKind::independent_ssle: return "ind";
  }
  throw std::logic_error("unknown game kind");
}

GameKind parse_game_kind(std::string_view name) {
  if (name == "ssle") return GameKind::ssle;
  if (name == "ple") return GameKind::ple;
  if (name == "ind" || name == "independent-ssle") return GameKind::independent_ssle;
  throw std::invalid_argument("unknown game kind: " + std::string(name));
}

StepProbs step_probs(GameKind kind, AdversaryPower alpha) {
  const double a = alpha.value();
  switch (kind) {
    case GameKind::ssle:
      return {a, 1.0 - a, 0.0};
    case GameKind::ple: {
      const double up = std::exp(a - 1.0) - std::exp(-1.0);
      const double down = std::exp(-a) - std::exp(-1.0);
      return {up, down, 1.0 - up - down};
    }
    case GameKind::independent_ssle:
      return {a * a, (1.0 - a) * (1.0 - a), 2.0 * a * (1.0 - a)};
  }
  throw std::logic_error("unknown game kind");
}

LogProb log_binomial_pmf(double p, std::int64_t n, double k) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("binomial success probability must lie in [0, 1]");
  }
  if (n < 0) {
    throw std::invalid_argument("binomial trial count must be non-negative");
  }
  if (!(std::abs(k - std::round(k)) <= 1e-9)) return LogProb::zero();
  const auto ki = static_cast<std::int64_t>(std::llround(k));
  if (ki < 0 || ki > n) return LogProb::zero();
  if (p == 0.0) return ki == 0 ? LogProb::one() : LogProb::zero();
  if (p == 1.0) return ki == n ? LogProb::one() : LogProb::zero();

  const long double nl = static_cast<long double>(n);
  const long double kl = static_cast<long double>(ki);
  const long double log_coeff =
      std::lgammal(nl + 1.0L) - std::lgammal(kl + 1.0L) - std::lgammal(nl - kl + 1.0L);
  const long double log_value =
      log_coeff + kl * std::logl(static_cast<long double>(p)) +
      (nl - kl) * std::log1pl(static_cast<long double>(-p));
  return LogProb::from_log(static_cast<double>(log_value));
}

}  // namespace possec
