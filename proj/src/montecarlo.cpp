#include "possec/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

namespace possec {

namespace {

constexpr double kTwoPi = 6.283185307179586477;

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

void check_minority_drift(const StepProbs& sp) {
  if (!(sp.p_up < sp.p_down)) {
    throw std::domain_error("estimator needs drift toward the honest side (alpha < 1/2)");
  }
}

}  // namespace

void SimConfig::validate() const {
  if (runs < 1) throw std::invalid_argument("simulation needs at least one run");
  if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  if (saturation_cap < 1) throw std::invalid_argument("saturation cap must be positive");
  if (!(catchup_horizon_multiplier >= 1.0)) {
    throw std::invalid_argument("catch-up horizon multiplier must be at least 1");
  }
}

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t x = seed ^ (trial * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
  for (auto& word : s_) word = splitmix64(x);
}

std::uint64_t TrialRng::next() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double TrialRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

bool TrialRng::bernoulli(double p) { return uniform() < p; }

double TrialRng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

std::int64_t TrialRng::poisson(double mean) {
  if (mean < 0.0) throw std::invalid_argument("poisson mean must be non-negative");
  if (mean == 0.0) return 0;
  if (mean < 30.0) {
    // Inversion through the pmf recurrence.
    const double u = uniform();
    double pmf = std::exp(-mean);
    double cdf = pmf;
    std::int64_t k = 0;
    while (u >= cdf && k < 1'000'000) {
      ++k;
      pmf *= mean / static_cast<double>(k);
      cdf += pmf;
    }
    return k;
  }
  const double draw = std::round(mean + std::sqrt(mean) * normal());
  return draw < 0.0 ? 0 : static_cast<std::int64_t>(draw);
}

std::int64_t TrialRng::binomial(std::int64_t trials, double p) {
  if (trials < 0) throw std::invalid_argument("binomial trial count must be non-negative");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial p must lie in [0, 1]");
  if (trials == 0 || p == 0.0) return 0;
  if (p == 1.0) return trials;
  if (p > 0.5) return trials - binomial(trials, 1.0 - p);

  const double mean = static_cast<double>(trials) * p;
  if (trials <= 24) {
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < trials; ++i) hits += bernoulli(p) ? 1 : 0;
    return hits;
  }
  if (mean < 30.0) {
    const double u = uniform();
    double pmf = std::exp(static_cast<double>(trials) * std::log1p(-p));
    double cdf = pmf;
    std::int64_t k = 0;
    const double odds = p / (1.0 - p);
    while (u >= cdf && k < trials) {
      pmf *= static_cast<double>(trials - k) / static_cast<double>(k + 1) * odds;
      ++k;
      cdf += pmf;
    }
    return k;
  }
  const double draw = std::round(mean + std::sqrt(mean * (1.0 - p)) * normal());
  if (draw < 0.0) return 0;
  if (draw > static_cast<double>(trials)) return trials;
  return static_cast<std::int64_t>(draw);
}

namespace {

// One gap-walk round: -1, 0 or +1 drawn per the game definition.
std::int64_t gap_step(GameKind kind, double alpha, TrialRng& rng) {
  switch (kind) {
    case GameKind::ssle:
      return rng.bernoulli(alpha) ? 1 : -1;
    case GameKind::ple: {
      const bool adv = rng.poisson(alpha) > 0;
      const bool hon = rng.poisson(1.0 - alpha) > 0;
      if (adv && !hon) return 1;
      if (!adv && hon) return -1;
      return 0;
    }
    case GameKind::independent_ssle: {
      const bool adv = rng.bernoulli(alpha);
      const bool hon = rng.bernoulli(1.0 - alpha);
      if (adv && !hon) return 1;
      if (!adv && hon) return -1;
      return 0;
    }
  }
  throw std::logic_error("unknown game kind");
}

}  // namespace

std::int64_t simulate_gap_trajectory(GameKind kind, AdversaryPower alpha,
                                     std::int64_t horizon, TrialRng& rng) {
  if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  const double a = alpha.value();
  std::int64_t gap = 0;
  for (std::int64_t round = 0; round < horizon; ++round) gap += gap_step(kind, a, rng);
  return gap;
}

WinProbabilityEstimate estimate_win_probability(GameKind kind, AdversaryPower alpha,
                                                std::int64_t horizon,
                                                const SimConfig& config) {
  config.validate();
  if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  alpha.require_minority();
  const StepProbs sp = step_probs(kind, alpha);
  check_minority_drift(sp);

  std::int64_t extension =
      static_cast<std::int64_t>(std::llround(static_cast<double>(horizon) *
                                             config.catchup_horizon_multiplier));
  if (config.horizon > 0 && horizon + extension > config.horizon) {
    extension = std::max<std::int64_t>(0, config.horizon - horizon);
  }

  const double a = alpha.value();
  std::int64_t wins = 0;
#pragma omp parallel for schedule(static) reduction(+ : wins)
  for (std::int64_t t = 0; t < config.runs; ++t) {
    TrialRng rng(config.seed, static_cast<std::uint64_t>(t));
    std::int64_t gap = 0;
    for (std::int64_t round = 0; round < horizon; ++round) gap += gap_step(kind, a, rng);
    bool won = gap >= 0;
    for (std::int64_t round = 0; !won && round < extension; ++round) {
      gap += gap_step(kind, a, rng);
      won = gap >= 0;
    }
    wins += won ? 1 : 0;
  }

  const double mean = static_cast<double>(wins) / static_cast<double>(config.runs);
  const double se = std::sqrt(mean * (1.0 - mean) / static_cast<double>(config.runs));

  const double drift = sp.p_down - sp.p_up;
  const double log_r1 = std::log(sp.p_up) - std::log(sp.p_down);
  const double implied_deficit = std::max(1.0, drift * static_cast<double>(extension));
  const double bias_bound = std::exp(log_r1 * implied_deficit);
  return {{mean, se, config.runs}, extension, bias_bound};
}

GapHistogram estimate_gap_pmf(GameKind kind, AdversaryPower alpha, std::int64_t horizon,
                              const SimConfig& config) {
  config.validate();
  if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  const double a = alpha.value();
  std::vector<std::int64_t> counts(2 * horizon + 1, 0);

#pragma omp parallel
  {
    std::vector<std::int64_t> local(counts.size(), 0);
#pragma omp for schedule(static) nowait
    for (std::int64_t t = 0; t < config.runs; ++t) {
      TrialRng rng(config.seed, static_cast<std::uint64_t>(t));
      std::int64_t gap = 0;
      for (std::int64_t round = 0; round < horizon; ++round) gap += gap_step(kind, a, rng);
      ++local[static_cast<std::size_t>(gap + horizon)];
    }
#pragma omp critical
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += local[i];
  }
  return {horizon, config.runs, std::move(counts)};
}

double GapHistogram::probability(std::int64_t gap) const {
  if (gap < -horizon || gap > horizon) return 0.0;
  return static_cast<double>(counts[static_cast<std::size_t>(gap + horizon)]) /
         static_cast<double>(runs);
}

double GapHistogram::std_error(std::int64_t gap) const {
  const double p = probability(gap);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(runs));
}

McEstimate estimate_expected_gap(GameKind kind, AdversaryPower alpha, std::int64_t horizon,
                                 const SimConfig& config) {
  config.validate();
  if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  const double a = alpha.value();
  std::int64_t sum = 0;
  std::int64_t sum_sq = 0;
#pragma omp parallel for schedule(static) reduction(+ : sum, sum_sq)
  for (std::int64_t t = 0; t < config.runs; ++t) {
    TrialRng rng(config.seed, static_cast<std::uint64_t>(t));
    std::int64_t gap = 0;
    for (std::int64_t round = 0; round < horizon; ++round) gap += gap_step(kind, a, rng);
    sum += gap;
    sum_sq += gap * gap;
  }
  const double r = static_cast<double>(config.runs);
  const double mean = static_cast<double>(sum) / r;
  const double var =
      (static_cast<double>(sum_sq) - r * mean * mean) / std::max(1.0, r - 1.0);
  return {mean, std::sqrt(std::max(0.0, var) / r), config.runs};
}

std::int64_t simulate_brw_max(GameKind kind, AdversaryPower alpha, std::int64_t horizon,
                              std::int64_t saturation_cap, TrialRng& rng) {
  if (kind != GameKind::ssle && kind != GameKind::ple) {
    throw std::invalid_argument("branching random walks exist for ssle and ple only");
  }
  if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  if (saturation_cap < 1'000) {
    throw std::invalid_argument("saturation cap below 1000 rejected: bias too large");
  }
  const double a = alpha.value();
  // Probability a saturated source spawns nothing; underflows to 0 for any
  // realistic cap, making the advance deterministic.
  const double p_no_advance =
      kind == GameKind::ssle
          ? std::exp(static_cast<double>(saturation_cap) * std::log1p(-a))
          : std::exp(-a * static_cast<double>(saturation_cap));

  std::vector<std::int64_t> counts(static_cast<std::size_t>(horizon) + 1, 0);
  counts[0] = 1;  // position 0 holds the origin chain forever and never saturates
  std::int64_t front = 0;
  // Smallest position >= 1 still below the cap. Counts never decrease, so a
  // capped cell stays capped and its update is a no-op that can be skipped.
  std::int64_t lowest_active = 1;

  for (std::int64_t step = 0; step < horizon; ++step) {
    const std::int64_t top = std::min(front + 1, horizon);
    // Descending so every source count is still the previous step's value.
    for (std::int64_t v = top; v >= lowest_active; --v) {
      auto& cell = counts[static_cast<std::size_t>(v)];
      if (cell >= saturation_cap) continue;
      const std::int64_t source = counts[static_cast<std::size_t>(v - 1)];
      if (source == 0) continue;
      std::int64_t newcomers;
      if (source >= saturation_cap) {
        newcomers = saturation_cap;
        if (p_no_advance > 0.0 && rng.bernoulli(p_no_advance)) newcomers = 0;
      } else {
        newcomers = kind == GameKind::ssle
                        ? rng.binomial(source, a)
                        : rng.poisson(a * static_cast<double>(source));
      }
      if (newcomers == 0) continue;
      cell = std::min(cell + newcomers, saturation_cap);
      if (v > front) front = v;
    }
    while (lowest_active <= horizon &&
           counts[static_cast<std::size_t>(lowest_active)] >= saturation_cap) {
      ++lowest_active;
    }
  }
  return front;
}

BrwMaxHistogram estimate_brw_max(GameKind kind, AdversaryPower alpha, std::int64_t horizon,
                                 const SimConfig& config) {
  config.validate();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(horizon) + 1, 0);
#pragma omp parallel
  {
    std::vector<std::int64_t> local(counts.size(), 0);
#pragma omp for schedule(static) nowait
    for (std::int64_t t = 0; t < config.runs; ++t) {
      TrialRng rng(config.seed, static_cast<std::uint64_t>(t));
      const std::int64_t m =
          simulate_brw_max(kind, alpha, horizon, config.saturation_cap, rng);
      ++local[static_cast<std::size_t>(m)];
    }
#pragma omp critical
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += local[i];
  }
  return {horizon, config.runs, std::move(counts)};
}

double BrwMaxHistogram::cdf_below(std::int64_t j) const {
  std::int64_t below = 0;
  for (std::int64_t m = 0; m < j && m <= horizon; ++m) {
    below += counts[static_cast<std::size_t>(m)];
  }
  return static_cast<double>(below) / static_cast<double>(runs);
}

double BrwMaxHistogram::cdf_std_error(std::int64_t j) const {
  const double p = cdf_below(j);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(runs));
}

double BrwMaxHistogram::mean() const {
  double acc = 0.0;
  for (std::size_t m = 0; m < counts.size(); ++m) {
    acc += static_cast<double>(m) * static_cast<double>(counts[m]);
  }
  return acc / static_cast<double>(runs);
}

}  // namespace possec
