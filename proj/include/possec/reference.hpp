#pragma once

#include <cstdint>
#include <vector>

#include "possec/grinding.hpp"
#include "possec/montecarlo.hpp"
#include "possec/private_game.hpp"

/// Plain serial implementations kept alongside the OpenMP kernels. They
/// follow the defining formulas directly (the win probability literally
/// assembles gap masses and catch-up powers) and back the parity tests and
/// the serial-versus-parallel benchmark.
namespace possec::reference {

/// Serial per-gap evaluation of the lazy-walk pmf mixture.
GapPmf gap_pmf_ple(AdversaryPower alpha, std::int64_t horizon,
                   GameKind kind = GameKind::ple);

/// Definitional assembly: sum_{v in [-n, n]} Pr[G_n = v] * (v < 0 ? r_|v| : 1),
/// iterating every v and relying on the binomial pmf's zero rule for parity
/// gaps, unlike the production route's explicit parity-stepped tails.
WinProbability win_probability(GameKind kind, AdversaryPower alpha, std::int64_t horizon);

/// Serial row-by-row table fill.
GrindingTable grinding_table(GameKind kind, AdversaryPower alpha, std::int64_t horizon);

/// Serial b-curve.
std::vector<LogProb> grinding_win_curve(GameKind kind, AdversaryPower alpha,
                                        std::int64_t horizon);

/// Serial trial loop with the same per-trial streams as the parallel
/// estimator; results must match it bit for bit.
WinProbabilityEstimate estimate_win_probability(GameKind kind, AdversaryPower alpha,
                                                std::int64_t horizon,
                                                const SimConfig& config);

GapHistogram estimate_gap_pmf(GameKind kind, AdversaryPower alpha, std::int64_t horizon,
                              const SimConfig& config);

}  // namespace possec::reference
