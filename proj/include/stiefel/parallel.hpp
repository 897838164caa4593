#pragma once

// Embarrassingly parallel loops, each with an OpenMP kernel and the serial
// reference it is tested against. Results are independent of thread count.

#include <cstdint>
#include <vector>

#include "stiefel/harness.hpp"

namespace stiefel::parallel {

/// Trial k uses seed s.seed + k.
std::vector<TrialSummary> run_trials(const Scenario& s, std::size_t trials);
std::vector<TrialSummary> run_trials_serial(const Scenario& s,
                                            std::size_t trials);

struct PairSample {
  double value = 0.0;
  std::size_t index = 0;
  Matrix x;
  Matrix y;
};

/// Pairs are drawn in blocks of kPairBlock, block b from Rng(seed + b).
inline constexpr std::size_t kPairBlock = 1024;

/// Largest f_bound over `samples` Haar pairs on St(p,n); ties go to the
/// smallest sample index.
PairSample sample_f_max(Eigen::Index n, Eigen::Index p, std::size_t samples,
                        std::uint64_t seed);
PairSample sample_f_max_serial(Eigen::Index n, Eigen::Index p,
                               std::size_t samples, std::uint64_t seed);

/// Number of OpenMP threads available (1 without OpenMP).
int max_threads();

}  // namespace stiefel::parallel
