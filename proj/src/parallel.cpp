#include "stiefel/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <exception>
#include <limits>

#include "stiefel/stability.hpp"

namespace stiefel::parallel {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<TrialSummary> run_trials(const Scenario& s, std::size_t trials) {
  std::vector<TrialSummary> out(trials);
  std::exception_ptr failure;
  const auto count = static_cast<long long>(trials);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long k = 0; k < count; ++k) {
    try {
      out[static_cast<std::size_t>(k)] =
          run_trial(s, s.seed + static_cast<std::uint64_t>(k));
    } catch (...) {
#pragma omp critical(stiefel_trial_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<TrialSummary> run_trials_serial(const Scenario& s,
                                            std::size_t trials) {
  std::vector<TrialSummary> out;
  out.reserve(trials);
  for (std::size_t k = 0; k < trials; ++k) {
    out.push_back(run_trial(s, s.seed + k));
  }
  return out;
}

namespace {

// Scans block b of the pair stream and folds its best pair into `best`.
void scan_block(Eigen::Index n, Eigen::Index p, std::size_t samples,
                std::uint64_t seed, std::size_t block, PairSample& best,
                bool& have) {
  Rng rng(seed + block);
  const std::size_t begin = block * kPairBlock;
  const std::size_t end = std::min(samples, begin + kPairBlock);
  for (std::size_t k = begin; k < end; ++k) {
    const StiefelPoint x = haar_sample(n, p, rng);
    const StiefelPoint y = haar_sample(n, p, rng);
    const double v = f_bound(x, y);
    if (!have || v > best.value || (v == best.value && k < best.index)) {
      best = PairSample{v, k, x.data(), y.data()};
      have = true;
    }
  }
}

bool better(const PairSample& a, const PairSample& b) {
  return a.value > b.value || (a.value == b.value && a.index < b.index);
}

}  // namespace

PairSample sample_f_max(Eigen::Index n, Eigen::Index p, std::size_t samples,
                        std::uint64_t seed) {
  if (samples == 0) throw Error("sample_f_max: need at least one sample");
  const auto blocks = static_cast<long long>((samples + kPairBlock - 1) / kPairBlock);
  PairSample global;
  bool global_have = false;
#pragma omp parallel
  {
    PairSample local;
    bool have = false;
#pragma omp for schedule(static)
    for (long long b = 0; b < blocks; ++b) {
      scan_block(n, p, samples, seed, static_cast<std::size_t>(b), local, have);
    }
#pragma omp critical(stiefel_pair_reduce)
    if (have && (!global_have || better(local, global))) {
      global = local;
      global_have = true;
    }
  }
  return global;
}

PairSample sample_f_max_serial(Eigen::Index n, Eigen::Index p,
                               std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw Error("sample_f_max: need at least one sample");
  PairSample best;
  bool have = false;
  const std::size_t blocks = (samples + kPairBlock - 1) / kPairBlock;
  for (std::size_t b = 0; b < blocks; ++b) scan_block(n, p, samples, seed, b, best, have);
  return best;
}

}  // namespace stiefel::parallel
