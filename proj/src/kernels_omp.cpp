#include <omp.h>

#include "waringlab/kernels.hpp"

namespace waringlab::kernels {

// Each item writes only its own slot; order of the returned vectors matches
// the serial reference exactly.

std::vector<NewtonOutcome> newton_batch_omp(const CompiledSystem& sys,
                                            std::span<const NewtonStart> starts,
                                            const NewtonSettings& settings) {
  std::vector<NewtonOutcome> out(starts.size());
  const auto n = static_cast<long>(starts.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        newton_solve(sys, starts[static_cast<std::size_t>(i)], settings);
  }
  return out;
}

std::vector<LmOutcome> lm_batch_omp(const PowerSumProblem& problem,
                                    std::span<const Vector> starts,
                                    const LmSettings& settings) {
  std::vector<LmOutcome> out(starts.size());
  const auto n = static_cast<long>(starts.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        lm_power_sum(problem, starts[static_cast<std::size_t>(i)], settings);
  }
  return out;
}

std::vector<HomotopyOutcome> track_paths_omp(const TotalDegreeHomotopy& hom) {
  std::vector<HomotopyOutcome> out(static_cast<std::size_t>(hom.num_paths()));
  const long n = hom.num_paths();
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = hom.track(static_cast<int>(i));
  }
  return out;
}

std::vector<std::vector<int>> rank_deficient_subsets_omp(
    const DenseMatrix& rows, int k, int target_rank, double tol) {
  const auto all = combinations(static_cast<int>(rows.rows()), k);
  std::vector<char> keep(all.size(), 0);
  const auto n = static_cast<long>(all.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    keep[static_cast<std::size_t>(i)] =
        subset_has_rank(rows, all[static_cast<std::size_t>(i)], target_rank, tol);
  }
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (keep[i]) out.push_back(all[i]);
  }
  return out;
}

}  // namespace waringlab::kernels
