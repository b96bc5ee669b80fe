// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "waringlab/kernels.hpp"
#include "waringlab/random.hpp"

using namespace waringlab;

namespace {

HomogeneousPoly random_form(int nv, int d, int terms, Seed seed) {
  auto rng = make_rng(seed);
  HomogeneousPoly f(nv, d);
  for (int i = 0; i < terms; ++i) {
    f = f + power_of_linear(LinearForm(complex_gaussian(rng, nv)), d);
  }
  return f;
}

std::vector<Vector> lm_starts(int count, int params, Seed seed) {
  std::vector<Vector> out;
  for (int i = 0; i < count; ++i) {
    auto rng = make_rng(seed, {static_cast<std::uint64_t>(i)});
    out.push_back(complex_gaussian(rng, params) * 0.8);
  }
  return out;
}

void BM_Lm(benchmark::State& state, Exec exec) {
  const auto f = random_form(3, 5, 7, 11);
  const kernels::PowerSumProblem problem(3, 5, 7, f.coeffs() / f.norm());
  const auto starts = lm_starts(static_cast<int>(state.range(0)), 21, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::lm_batch(problem, starts, {}, exec));
  }
}

void BM_SubsetScan(benchmark::State& state, Exec exec) {
  auto rng = make_rng(3);
  DenseMatrix rows(static_cast<Eigen::Index>(state.range(0)), 4);
  for (Eigen::Index i = 0; i < rows.rows(); ++i) rows.row(i) = complex_gaussian(rng, 4).transpose();
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::rank_deficient_subsets(rows, 6, 3, 1e-6, exec));
  }
}

void BM_Newton(benchmark::State& state, Exec exec) {
  // Two random quadrics and a cubic in P^3: 12 isolated solutions.
  std::vector<HomogeneousPoly> eqs;
  auto rng = make_rng(7);
  for (int d : {2, 2, 3}) {
    HomogeneousPoly f(4, d);
    eqs.emplace_back(4, d, complex_gaussian(rng, static_cast<Eigen::Index>(f.size())));
  }
  const kernels::CompiledSystem sys(eqs);
  std::vector<kernels::NewtonStart> starts;
  const Vector chart = complex_gaussian(rng, 4);
  for (int i = 0; i < state.range(0); ++i) {
    Vector z = complex_gaussian(rng, 4);
    starts.push_back({chart, z / cplx(chart.transpose() * z)});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::newton_batch(sys, starts, {}, exec));
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_Lm, serial, Exec::serial)->Arg(16);
BENCHMARK_CAPTURE(BM_Lm, omp, Exec::parallel)->Arg(16);
BENCHMARK_CAPTURE(BM_SubsetScan, serial, Exec::serial)->Arg(10)->Arg(14);
BENCHMARK_CAPTURE(BM_SubsetScan, omp, Exec::parallel)->Arg(10)->Arg(14);
BENCHMARK_CAPTURE(BM_Newton, serial, Exec::serial)->Arg(256);
BENCHMARK_CAPTURE(BM_Newton, omp, Exec::parallel)->Arg(256);

BENCHMARK_MAIN();
