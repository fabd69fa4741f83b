// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <memory>

#include "eam/fermion.hpp"
#include "eam/metric.hpp"
#include "eam/reference.hpp"
#include "eam/solver.hpp"
#include "eam/spin.hpp"

namespace {

eam::EntropyFn fermion_entropy(int n) {
  auto corr = std::make_shared<eam::CorrelationMatrix>(
      eam::ground_state_correlation(eam::build_hopping({}, n, eam::Boundary::antiperiodic)));
  return [corr](const eam::BlockMask& m) { return eam::fermion_block_entropy(*corr, m); };
}

void BM_TableSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto fn = fermion_entropy(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eam::reference::build_table(fn, n, eam::SampleSpec::exhaustive()));
  }
}

void BM_TableParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto fn = fermion_entropy(n);
  for (auto _ : state) benchmark::DoNotOptimize(eam::build_table(fn, n, eam::SampleSpec::exhaustive()));
}

void BM_RhsSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto t = eam::build_table(fermion_entropy(n), n, eam::SampleSpec::exhaustive());
  for (auto _ : state) benchmark::DoNotOptimize(eam::reference::design_rhs(t, false));
}

void BM_RhsParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto t = eam::build_table(fermion_entropy(n), n, eam::SampleSpec::exhaustive());
  for (auto _ : state) benchmark::DoNotOptimize(eam::design_rhs(t, false));
}

template <bool Parallel>
void BM_Xxz(benchmark::State& state) {
  const eam::SpinHamiltonian ham{static_cast<int>(state.range(0)), 0.5, 24};
  const std::size_t dim = std::size_t{1} << ham.n_sites;
  std::vector<double> in(dim, 1.0 / std::sqrt(static_cast<double>(dim))), out(dim);
  for (auto _ : state) {
    if constexpr (Parallel) {
      eam::apply_xxz(ham, in, out);
    } else {
      eam::reference::apply_xxz(ham, in, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
}

Eigen::MatrixXd random_weights(int n) {
  eam::SplitMix64 rng(3);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) w(i, j) = w(j, i) = 0.1 + static_cast<double>(rng.below(1000)) / 100.0;
  }
  return w;
}

void BM_FloydSerial(benchmark::State& state) {
  const auto w = random_weights(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eam::reference::shortest_paths(w));
}

void BM_FloydParallel(benchmark::State& state) {
  const auto w = random_weights(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eam::shortest_paths(w));
}

}  // namespace

BENCHMARK(BM_TableSerial)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TableParallel)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RhsSerial)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RhsParallel)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Xxz<false>)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Xxz<true>)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FloydSerial)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FloydParallel)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
