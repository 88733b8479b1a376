#include <benchmark/benchmark.h>

#include "koba/domain.hpp"
#include "koba/real_eval.hpp"

using namespace koba;

namespace {

void mc_kernel(benchmark::State& state, Backend backend) {
  const int N = static_cast<int>(state.range(0));
  const SVector s = diagonal_svector(N, -2.0 / (N - 1));
  EvalSettings st;
  st.samples_per_sector = 100'000;
  st.groups = 16;
  st.seed = 7;
  st.backend = backend;
  for (auto _ : state) benchmark::DoNotOptimize(eval_mc(s, Field::R, st));
  state.SetItemsProcessed(state.iterations() * st.samples_per_sector * (std::int64_t{1} << (N - 3)));
}

void BM_mc_serial(benchmark::State& state) { mc_kernel(state, Backend::serial); }
void BM_mc_openmp(benchmark::State& state) { mc_kernel(state, Backend::openmp); }

void membership(benchmark::State& state, bool parallel) {
  const int N = static_cast<int>(state.range(0));
  const InequalitySystem sys = enumerate_inequalities(N);
  const SVector s = diagonal_svector(N, -2.0 / (N - 1));
  for (auto _ : state)
    benchmark::DoNotOptimize(parallel ? check_membership(sys, s) : check_membership_serial(sys, s));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(sys.forms.size()));
}

void BM_membership_serial(benchmark::State& state) { membership(state, false); }
void BM_membership_openmp(benchmark::State& state) { membership(state, true); }

}  // namespace

BENCHMARK(BM_mc_serial)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_mc_openmp)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_membership_serial)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_membership_openmp)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMicrosecond)->UseRealTime();

BENCHMARK_MAIN();
