#include <benchmark/benchmark.h>

#include "e6/constants.hpp"

using namespace e6;

static void BM_OmegaPlain(benchmark::State & state)
{
    for (auto _ : state) benchmark::DoNotOptimize(omega_plain(1, state.range(0)));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OmegaPlain)->Arg(1 << 17)->Unit(benchmark::kMillisecond);

static void BM_OmegaSlice(benchmark::State & state)
{
    for (auto _ : state) benchmark::DoNotOptimize(omega_slice(1, state.range(0)));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OmegaSlice)->Arg(1 << 15)->Unit(benchmark::kMillisecond);

static void BM_RootSliceArea(benchmark::State & state)
{
    double c = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(root_slice_area(c, 1.0, 1.1));
        c = c < 2 ? c + 1e-3 : 0.3;
    }
}
BENCHMARK(BM_RootSliceArea);

static void BM_EulerProduct(benchmark::State & state)
{
    Field K(-1);
    for (auto _ : state) benchmark::DoNotOptimize(euler_product(K, state.range(0)));
}
BENCHMARK(BM_EulerProduct)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_V0prime(benchmark::State & state)
{
    for (auto _ : state) benchmark::DoNotOptimize(v0prime(1e4, 1, state.range(0)));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_V0prime)->Arg(1 << 15)->Unit(benchmark::kMillisecond);
