#include <benchmark/benchmark.h>

#include "e6/lattice.hpp"
#include "e6/surface.hpp"
#include "e6/torsor.hpp"

using namespace e6;

static void BM_TorsorCount(benchmark::State & state)
{
    FieldContext ctx = make_field(-1);
    Rat B(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(torsor_count_N(ctx, B));
}
BENCHMARK(BM_TorsorCount)->Arg(25)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_DirectCount(benchmark::State & state)
{
    FieldContext ctx = make_field(-1);
    Rat B(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_N_direct(ctx, B));
}
BENCHMARK(BM_DirectCount)->Arg(25)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_TorsorCountClassNumberTwo(benchmark::State & state)
{
    FieldContext ctx = make_field(-5);
    Rat B(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(torsor_count_N(ctx, B));
}
BENCHMARK(BM_TorsorCountClassNumberTwo)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_DiscCount(benchmark::State & state)
{
    Field K(-1);
    FracIdeal O(Ideal::unit());
    Rat t(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(disc_count(K, O, t));
}
BENCHMARK(BM_DiscCount)->Arg(10000)->Arg(1000000)->Arg(100000000);

static void BM_QrCircleCount(benchmark::State & state)
{
    Field K(-1);
    CircleQuery Q{FracIdeal(Ideal::unit()), principal_ideal(K, AlgNum(7)), AlgNum(1), Rat(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(qr_circle_count(K, Q));
}
BENCHMARK(BM_QrCircleCount)->Arg(10000)->Arg(1000000);
