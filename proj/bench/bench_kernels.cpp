#include <benchmark/benchmark.h>

#include "pnull/constructions.hpp"
#include "pnull/kernels.hpp"

using namespace pnull;

namespace {

void BM_TraceSerial(benchmark::State& state) {
    const Tree& p = named_tree(Named::FULL);
    const Tree& x = named_tree(Named::Q);
    const auto depth = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::trace_histograms(p, x, depth));
}

void BM_TraceParallel(benchmark::State& state) {
    const Tree& p = named_tree(Named::FULL);
    const Tree& x = named_tree(Named::Q);
    const auto depth = static_cast<std::size_t>(state.range(0));
    const int threads = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::parallel::trace_histograms(p, x, depth, threads));
}

void BM_ProductSerial(benchmark::State& state) {
    const auto depth = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::serial::product_check(named_tree(Named::Q), named_tree(Named::PJ), depth));
    }
}

void BM_ProductParallel(benchmark::State& state) {
    const auto depth = static_cast<std::size_t>(state.range(0));
    const int threads = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            kernels::parallel::product_check(named_tree(Named::Q), named_tree(Named::PJ), depth, threads));
    }
}

}  // namespace

BENCHMARK(BM_TraceSerial)->Arg(18)->Arg(22)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TraceParallel)->ArgsProduct({{18, 22}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ProductSerial)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProductParallel)->ArgsProduct({{16, 20}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
