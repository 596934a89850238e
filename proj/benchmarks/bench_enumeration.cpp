#include "pinwheel/enumeration.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace pinwheel;

void BM_EnumerateScaled(benchmark::State& state) {
    EnumerationOptions opts;
    opts.threshold_override = parse_rational("13/10");
    opts.max_agents = static_cast<int>(state.range(0));
    long long count = 0;
    for (auto _ : state) {
        count = enumerate_essential_raw(nullptr, opts).count;
        benchmark::DoNotOptimize(count);
    }
    state.counters["instances"] = static_cast<double>(count);
}
BENCHMARK(BM_EnumerateScaled)->Arg(6)->Arg(7)->Arg(8)->Unit(benchmark::kMicrosecond);

// The full campaign universe; roughly 25 million emissions per iteration.
void BM_EnumerateFullUniverse(benchmark::State& state) {
    for (auto _ : state) {
        const auto result = enumerate_essential_raw(nullptr, EnumerationOptions{});
        benchmark::DoNotOptimize(result.count);
    }
}
BENCHMARK(BM_EnumerateFullUniverse)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace
