#include "pinwheel/folding.hpp"
#include "pinwheel/instance.hpp"
#include "pinwheel/state_engine.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace pinwheel;

void BM_CheckBk(benchmark::State& state) {
    const Instance bk = generate_bk(static_cast<int>(state.range(0)));
    const auto gi = GroupedInstance::from_instance(bk);
    std::uint64_t states_total = 0;
    for (auto _ : state) {
        CycleSearch search(gi);
        while (search.run(1u << 16) == CycleSearch::Status::Running) {
        }
        benchmark::DoNotOptimize(search.status());
        states_total += search.states_visited();
    }
    state.counters["states"] =
        benchmark::Counter(static_cast<double>(states_total), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_CheckBk)->DenseRange(3, 7)->Unit(benchmark::kMicrosecond);

void BM_CheckCounterexample(benchmark::State& state) {
    const Instance a = parse_instance("3,4,10,10,10,12,13,17");
    const auto gi = GroupedInstance::from_instance(a);
    for (auto _ : state) {
        CycleSearch search(gi);
        while (search.run(1u << 16) == CycleSearch::Status::Running) {
        }
        benchmark::DoNotOptimize(search.status());
    }
}
BENCHMARK(BM_CheckCounterexample)->Unit(benchmark::kMillisecond);

void BM_InterleavedCheck(benchmark::State& state) {
    const Instance a = parse_instance("3,3,5,6,9,12,14,14,15");
    for (auto _ : state) {
        auto r = interleaved_check(a);
        benchmark::DoNotOptimize(r.verdict);
    }
}
BENCHMARK(BM_InterleavedCheck)->Unit(benchmark::kMicrosecond);

void BM_FoldCascade(benchmark::State& state) {
    const Instance a = parse_instance("3,4,5,6,7,8,9,11,12,13,14,15,16,17,18,19,20");
    for (auto _ : state) {
        auto cascade = fold_cascade(a);
        benchmark::DoNotOptimize(cascade.size());
    }
}
BENCHMARK(BM_FoldCascade);

}  // namespace

BENCHMARK_MAIN();
