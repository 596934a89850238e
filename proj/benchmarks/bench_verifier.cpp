#include "pinwheel/folding.hpp"
#include "pinwheel/state_engine.hpp"
#include "pinwheel/verifier.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace pinwheel;

FlatSchedule example_21_day() {
    FlatSchedule s;
    s.agent_count = 5;
    s.days = {0, 1, 2, 0, 3, 4, 1, 0, 2, 3, 0, 1, 4, 2, 0, 3, 1, 0, 2, 4, 3};
    return s;
}

void BM_VerifyPeriodic21(benchmark::State& state) {
    const Instance a = parse_instance("3,5,5,5,7");
    const FlatSchedule s = example_21_day();
    for (auto _ : state) {
        auto v = verify_periodic(a, s);
        benchmark::DoNotOptimize(v.has_value());
    }
}
BENCHMARK(BM_VerifyPeriodic21);

// Verification cost on a lift-composed certificate, the per-instance cost the
// campaign pays for its inline audit.
void BM_VerifyLiftedCertificate(benchmark::State& state) {
    const Instance a = parse_instance("3,3,5,6,9,12,14,14,15");
    const auto r = interleaved_check(a);
    if (r.verdict != CheckResult::Verdict::Schedulable) {
        state.SkipWithError("expected a schedulable instance");
        return;
    }
    for (auto _ : state) {
        auto v = verify_periodic(a, r.schedule);
        benchmark::DoNotOptimize(v.has_value());
    }
    state.counters["cycle_days"] = static_cast<double>(r.schedule.cycle_length());
}
BENCHMARK(BM_VerifyLiftedCertificate);

}  // namespace
