// Reductions that make large instances tractable: folding (replace the two
// largest periods by min{a_{k-1}, ceil(a_k/2)}) with schedule lifting, the
// interleaved fold-cascade search, and the power-of-two layered reduction
// with its explicit schedule construction.
#pragma once

#include "pinwheel/instance.hpp"
#include "pinwheel/schedule.hpp"
#include "pinwheel/state_engine.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace pinwheel {

// Replaces the two largest periods by min{a_{k-1}, ceil(a_k / 2)}.
// Schedulability of the fold implies schedulability of the original; the
// converse can fail, so an unschedulable fold is inconclusive.
Instance fold_once(const Instance& a);

// A, fold_once(A), fold_once^2(A), ... down to a single agent.
std::vector<Instance> fold_cascade(const Instance& a);

// Transforms a schedule for fold_once(original) into one for original: the two
// replaced agents take turns in the merged agent's slots (cycle doubled when
// the per-cycle slot count is odd, so alternation closes). When the merged
// period equals a_{k-1} and 2*a_{k-1} < a_k, alternation would overwork the
// period-a_k agent; that agent stays idle instead and a_{k-1} takes every
// slot. `swap_pair` flips which replaced agent takes the first slot.
FlatSchedule lift_fold_schedule(const FlatSchedule& folded_schedule, const Instance& original,
                                bool swap_pair = false);

struct PrefixNotLayerableError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct EmptyReductionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Strips p power-of-two layers: p is the least nonnegative integer such that
// the instance has no period in [2^p + 1, 2^{p+1}], the prefix periods must
// lie in their dyadic intervals [2^{i-1}+1, 2^i], and the base instance is
// b_i = ceil(a_{p+i} / 2^p).
struct LayeredReduction {
    int p = 0;
    std::vector<long long> prefix;  // a_1 .. a_p
    Instance base;
};

// Throws PrefixNotLayerableError when some a_i (i <= p) is outside its dyadic
// interval or a_1 < 2; throws EmptyReductionError when every agent is in the
// prefix (k <= p).
LayeredReduction power_two_reduce(const Instance& a);

// Layer agent i works exactly on days t = 2^{i-1} (mod 2^i); days divisible by
// 2^p delegate to the base schedule. Cycle length 2^p * L_base.
FlatSchedule layered_lift(const LayeredReduction& red, const FlatSchedule& base_schedule);

struct CheckResult {
    enum class Verdict { Schedulable, Unschedulable, Exhausted };
    Verdict verdict = Verdict::Exhausted;
    // Schedulable: a verifier-checked flat schedule for the queried instance,
    // its grouped label form, and the engine preperiod when the instance
    // itself (cascade member 0) was the proving member.
    FlatSchedule schedule;
    GroupedSchedule cycle;
    std::vector<long long> preperiod;
    std::optional<int> proving_member;
    GroupedSchedule proving_cycle;  // the proving member's own engine cycle
    long long max_coverage_days = 0;       // Unschedulable
    BudgetKind budget_kind = BudgetKind::States;  // Exhausted
    std::uint64_t states_expanded = 0;
};

struct InterleaveOptions {
    SearchOptions search;               // budgets apply to all members combined
    std::uint64_t slice_states = 4096;  // states expanded per member per turn
};

// Runs the cycle search on every cascade member in deterministic round-robin
// slices. Schedulable as soon as any member is (the schedule is lifted back up
// and verified); Unschedulable only when member 0 itself exhausts acyclically
// -- a folded member's unschedulability merely drops it from the rotation.
CheckResult interleaved_check(const Instance& a, const InterleaveOptions& opts = {});

}  // namespace pinwheel
