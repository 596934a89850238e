// Symmetry-reduced state transition graph and its cycle-detecting search.
//
// A state assigns each agent its cooldown: the number of further days it must
// wait before it may work. Employing an agent on a day resets its counter to
// period - 1 while every other counter decrements (floor 0). An instance is
// schedulable exactly when the transition graph has a cycle, and searching
// only the subgraph reachable from the all-zeros state suffices: all-zeros
// dominates every state componentwise, and a dominating state can replay any
// play of a dominated one, so a cycle anywhere implies an infinite play, and
// hence a repeated state, starting from all-zeros. The same argument makes
// the longest path from all-zeros the maximum number of coverable days when
// the reachable subgraph is acyclic.
//
// Agents sharing a period are interchangeable, so states keep each period
// group's counters sorted non-increasing and always employ the group's least
// recently employed member (the zero counter). This shrinks both the vertex
// set and the out-degree to one edge per group.
#pragma once

#include "pinwheel/instance.hpp"
#include "pinwheel/schedule.hpp"

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace pinwheel {

struct GroupedInstance {
    struct Group {
        long long period;
        int count;
    };
    std::vector<Group> groups;  // strictly increasing periods

    static GroupedInstance from_instance(const Instance& a);
    Instance to_instance() const;
    int agent_count() const;
    // First flat agent index of group g in the canonical instance order.
    int group_base(int g) const;
    int group_of_period(long long period) const;  // throws if absent
};

// Canonical state: counters in group-major order, each group's slice sorted
// non-increasing.
struct GroupedState {
    std::vector<std::uint32_t> counters;
    bool operator==(const GroupedState& o) const { return counters == o.counters; }
};

GroupedState initial_state(const GroupedInstance& gi);

// One successor per group with an available (zero) counter; label is the
// employed group's period. Returned in engine order (largest period first).
std::vector<std::pair<long long, GroupedState>> successors(const GroupedInstance& gi,
                                                           const GroupedState& s);

struct SearchOptions {
    std::uint64_t max_states = std::uint64_t{1} << 28;
    double max_seconds = std::numeric_limits<double>::infinity();
    bool largest_period_first = true;  // successor ordering
};

enum class BudgetKind { States, Time };

struct Schedulable {
    std::vector<long long> preperiod;  // group labels from the all-zeros state
    GroupedSchedule cycle;             // nonempty repeating pattern
};
struct Unschedulable {
    long long max_coverage_days;  // longest path from the all-zeros state
};
struct Exhausted {
    BudgetKind kind;
};
using SearchOutcome = std::variant<Schedulable, Unschedulable, Exhausted>;

SearchOutcome check_schedulable(const GroupedInstance& gi, const SearchOptions& opts = {});
SearchOutcome check_schedulable(const Instance& a, const SearchOptions& opts = {});

// days is exact when truncated == false; with a horizon h the search stops as
// soon as some path reaches h covered days and reports days == h.
struct Coverage {
    bool infinite = false;
    bool truncated = false;
    long long days = 0;
};
Coverage max_coverage_days(const GroupedInstance& gi,
                           std::optional<long long> horizon = std::nullopt,
                           const SearchOptions& opts = {});

// The repeating pattern of a Schedulable outcome; throws on any other outcome.
GroupedSchedule extract_schedule(const SearchOutcome& outcome);

// Distributes each group's occurrences round-robin among its agents,
// repeating the grouped cycle as needed so the rotation closes.
FlatSchedule expand_round_robin(const GroupedSchedule& gs, const GroupedInstance& gi);

// Resumable search, used directly by the interleaved fold-cascade driver.
class CycleSearch {
public:
    explicit CycleSearch(const GroupedInstance& gi, bool largest_period_first = true);
    ~CycleSearch();
    CycleSearch(CycleSearch&&) noexcept;
    CycleSearch& operator=(CycleSearch&&) noexcept;

    enum class Status { Running, FoundCycle, Acyclic };

    // Advances the search until finished or `max_new_states` more states have
    // been inserted. Never throws on budget; the caller owns budget policy.
    Status run(std::uint64_t max_new_states);
    Status status() const;
    std::uint64_t states_visited() const;
    const Schedulable& certificate() const;  // valid when FoundCycle
    long long max_coverage() const;          // valid when Acyclic

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Cross-validation oracle over the full per-agent state space (no symmetry
// reduction, out-degree = one edge per available agent).
struct NaiveOutcome {
    enum class Verdict { Schedulable, Unschedulable, Exhausted };
    Verdict verdict;
    FlatSchedule cycle;                // valid when Schedulable
    std::vector<int> preperiod;        // agent labels, valid when Schedulable
    long long max_coverage_days = 0;   // valid when Unschedulable
    BudgetKind budget_kind = BudgetKind::States;
};
NaiveOutcome naive_check(const Instance& a, const SearchOptions& opts = {});

}  // namespace pinwheel
