#include "pinwheel/folding.hpp"

#include "pinwheel/verifier.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <memory>
#include <sstream>

namespace pinwheel {

Instance fold_once(const Instance& a) {
    const auto& periods = a.periods();
    const int k = a.agent_count();
    if (k < 2) {
        throw std::invalid_argument("folding needs at least two agents");
    }
    const long long largest = periods[static_cast<std::size_t>(k - 1)];
    const long long second = periods[static_cast<std::size_t>(k - 2)];
    const long long merged = std::min(second, (largest + 1) / 2);
    std::vector<long long> rest(periods.begin(), periods.end() - 2);
    rest.push_back(merged);
    return Instance(std::move(rest));
}

std::vector<Instance> fold_cascade(const Instance& a) {
    std::vector<Instance> members{a};
    while (members.back().agent_count() >= 2) {
        members.push_back(fold_once(members.back()));
    }
    return members;
}

FlatSchedule lift_fold_schedule(const FlatSchedule& folded_schedule, const Instance& original,
                                bool swap_pair) {
    const int k = original.agent_count();
    if (k < 2) {
        throw std::invalid_argument("lift target must have at least two agents");
    }
    if (folded_schedule.days.empty()) {
        throw std::invalid_argument("folded schedule cycle must be nonempty");
    }
    if (folded_schedule.agent_count != k - 1) {
        throw std::invalid_argument("schedule does not match the folded instance");
    }
    const auto& periods = original.periods();
    const long long largest = periods[static_cast<std::size_t>(k - 1)];
    const long long second = periods[static_cast<std::size_t>(k - 2)];
    const long long merged_period = std::min(second, (largest + 1) / 2);
    // Position of the merged agent in the canonical folded instance.
    const auto prefix_end = periods.begin() + (k - 2);
    const int merged_index =
        static_cast<int>(std::lower_bound(periods.begin(), prefix_end, merged_period) -
                         periods.begin());
    long long merged_slots = 0;
    for (int d : folded_schedule.days) {
        if (d == merged_index) ++merged_slots;
    }
    // Alternation gives both replaced agents gaps >= 2 * merged_period; that
    // covers a_k only when 2 * merged_period >= a_k. Otherwise the merged
    // period equals a_{k-1} and the a_{k-1} agent alone can take every slot.
    const bool alternate = 2 * merged_period >= largest;
    const int reps = (alternate && merged_slots % 2 != 0) ? 2 : 1;
    FlatSchedule out;
    out.agent_count = k;
    out.days.reserve(folded_schedule.days.size() * static_cast<std::size_t>(reps));
    long long slot = 0;
    for (int rep = 0; rep < reps; ++rep) {
        for (int d : folded_schedule.days) {
            if (d < merged_index) {
                out.days.push_back(d);
            } else if (d > merged_index) {
                // The merged period was inserted at merged_index, shifting the
                // remaining prefix agents one slot to the right.
                out.days.push_back(d - 1);
            } else if (!alternate) {
                out.days.push_back(k - 2);
            } else {
                const long long which = (slot + (swap_pair ? 1 : 0)) % 2;
                out.days.push_back(k - 2 + static_cast<int>(which));
                ++slot;
            }
        }
    }
    return out;
}

LayeredReduction power_two_reduce(const Instance& a) {
    const auto& periods = a.periods();
    const int k = a.agent_count();
    if (periods.front() < 2) {
        throw PrefixNotLayerableError("layered reduction requires every period >= 2");
    }
    int p = 0;
    for (;;) {
        const long long lo = (1LL << p) + 1;
        const long long hi = 2LL << p;
        const auto it = std::lower_bound(periods.begin(), periods.end(), lo);
        if (it == periods.end() || *it > hi) break;
        ++p;
        if (p > 61) {
            throw std::invalid_argument("periods exceed the supported layering range");
        }
    }
    for (int i = 1; i <= p && i <= k; ++i) {
        const long long v = periods[static_cast<std::size_t>(i - 1)];
        const long long lo = (1LL << (i - 1)) + 1;
        const long long hi = 1LL << i;
        if (v < lo || v > hi) {
            std::ostringstream msg;
            msg << "prefix period " << v << " lies outside [" << lo << ", " << hi << "]";
            throw PrefixNotLayerableError(msg.str());
        }
    }
    if (k <= p) {
        throw EmptyReductionError("every agent belongs to the layer prefix (k <= p)");
    }
    std::vector<long long> prefix(periods.begin(), periods.begin() + p);
    std::vector<long long> base;
    base.reserve(static_cast<std::size_t>(k - p));
    for (int i = p; i < k; ++i) {
        const long long v = periods[static_cast<std::size_t>(i)];
        base.push_back((v + (1LL << p) - 1) >> p);
    }
    return LayeredReduction{p, std::move(prefix), Instance(std::move(base))};
}

FlatSchedule layered_lift(const LayeredReduction& red, const FlatSchedule& base_schedule) {
    if (base_schedule.days.empty()) {
        throw std::invalid_argument("base schedule cycle must be nonempty");
    }
    if (base_schedule.agent_count != red.base.agent_count()) {
        throw std::invalid_argument("schedule does not match the reduction base");
    }
    if (red.p == 0) {
        return base_schedule;
    }
    const long long two_p = 1LL << red.p;
    const long long length = two_p * static_cast<long long>(base_schedule.days.size());
    if (length > 100'000'000LL) {
        throw std::runtime_error("layered lift cycle too large");
    }
    FlatSchedule out;
    out.agent_count = red.p + red.base.agent_count();
    out.days.reserve(static_cast<std::size_t>(length));
    for (long long t = 0; t < length; ++t) {
        if (t % two_p == 0) {
            out.days.push_back(red.p + base_schedule.days[static_cast<std::size_t>(t / two_p)]);
        } else {
            // t = 2^{i-1} (mod 2^i) exactly when t has i-1 trailing zero bits.
            const int i = std::countr_zero(static_cast<unsigned long long>(t)) + 1;
            out.days.push_back(i - 1);
        }
    }
    return out;
}

CheckResult interleaved_check(const Instance& a, const InterleaveOptions& opts) {
    const std::vector<Instance> cascade = fold_cascade(a);
    std::vector<GroupedInstance> grouped;
    grouped.reserve(cascade.size());
    std::vector<std::unique_ptr<CycleSearch>> searches;
    searches.reserve(cascade.size());
    for (const Instance& member : cascade) {
        grouped.push_back(GroupedInstance::from_instance(member));
        searches.push_back(std::make_unique<CycleSearch>(grouped.back(),
                                                         opts.search.largest_period_first));
    }
    std::vector<bool> active(cascade.size(), true);
    const auto start = std::chrono::steady_clock::now();

    auto total_states = [&]() {
        std::uint64_t total = 0;
        for (const auto& s : searches) total += s->states_visited();
        return total;
    };

    auto finish_schedulable = [&](int member) {
        const Schedulable& cert = searches[static_cast<std::size_t>(member)]->certificate();
        FlatSchedule flat =
            expand_round_robin(cert.cycle, grouped[static_cast<std::size_t>(member)]);
        for (int j = member - 1; j >= 0; --j) {
            flat = lift_fold_schedule(flat, cascade[static_cast<std::size_t>(j)]);
        }
        if (auto violation = verify_periodic(a, flat)) {
            throw std::logic_error("lifted schedule failed verification for " + a.to_text());
        }
        CheckResult result;
        result.verdict = CheckResult::Verdict::Schedulable;
        result.schedule = std::move(flat);
        if (member == 0) {
            result.cycle = cert.cycle;
            result.preperiod = cert.preperiod;
        } else {
            result.cycle.labels.reserve(result.schedule.days.size());
            for (int agent : result.schedule.days) {
                result.cycle.labels.push_back(a.periods()[static_cast<std::size_t>(agent)]);
            }
        }
        result.proving_member = member;
        result.proving_cycle = cert.cycle;
        result.states_expanded = total_states();
        return result;
    };

    for (;;) {
        // Deepest member first: folded members have the smallest state spaces,
        // so schedulable ones prove before member 0 even takes a turn and the
        // whole lift chain becomes shareable through the cache.
        for (std::size_t m = cascade.size(); m-- > 0;) {
            if (!active[m]) continue;
            const auto status = searches[m]->run(opts.slice_states);
            if (status == CycleSearch::Status::FoundCycle) {
                return finish_schedulable(static_cast<int>(m));
            }
            if (status == CycleSearch::Status::Acyclic) {
                if (m == 0) {
                    CheckResult result;
                    result.verdict = CheckResult::Verdict::Unschedulable;
                    result.max_coverage_days = searches[0]->max_coverage();
                    result.states_expanded = total_states();
                    return result;
                }
                active[m] = false;  // inconclusive for a; prune this member
            }
        }
        if (total_states() >= opts.search.max_states) {
            CheckResult result;
            result.verdict = CheckResult::Verdict::Exhausted;
            result.budget_kind = BudgetKind::States;
            result.states_expanded = total_states();
            return result;
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        if (elapsed.count() > opts.search.max_seconds) {
            CheckResult result;
            result.verdict = CheckResult::Verdict::Exhausted;
            result.budget_kind = BudgetKind::Time;
            result.states_expanded = total_states();
            return result;
        }
    }
}

}  // namespace pinwheel
