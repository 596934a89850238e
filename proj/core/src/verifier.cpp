#include "pinwheel/verifier.hpp"

#include <algorithm>
#include <stdexcept>

namespace pinwheel {

namespace {

// Occurrence days of each agent within one cycle, ascending.
std::vector<std::vector<long long>> occurrences_by_agent(const Instance& a,
                                                         const std::vector<int>& days) {
    std::vector<std::vector<long long>> occ(static_cast<std::size_t>(a.agent_count()));
    for (std::size_t t = 0; t < days.size(); ++t) {
        int agent = days[t];
        if (agent < 0 || agent >= a.agent_count()) {
            throw std::invalid_argument("schedule references an unknown agent");
        }
        occ[static_cast<std::size_t>(agent)].push_back(static_cast<long long>(t));
    }
    return occ;
}

// Occurrences of one agent in [m, m + w) of the periodic extension:
// whole cycles contribute count-per-cycle each, the remainder window is
// counted by binary search (wrapping across the cycle boundary if needed).
long long periodic_window_count(const std::vector<long long>& occ, long long cycle,
                                long long m, long long w) {
    const long long per_cycle = static_cast<long long>(occ.size());
    long long count = (w / cycle) * per_cycle;
    long long r = w % cycle;
    auto count_in = [&](long long lo, long long hi) {  // [lo, hi) within one cycle
        auto first = std::lower_bound(occ.begin(), occ.end(), lo);
        auto last = std::lower_bound(occ.begin(), occ.end(), hi);
        return static_cast<long long>(last - first);
    };
    if (m + r <= cycle) {
        count += count_in(m, m + r);
    } else {
        count += count_in(m, cycle) + count_in(0, m + r - cycle);
    }
    return count;
}

}  // namespace

std::optional<Violation> verify_periodic(const Instance& a, const FlatSchedule& s) {
    if (s.days.empty()) {
        throw std::invalid_argument("periodic schedule must have cycle length >= 1");
    }
    if (s.agent_count != a.agent_count()) {
        throw std::invalid_argument("schedule agent count does not match the instance");
    }
    const long long cycle = static_cast<long long>(s.days.size());
    const auto occ = occurrences_by_agent(a, s.days);
    const auto& periods = a.periods();
    for (int i = 0; i < a.agent_count(); ++i) {
        const auto& days = occ[static_cast<std::size_t>(i)];
        const long long period = periods[static_cast<std::size_t>(i)];
        if (days.empty()) continue;
        // The frequency condition over the periodic extension is equivalent to
        // all cyclic gaps between consecutive occurrences being >= a_i (a lone
        // occurrence has gap = cycle length to its next periodic copy).
        long long bad_start = -1;
        for (std::size_t j = 0; j + 1 < days.size(); ++j) {
            if (days[j + 1] - days[j] < period) {
                bad_start = days[j];
                break;
            }
        }
        if (bad_start < 0 && days.front() + cycle - days.back() < period) {
            bad_start = days.back();
        }
        if (bad_start >= 0) {
            return Violation{i, bad_start, period,
                             periodic_window_count(days, cycle, bad_start, period)};
        }
    }
    return std::nullopt;
}

std::optional<Violation> verify_prefix(const Instance& a, const std::vector<int>& labels) {
    const long long n = static_cast<long long>(labels.size());
    if (n == 0) return std::nullopt;  // no windows, vacuously ok
    const auto occ = occurrences_by_agent(a, labels);
    const auto& periods = a.periods();
    for (int i = 0; i < a.agent_count(); ++i) {
        const long long period = periods[static_cast<std::size_t>(i)];
        if (period > n) continue;  // no window of length a_i fits inside [0, n)
        const auto& days = occ[static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j + 1 < days.size(); ++j) {
            if (days[j + 1] - days[j] < period) {
                // Some full window contains both occurrences; report one.
                long long m = std::min(days[j], n - period);
                auto first = std::lower_bound(days.begin(), days.end(), m);
                auto last = std::lower_bound(days.begin(), days.end(), m + period);
                return Violation{i, m, period, static_cast<long long>(last - first)};
            }
        }
    }
    return std::nullopt;
}

}  // namespace pinwheel
