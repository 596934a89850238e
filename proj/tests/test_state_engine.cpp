#include "pinwheel/state_engine.hpp"

#include "pinwheel/verifier.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

using namespace pinwheel;

namespace {

// Longest coverable run when agent i must first wait release[i] days
// (release = cooldown counters of a flat state).
long long coverage_from(const Instance& a, std::vector<long long> release, long long cap) {
    const auto& periods = a.periods();
    long long best = 0;
    std::function<void(long long)> go = [&](long long day) {
        best = std::max(best, day);
        if (day >= cap) return;
        for (int agent = 0; agent < a.agent_count(); ++agent) {
            const long long r = release[static_cast<std::size_t>(agent)];
            if (day < r) continue;
            release[static_cast<std::size_t>(agent)] =
                day + periods[static_cast<std::size_t>(agent)];
            go(day + 1);
            release[static_cast<std::size_t>(agent)] = r;
            if (best >= cap) return;
        }
    };
    go(0);
    return best;
}

}  // namespace

TEST_CASE("initial state is all zeros") {
    const auto gi = GroupedInstance::from_instance(parse_instance("2,2"));
    CHECK(initial_state(gi).counters == std::vector<std::uint32_t>{0, 0});
    const auto gi2 = GroupedInstance::from_instance(parse_instance("3,5,5,5,7"));
    CHECK(initial_state(gi2).counters == std::vector<std::uint32_t>{0, 0, 0, 0, 0});
}

TEST_CASE("successors of (2,2) states") {
    const auto gi = GroupedInstance::from_instance(parse_instance("2,2"));
    const auto from_zero = successors(gi, GroupedState{{0, 0}});
    REQUIRE(from_zero.size() == 1);
    CHECK(from_zero[0].first == 2);
    CHECK(from_zero[0].second.counters == std::vector<std::uint32_t>{1, 0});
    // Self-loop: employed agent goes to 1, the waiting agent comes free.
    const auto loop = successors(gi, GroupedState{{1, 0}});
    REQUIRE(loop.size() == 1);
    CHECK(loop[0].second.counters == std::vector<std::uint32_t>{1, 0});
}

TEST_CASE("dead-end states have no successors") {
    const auto gi = GroupedInstance::from_instance(parse_instance("2,3,5"));
    CHECK(successors(gi, GroupedState{{1, 2, 4}}).empty());
}

TEST_CASE("successors validate their input state") {
    const auto gi = GroupedInstance::from_instance(parse_instance("2,2"));
    CHECK_THROWS_AS(successors(gi, GroupedState{{0, 1}}), std::invalid_argument);   // not sorted
    CHECK_THROWS_AS(successors(gi, GroupedState{{2, 0}}), std::invalid_argument);   // > period-1
    CHECK_THROWS_AS(successors(gi, GroupedState{{0}}), std::invalid_argument);      // wrong size
}

TEST_CASE("transition soundness and canonical closure on random walks") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 120; ++trial) {
        const Instance a = oracles::random_instance(rng, 5, 9, 2);
        const auto gi = GroupedInstance::from_instance(a);
        GroupedState state = initial_state(gi);
        for (int step = 0; step < 30; ++step) {
            const auto next = successors(gi, state);
            if (next.empty()) break;
            for (const auto& [label, child] : next) {
                const int g = gi.group_of_period(label);
                const int base = gi.group_base(g);
                const int count = gi.groups[static_cast<std::size_t>(g)].count;
                // The employed group had a zero counter (slice minimum).
                CHECK(state.counters[static_cast<std::size_t>(base + count - 1)] == 0);
                // Employed counter reset; everyone else decremented with floor 0.
                std::multiset<std::uint32_t> expected;
                for (int j = 0; j < count - 1; ++j) {
                    const auto c = state.counters[static_cast<std::size_t>(base + j)];
                    expected.insert(c > 0 ? c - 1 : 0);
                }
                expected.insert(static_cast<std::uint32_t>(label - 1));
                std::multiset<std::uint32_t> got(child.counters.begin() + base,
                                                 child.counters.begin() + base + count);
                CHECK(got == expected);
                // Canonical closure: every group slice stays sorted non-increasing.
                int pos = 0;
                for (const auto& group : gi.groups) {
                    for (int j = 1; j < group.count; ++j) {
                        CHECK(child.counters[static_cast<std::size_t>(pos + j - 1)] >=
                              child.counters[static_cast<std::size_t>(pos + j)]);
                    }
                    pos += group.count;
                }
            }
            std::uniform_int_distribution<std::size_t> pick(0, next.size() - 1);
            state = next[pick(rng)].second;
        }
    }
}

TEST_CASE("known verdicts") {
    const auto out22 = check_schedulable(parse_instance("2,2"));
    const auto* s22 = std::get_if<Schedulable>(&out22);
    REQUIRE(s22 != nullptr);
    CHECK(s22->cycle.cycle_length() == 1);
    CHECK(s22->preperiod.size() == 1);

    const auto out235 = check_schedulable(parse_instance("2,3,5"));
    const auto* u235 = std::get_if<Unschedulable>(&out235);
    REQUIRE(u235 != nullptr);
    CHECK(u235->max_coverage_days == 7);

    CHECK(std::holds_alternative<Schedulable>(check_schedulable(parse_instance("2,4,8,8"))));
    CHECK(std::holds_alternative<Schedulable>(check_schedulable(parse_instance("3,5,5,5,7"))));
    CHECK(std::holds_alternative<Unschedulable>(
        check_schedulable(parse_instance("3,4,10,10,10,12,13,17"))));

    const auto out1 = check_schedulable(parse_instance("1"));
    const auto* s1 = std::get_if<Schedulable>(&out1);
    REQUIRE(s1 != nullptr);
    CHECK(s1->cycle.labels == std::vector<long long>{1});
    CHECK(s1->preperiod.empty());
}

TEST_CASE("max coverage of the B_k family") {
    CHECK(oracles::max_coverage(generate_bk(3), 10) == 7);
    const auto c3 = max_coverage_days(GroupedInstance::from_instance(generate_bk(3)));
    CHECK_FALSE(c3.infinite);
    CHECK(c3.days == 7);
    const auto c4 = max_coverage_days(GroupedInstance::from_instance(generate_bk(4)));
    CHECK_FALSE(c4.infinite);
    CHECK(c4.days == oracles::max_coverage(generate_bk(4), 20));
    CHECK(c4.days <= 15);
    const auto c22 = max_coverage_days(GroupedInstance::from_instance(parse_instance("2,2")));
    CHECK(c22.infinite);
}

TEST_CASE("horizon cutoff truncates the search") {
    const auto c = max_coverage_days(GroupedInstance::from_instance(parse_instance("2,3,5")), 3);
    CHECK_FALSE(c.infinite);
    CHECK(c.truncated);
    CHECK(c.days == 3);
}

TEST_CASE("extract_schedule rejects non-schedulable outcomes") {
    const auto out = check_schedulable(parse_instance("2,3,5"));
    CHECK_THROWS_AS(extract_schedule(out), std::invalid_argument);
    const auto ok = check_schedulable(parse_instance("2,2"));
    CHECK(extract_schedule(ok).cycle_length() == 1);
}

TEST_CASE("round-robin expansion") {
    const auto gi22 = GroupedInstance::from_instance(parse_instance("2,2"));
    const auto flat22 = expand_round_robin(GroupedSchedule{{2}}, gi22);
    CHECK(flat22.days == std::vector<int>{0, 1});
    CHECK_FALSE(verify_periodic(parse_instance("2,2"), flat22).has_value());

    // Count-1 groups expand to themselves.
    const auto gi23 = GroupedInstance::from_instance(parse_instance("2,3"));
    const auto flat23 = expand_round_robin(GroupedSchedule{{2, 3, 2}}, gi23);
    CHECK(flat23.days == std::vector<int>{0, 1, 0});

    // The 7-day grouped cycle of (3,5,5,5,7) expands to a valid 21-day flat one.
    const Instance a = parse_instance("3,5,5,5,7");
    const auto out = check_schedulable(a);
    const auto* s = std::get_if<Schedulable>(&out);
    REQUIRE(s != nullptr);
    CHECK(s->cycle.cycle_length() == 7);
    const auto flat = expand_round_robin(s->cycle, GroupedInstance::from_instance(a));
    CHECK(flat.cycle_length() == 21);
    CHECK_FALSE(verify_periodic(a, flat).has_value());
}

TEST_CASE("certificates of random schedulable instances always verify") {
    std::mt19937_64 rng(37);
    int schedulable_seen = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const Instance a = oracles::random_instance(rng, 5, 9);
        const auto gi = GroupedInstance::from_instance(a);
        const auto out = check_schedulable(gi);
        if (const auto* s = std::get_if<Schedulable>(&out)) {
            ++schedulable_seen;
            const auto flat = expand_round_robin(s->cycle, gi);
            CHECK_FALSE(verify_periodic(a, flat).has_value());
        }
    }
    CHECK(schedulable_seen > 50);
}

TEST_CASE("grouped and naive verdicts agree, including max coverage") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 150; ++trial) {
        const Instance a = oracles::random_instance(rng, 5, 8);
        const auto grouped = check_schedulable(a);
        const auto naive = naive_check(a);
        if (std::holds_alternative<Schedulable>(grouped)) {
            CHECK(naive.verdict == NaiveOutcome::Verdict::Schedulable);
            CHECK_FALSE(verify_periodic(a, naive.cycle).has_value());
        } else if (const auto* u = std::get_if<Unschedulable>(&grouped)) {
            REQUIRE(naive.verdict == NaiveOutcome::Verdict::Unschedulable);
            CHECK(naive.max_coverage_days == u->max_coverage_days);
        }
    }
}

TEST_CASE("unschedulable coverage matches brute force and is tight") {
    std::mt19937_64 rng(43);
    int unschedulable_seen = 0;
    for (int trial = 0; trial < 200 && unschedulable_seen < 40; ++trial) {
        const Instance a = oracles::random_instance(rng, 4, 7, 2);
        const auto out = check_schedulable(a);
        const auto* u = std::get_if<Unschedulable>(&out);
        if (u == nullptr) continue;
        ++unschedulable_seen;
        std::vector<int> witness;
        const long long d = oracles::max_coverage(a, u->max_coverage_days + 1, &witness);
        CHECK(d == u->max_coverage_days);  // a d-day run exists, no (d+1)-day run
        CHECK_FALSE(verify_prefix(a, witness).has_value());
    }
    CHECK(unschedulable_seen >= 20);
}

TEST_CASE("dominance: componentwise smaller states cover at least as long") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 25; ++trial) {
        const Instance a = oracles::random_instance(rng, 3, 6, 2);
        if (std::holds_alternative<Schedulable>(check_schedulable(a))) continue;
        const auto& periods = a.periods();
        std::vector<long long> v(static_cast<std::size_t>(a.agent_count()));
        for (int i = 0; i < a.agent_count(); ++i) {
            std::uniform_int_distribution<long long> c(0, periods[static_cast<std::size_t>(i)] - 1);
            v[static_cast<std::size_t>(i)] = c(rng);
        }
        std::vector<long long> u = v;
        for (auto& c : u) {
            if (c > 0) c -= std::uniform_int_distribution<long long>(0, c)(rng);
        }
        CHECK(coverage_from(a, u, 24) >= coverage_from(a, v, 24));
    }
}

TEST_CASE("tiny state budgets exhaust") {
    SearchOptions opts;
    opts.max_states = 4;
    const auto out = check_schedulable(parse_instance("3,4,10,10,10,12,13,17"), opts);
    const auto* e = std::get_if<Exhausted>(&out);
    REQUIRE(e != nullptr);
    CHECK(e->kind == BudgetKind::States);
}

TEST_CASE("successor ordering is configurable but verdicts are stable") {
    SearchOptions smallest_first;
    smallest_first.largest_period_first = false;
    const auto a = parse_instance("3,5,5,5,7");
    CHECK(std::holds_alternative<Schedulable>(check_schedulable(a, smallest_first)));
    const auto b = parse_instance("2,3,5");
    const auto out = check_schedulable(b, smallest_first);
    const auto* u = std::get_if<Unschedulable>(&out);
    REQUIRE(u != nullptr);
    CHECK(u->max_coverage_days == 7);
}
