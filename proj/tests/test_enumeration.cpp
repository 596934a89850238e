#include "pinwheel/enumeration.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace pinwheel;

TEST_CASE("restriction to periods {3,4} matches brute force over <= 8 agents") {
    EnumerationOptions opts;
    opts.periods = {3, 4};
    opts.max_agents = 8;
    std::vector<std::vector<long long>> emitted;
    enumerate_essential_raw(
        [&](const std::vector<long long>& p) {
            emitted.push_back(p);
            return true;
        },
        opts);
    const auto expected =
        oracles::brute_force_essential({3, 4}, 8, alpha_star_bounds(opts.alpha_terms));
    CHECK(emitted == expected);
    CHECK_FALSE(emitted.empty());
}

TEST_CASE("sub-universe outputs equal brute-force multiset filtering exactly") {
    const auto bounds = alpha_star_bounds(64);
    const std::vector<std::vector<long long>> universes = {
        {3, 4, 5}, {5, 7, 9}, {3, 6, 9}, {4, 8}, {3, 4, 5, 6, 7, 8, 9}};
    for (const auto& universe : universes) {
        EnumerationOptions opts;
        opts.periods = universe;
        opts.max_agents = 6;
        std::vector<std::vector<long long>> emitted;
        enumerate_essential_raw(
            [&](const std::vector<long long>& p) {
                emitted.push_back(p);
                return true;
            },
            opts);
        CHECK(emitted == oracles::brute_force_essential(universe, 6, bounds));
    }
}

TEST_CASE("emissions are strictly lexicographic, deduplicated, essential, and 10-free") {
    EnumerationOptions opts;
    opts.threshold_override = parse_rational("13/10");
    opts.max_agents = 6;
    std::vector<std::vector<long long>> emitted;
    enumerate_essential_raw(
        [&](const std::vector<long long>& p) {
            emitted.push_back(p);
            return true;
        },
        opts);
    REQUIRE(emitted.size() == 486);
    const Rational threshold = *opts.threshold_override;
    for (std::size_t i = 0; i < emitted.size(); ++i) {
        if (i > 0) CHECK(emitted[i - 1] < emitted[i]);
        const Instance a(emitted[i]);
        for (long long p : a.periods()) CHECK(p != 10);
        const Rational dprime = modified_density(a);
        CHECK(dprime >= threshold);
        // Removing the largest period (smallest contribution) must drop below.
        const long long largest = a.max_period();
        const Rational contribution = largest <= 10
                                          ? Rational(BigInt(1), BigInt(largest))
                                          : Rational(BigInt(1), BigInt(largest - 1));
        CHECK(dprime - contribution < threshold);
    }
}

TEST_CASE("the Instance-emitting wrapper returns the emission count") {
    EnumerationOptions opts;
    opts.periods = {3, 4};
    opts.max_agents = 8;
    long long seen = 0;
    const long long count = enumerate_essential(
        [&](const Instance& a) {
            CHECK(a.agent_count() >= 1);
            ++seen;
        },
        opts);
    CHECK(count == seen);
}

TEST_CASE("automatic depth bound saturates: larger caps change nothing") {
    EnumerationOptions auto_opts;
    auto_opts.threshold_override = parse_rational("13/10");
    const auto auto_count = enumerate_essential_raw(nullptr, auto_opts).count;
    EnumerationOptions wide = auto_opts;
    wide.max_agents = 30;
    CHECK(enumerate_essential_raw(nullptr, wide).count == auto_count);
    wide.max_agents = 65;
    CHECK_THROWS_AS(enumerate_essential_raw(nullptr, wide), std::invalid_argument);
}

TEST_CASE("early stop is reported") {
    EnumerationOptions opts;
    opts.threshold_override = parse_rational("13/10");
    opts.max_agents = 6;
    long long seen = 0;
    const auto result = enumerate_essential_raw(
        [&](const std::vector<long long>&) { return ++seen < 10; }, opts);
    CHECK(result.stopped_early);
    CHECK(result.count == 10);
}

TEST_CASE("subtotals partition the count by agent count") {
    EnumerationOptions opts;
    opts.threshold_override = parse_rational("13/10");
    opts.max_agents = 7;
    const auto result = enumerate_essential_raw(nullptr, opts);
    long long sum = 0;
    for (const auto& [agents, count] : result.by_agent_count) {
        CHECK(agents <= 7);
        sum += count;
    }
    CHECK(sum == result.count);
}

TEST_CASE("universe validation") {
    EnumerationOptions with_ten;
    with_ten.periods = {3, 10};
    CHECK_THROWS_AS(enumerate_essential_raw(nullptr, with_ten), std::invalid_argument);
    EnumerationOptions empty;
    empty.periods = {};
    CHECK_THROWS_AS(enumerate_essential_raw(nullptr, empty), std::invalid_argument);
    EnumerationOptions out_of_range;
    out_of_range.periods = {3, 70};
    CHECK_THROWS_AS(enumerate_essential_raw(nullptr, out_of_range), std::invalid_argument);
}

TEST_CASE("a too-wide enclosure band is rejected loudly") {
    // With a single alpha* term the band [2/5, 7/5) straddles many lattice
    // points, so the no-ambiguity startup check must fail.
    EnumerationOptions opts;
    opts.alpha_terms = 1;
    CHECK_THROWS_AS(enumerate_essential_raw(nullptr, opts), std::runtime_error);
}
