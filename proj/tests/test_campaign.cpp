#include "pinwheel/campaign.hpp"

#include "pinwheel/verifier.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace pinwheel;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("pinwheel-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string file(const char* name) const { return (path / name).string(); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

CampaignConfig scaled_config() {
    CampaignConfig cfg;
    cfg.enumeration.threshold_override = parse_rational("13/10");
    cfg.enumeration.max_agents = 6;  // 486 instances
    cfg.workers = 1;
    return cfg;
}

}  // namespace

TEST_CASE("repeat queries are pure cache hits") {
    SchedulableCache cache;
    const Instance a = parse_instance("3,5,5,5,7");
    const auto first = check_with_cache(a, cache);
    CHECK(first.result.verdict == CheckResult::Verdict::Schedulable);
    CHECK(first.executed_search);
    const auto second = check_with_cache(a, cache);
    CHECK(second.result.verdict == CheckResult::Verdict::Schedulable);
    CHECK_FALSE(second.executed_search);
    CHECK(second.hit_member == 0);
    CHECK_FALSE(verify_periodic(a, second.result.schedule).has_value());
}

TEST_CASE("instances sharing a cascade member need one direct run in total") {
    SchedulableCache cache;
    const Instance shared = parse_instance("3,3,3");
    const auto prime = check_with_cache(shared, cache);
    REQUIRE(prime.result.verdict == CheckResult::Verdict::Schedulable);
    CHECK(prime.executed_search);
    int direct_runs = 1;
    for (const char* text : {"3,3,5,6", "3,3,3,6"}) {
        const Instance a = parse_instance(text);
        REQUIRE(fold_once(a) == shared);
        const auto outcome = check_with_cache(a, cache);
        CHECK(outcome.result.verdict == CheckResult::Verdict::Schedulable);
        if (outcome.executed_search) ++direct_runs;
        CHECK(outcome.hit_member == 1);
        CHECK_FALSE(verify_periodic(a, outcome.result.schedule).has_value());
    }
    CHECK(direct_runs == 1);
}

TEST_CASE("unschedulable instances are never cached") {
    SchedulableCache cache;
    const auto outcome = check_with_cache(parse_instance("2,3,5"), cache);
    CHECK(outcome.result.verdict == CheckResult::Verdict::Unschedulable);
    CHECK(outcome.result.max_coverage_days == 7);
    CHECK(cache.size() == 0);
    CHECK_FALSE(cache.known(parse_instance("2,3,5")));
}

TEST_CASE("cache entries and root cycles persist across reloads") {
    TempDir dir;
    const auto path = dir.file("cache.txt");
    {
        SchedulableCache cache;
        cache.attach_file(path);
        check_with_cache(parse_instance("3,3,3"), cache);
        check_with_cache(parse_instance("2,4,8,8"), cache);
        CHECK(cache.size() >= 2);
    }
    {
        SchedulableCache cache;
        cache.attach_file(path);
        CHECK(cache.known(parse_instance("3,3,3")));
        // An instance folding onto the cached member resolves without a search.
        const auto outcome = check_with_cache(parse_instance("3,3,5,6"), cache);
        CHECK(outcome.result.verdict == CheckResult::Verdict::Schedulable);
        CHECK_FALSE(outcome.executed_search);
    }
    // The cache file format: one canonical instance per line with a digest.
    std::ifstream in(path);
    std::string line;
    bool found = false;
    while (std::getline(in, line)) {
        if (line.rfind("3,3,3 #", 0) == 0) found = true;
        CHECK(line.find(" #") != std::string::npos);
    }
    CHECK(found);
}

TEST_CASE("scaled campaign completes with every instance schedulable") {
    auto cfg = scaled_config();
    cfg.audit_fraction = 0.05;
    const auto report = run_campaign(cfg);
    CHECK(report.essential_count == 486);
    CHECK(report.checked_count == 486);
    CHECK(report.all_schedulable);
    CHECK(report.completed);
    CHECK(report.direct_cycle_runs > 0);
    CHECK(report.direct_cycle_runs <= 486);
    CHECK(report.audit_checked > 0);
    CHECK(report.audit_ok);
    CHECK(report.counterexample.empty());

    // Deterministic replay: identical counts with a single worker.
    const auto replay = run_campaign(cfg);
    CHECK(replay.essential_count == report.essential_count);
    CHECK(replay.checked_count == report.checked_count);
    CHECK(replay.direct_cycle_runs == report.direct_cycle_runs);
    CHECK(replay.all_schedulable == report.all_schedulable);
}

TEST_CASE("count-only mode reports the count without checking") {
    auto cfg = scaled_config();
    cfg.count_only = true;
    const auto report = run_campaign(cfg);
    CHECK(report.essential_count == 486);
    CHECK(report.checked_count == 0);
    CHECK(report.completed);
    const auto text = report.to_text();
    CHECK(text.find("essential-count: 486") != std::string::npos);
}

TEST_CASE("events log carries one JSON line per checked instance") {
    TempDir dir;
    auto cfg = scaled_config();
    cfg.events_file = dir.file("events.jsonl");
    const auto report = run_campaign(cfg);
    REQUIRE(report.all_schedulable);
    std::ifstream in(cfg.events_file);
    std::string line;
    long long lines = 0;
    while (std::getline(in, line)) {
        CHECK(line.front() == '{');
        CHECK(line.find("\"instance\":\"") != std::string::npos);
        CHECK(line.find("\"verdict\":\"schedulable\"") != std::string::npos);
        CHECK(line.find("\"proving_member\":") != std::string::npos);
        CHECK(line.find("\"states_expanded\":") != std::string::npos);
        ++lines;
    }
    CHECK(lines == report.checked_count);
}

TEST_CASE("interrupted campaigns resume to the uninterrupted report") {
    TempDir dir;
    auto full = scaled_config();
    full.cache_file = dir.file("full-cache.txt");
    const auto uninterrupted = run_campaign(full);
    REQUIRE(uninterrupted.all_schedulable);

    auto part1 = scaled_config();
    part1.cache_file = dir.file("cache.txt");
    part1.checkpoint_file = dir.file("ckpt");
    part1.checkpoint_interval = 50;
    part1.stop_after = 200;
    const auto first = run_campaign(part1);
    CHECK_FALSE(first.completed);
    CHECK(first.checked_count == 200);

    auto part2 = part1;
    part2.stop_after.reset();
    part2.resume = true;
    const auto resumed = run_campaign(part2);
    CHECK(resumed.completed);
    CHECK(resumed.essential_count == uninterrupted.essential_count);
    CHECK(resumed.checked_count == uninterrupted.checked_count);
    CHECK(resumed.all_schedulable == uninterrupted.all_schedulable);
    CHECK(resumed.direct_cycle_runs == uninterrupted.direct_cycle_runs);
}

TEST_CASE("a sparse threshold surfaces a counterexample and aborts") {
    CampaignConfig cfg;
    cfg.enumeration.threshold_override = parse_rational("1/2");
    cfg.enumeration.max_agents = 3;
    cfg.workers = 1;
    const auto report = run_campaign(cfg);
    CHECK_FALSE(report.all_schedulable);
    CHECK_FALSE(report.completed);
    CHECK_FALSE(report.counterexample.empty());
    CHECK(report.abort_reason.find("counterexample") != std::string::npos);
}

TEST_CASE("campaign report text round-trips the headline fields") {
    auto cfg = scaled_config();
    const auto report = run_campaign(cfg);
    const auto text = report.to_text();
    CHECK(text.find("essential-count: 486") != std::string::npos);
    CHECK(text.find("checked-count: 486") != std::string::npos);
    CHECK(text.find("all-schedulable: true") != std::string::npos);
    CHECK(text.find("threshold: 13/10") != std::string::npos);
    CHECK(text.find("workers: 1") != std::string::npos);
    std::ostringstream runs;
    runs << "direct-cycle-runs: " << report.direct_cycle_runs;
    CHECK(text.find(runs.str()) != std::string::npos);
}
