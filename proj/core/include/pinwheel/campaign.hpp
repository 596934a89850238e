// The exhaustive campaign: enumerate every essential instance, prove each
// schedulable through the fold-cascade pipeline with a shared cache of
// known-schedulable instances, and emit a reproducible report.
#pragma once

#include "pinwheel/enumeration.hpp"
#include "pinwheel/folding.hpp"
#include "pinwheel/instance.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pinwheel {

// Append-only set of instances with a verifier-accepted certificate on
// record. Entries proven by a direct search ("roots") additionally keep their
// grouped cycle so later queries can rebuild certificates by lift composition
// alone. Thread safe: lookups and insert-if-absent are linearizable.
class SchedulableCache {
public:
    SchedulableCache();
    ~SchedulableCache();
    SchedulableCache(const SchedulableCache&) = delete;
    SchedulableCache& operator=(const SchedulableCache&) = delete;

    // Loads `path` (one canonical instance per line, optional " #digest"
    // suffix) and the cycle journal `path`.certs if present, then appends
    // every new entry to both.
    void attach_file(const std::string& path);

    bool known(const Instance& a) const;
    std::optional<std::vector<long long>> root_cycle(const Instance& a) const;

    // Insert-if-absent; return true when the entry is new.
    bool insert(const Instance& a, std::uint64_t digest);
    bool insert_root(const Instance& a, const std::vector<long long>& cycle_labels,
                     std::uint64_t digest);

    std::size_t size() const;

    // Deterministic content-based sample (independent of iteration order).
    std::vector<Instance> sample(double fraction, std::uint64_t seed) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct CacheCheckOutcome {
    CheckResult result;
    bool executed_search = false;  // true when a cycle search actually ran
    int hit_member = -1;           // cascade index that hit the cache, -1 on miss
};

// Resolves `a` through the cache: walks the fold cascade, reuses the first
// known member (lift composition produces a fresh verified certificate for a),
// otherwise runs interleaved_check. On success inserts the proving member and
// every cascade member between it and a. Unschedulable instances are never
// cached.
CacheCheckOutcome check_with_cache(const Instance& a, SchedulableCache& cache,
                                   const InterleaveOptions& opts = {});

struct CampaignConfig {
    EnumerationOptions enumeration;
    InterleaveOptions check;
    int workers = 0;  // <= 0: hardware concurrency
    std::string cache_file;
    std::string checkpoint_file;
    std::string events_file;  // JSON-lines event log, one line per checked instance
    long long checkpoint_interval = 1 << 16;
    bool count_only = false;
    bool resume = false;  // continue after the checkpoint file's last instance
    double audit_fraction = 0.0;
    std::uint64_t audit_seed = 0x5eed;
    std::optional<long long> stop_after;  // stop cleanly after N checked (testing)
};

struct CampaignReport {
    long long essential_count = 0;
    std::map<int, long long> essential_by_agent_count;
    long long checked_count = 0;      // cumulative across resumed runs
    long long direct_cycle_runs = 0;  // cumulative across resumed runs
    bool all_schedulable = false;
    bool completed = false;
    double wall_seconds = 0.0;
    std::string counterexample;  // canonical text when a verdict falsifies the claim
    std::string abort_reason;
    // Configuration echo.
    std::string threshold;
    int alpha_terms = 0;
    std::uint64_t slice_states = 0;
    int workers = 0;
    std::uint64_t cache_size = 0;
    long long audit_checked = 0;
    bool audit_ok = true;

    std::string to_text() const;
};

CampaignReport run_campaign(const CampaignConfig& config);

// Direct re-check of sampled cache members (the cache soundness audit).
// Returns the number checked; `ok` reports whether all were schedulable.
long long audit_cache(const SchedulableCache& cache, double fraction, std::uint64_t seed,
                      const SearchOptions& opts, bool& ok);

}  // namespace pinwheel
