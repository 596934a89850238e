#include "pinwheel/campaign.hpp"

#include "pinwheel/schedule.hpp"
#include "pinwheel/state_engine.hpp"
#include "pinwheel/verifier.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace pinwheel {

namespace {

// ---------------------------------------------------------------------------
// Compact cache keys: multiplicity vector over periods 2..21, 5 bits each
// (100 bits). Covers the whole campaign universe and all of its folds; other
// instances fall back to canonical-text keys.
// ---------------------------------------------------------------------------

constexpr long long kKeyMinPeriod = 2;
constexpr long long kKeyMaxPeriod = 21;
constexpr int kKeyCountBits = 5;
constexpr long long kKeyMaxCount = (1 << kKeyCountBits) - 1;

struct InstanceKey {
    std::array<std::uint64_t, 2> w{0, 0};
    bool operator==(const InstanceKey& o) const { return w == o.w; }
};

struct InstanceKeyHash {
    std::size_t operator()(const InstanceKey& k) const noexcept {
        std::uint64_t h = k.w[0] * 0x9E3779B97F4A7C15ull;
        h ^= k.w[1] + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        h *= 0xBF58476D1CE4E5B9ull;
        return static_cast<std::size_t>(h ^ (h >> 31));
    }
};

std::optional<InstanceKey> try_pack(const std::vector<long long>& sorted_periods) {
    InstanceKey key;
    std::size_t i = 0;
    while (i < sorted_periods.size()) {
        const long long p = sorted_periods[i];
        std::size_t j = i;
        while (j < sorted_periods.size() && sorted_periods[j] == p) ++j;
        const long long count = static_cast<long long>(j - i);
        if (p < kKeyMinPeriod || p > kKeyMaxPeriod || count > kKeyMaxCount) {
            return std::nullopt;
        }
        const unsigned pos = static_cast<unsigned>(p - kKeyMinPeriod) * kKeyCountBits;
        const unsigned off = pos & 63u;
        key.w[pos >> 6] |= static_cast<std::uint64_t>(count) << off;
        if (off + kKeyCountBits > 64) {
            key.w[1] |= static_cast<std::uint64_t>(count) >> (64 - off);
        }
        i = j;
    }
    return key;
}

std::vector<long long> unpack_key(const InstanceKey& key) {
    std::vector<long long> periods;
    for (long long p = kKeyMinPeriod; p <= kKeyMaxPeriod; ++p) {
        const unsigned pos = static_cast<unsigned>(p - kKeyMinPeriod) * kKeyCountBits;
        const unsigned off = pos & 63u;
        std::uint64_t v = key.w[pos >> 6] >> off;
        if (off + kKeyCountBits > 64) {
            v |= key.w[1] << (64 - off);
        }
        v &= kKeyMaxCount;
        for (std::uint64_t c = 0; c < v; ++c) periods.push_back(p);
    }
    return periods;
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t certificate_digest(const Instance& a, const FlatSchedule& flat) {
    std::ostringstream out;
    out << a.to_text() << ':';
    for (int d : flat.days) out << d << ',';
    return fnv1a(out.str());
}

std::string hex16(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return std::string(buf);
}

// Open-addressing set of instance keys, 16 bytes per slot. The campaign holds
// tens of millions of entries, so node-based containers would dominate the
// memory budget. The all-zero key cannot occur (an instance has at least one
// agent) and marks empty slots.
class FlatKeySet {
public:
    FlatKeySet() { slots_.assign(1u << 12, InstanceKey{}); }

    bool contains(const InstanceKey& k) const {
        std::size_t i = InstanceKeyHash{}(k) & mask();
        for (;;) {
            const InstanceKey& slot = slots_[i];
            if (is_empty(slot)) return false;
            if (slot == k) return true;
            i = (i + 1) & mask();
        }
    }

    bool insert(const InstanceKey& k) {
        if ((size_ + 1) * 5 >= slots_.size() * 3) grow();
        std::size_t i = InstanceKeyHash{}(k) & mask();
        for (;;) {
            InstanceKey& slot = slots_[i];
            if (is_empty(slot)) {
                slot = k;
                ++size_;
                return true;
            }
            if (slot == k) return false;
            i = (i + 1) & mask();
        }
    }

    std::size_t size() const { return size_; }

    template <class F>
    void for_each(F&& f) const {
        for (const auto& slot : slots_) {
            if (!is_empty(slot)) f(slot);
        }
    }

private:
    static bool is_empty(const InstanceKey& k) { return k.w[0] == 0 && k.w[1] == 0; }
    std::size_t mask() const { return slots_.size() - 1; }

    void grow() {
        std::vector<InstanceKey> old = std::move(slots_);
        slots_.assign(old.size() * 2, InstanceKey{});
        size_ = 0;
        for (const auto& slot : old) {
            if (!is_empty(slot)) insert(slot);
        }
    }

    std::vector<InstanceKey> slots_;
    std::size_t size_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------
// SchedulableCache
// ---------------------------------------------------------------------------

struct SchedulableCache::Impl {
    mutable std::shared_mutex mu;
    FlatKeySet fast;
    std::unordered_set<std::string> slow;
    std::unordered_map<std::string, std::vector<long long>> roots;
    std::ofstream out;
    std::ofstream certs_out;
    bool persist = false;
    long long writes_since_flush = 0;

    bool known_locked(const std::optional<InstanceKey>& key, const std::string& text) const {
        return key ? fast.contains(*key) : slow.count(text) != 0;
    }

    // Returns true when newly inserted; appends to the cache file.
    bool insert_locked(const std::optional<InstanceKey>& key, const std::string& text,
                       std::uint64_t digest) {
        bool fresh = false;
        if (key) {
            fresh = fast.insert(*key);
        } else {
            fresh = slow.insert(text).second;
        }
        if (fresh && persist) {
            out << text << " #" << hex16(digest) << '\n';
            if (++writes_since_flush >= 4096) {
                out.flush();
                writes_since_flush = 0;
            }
        }
        return fresh;
    }
};

SchedulableCache::SchedulableCache() : impl_(std::make_unique<Impl>()) {}
SchedulableCache::~SchedulableCache() {
    if (impl_ && impl_->persist) {
        impl_->out.flush();
        impl_->certs_out.flush();
    }
}

void SchedulableCache::attach_file(const std::string& path) {
    std::unique_lock lock(impl_->mu);
    {
        std::ifstream in(path);
        std::string line;
        while (std::getline(in, line)) {
            const auto hash_pos = line.find(" #");
            std::string text = hash_pos == std::string::npos ? line : line.substr(0, hash_pos);
            if (text.empty()) continue;
            const auto periods = parse_instance(text).periods();
            impl_->insert_locked(try_pack(periods), Instance(periods).to_text(), 0);
        }
    }
    {
        std::ifstream in(path + ".certs");
        std::string line;
        while (std::getline(in, line)) {
            const auto bar = line.find('|');
            if (bar == std::string::npos) continue;
            std::string text = line.substr(0, bar);
            std::istringstream labels_in(line.substr(bar + 1));
            std::vector<long long> labels;
            long long v = 0;
            while (labels_in >> v) labels.push_back(v);
            if (labels.empty()) continue;
            const Instance a = parse_instance(text);
            impl_->insert_locked(try_pack(a.periods()), a.to_text(), 0);
            impl_->roots[a.to_text()] = std::move(labels);
        }
    }
    impl_->out.open(path, std::ios::app);
    impl_->certs_out.open(path + ".certs", std::ios::app);
    if (!impl_->out || !impl_->certs_out) {
        throw std::runtime_error("cannot open cache file for append: " + path);
    }
    impl_->persist = true;
}

bool SchedulableCache::known(const Instance& a) const {
    const auto key = try_pack(a.periods());
    std::shared_lock lock(impl_->mu);
    return impl_->known_locked(key, a.to_text());
}

std::optional<std::vector<long long>> SchedulableCache::root_cycle(const Instance& a) const {
    std::shared_lock lock(impl_->mu);
    const auto it = impl_->roots.find(a.to_text());
    if (it == impl_->roots.end()) return std::nullopt;
    return it->second;
}

bool SchedulableCache::insert(const Instance& a, std::uint64_t digest) {
    const auto key = try_pack(a.periods());
    std::unique_lock lock(impl_->mu);
    return impl_->insert_locked(key, a.to_text(), digest);
}

bool SchedulableCache::insert_root(const Instance& a, const std::vector<long long>& cycle_labels,
                                   std::uint64_t digest) {
    const auto key = try_pack(a.periods());
    const std::string text = a.to_text();
    std::unique_lock lock(impl_->mu);
    const bool fresh = impl_->insert_locked(key, text, digest);
    if (impl_->roots.emplace(text, cycle_labels).second && impl_->persist) {
        impl_->certs_out << text << '|';
        for (std::size_t i = 0; i < cycle_labels.size(); ++i) {
            if (i) impl_->certs_out << ' ';
            impl_->certs_out << cycle_labels[i];
        }
        impl_->certs_out << '\n';
        impl_->certs_out.flush();
    }
    return fresh;
}

std::size_t SchedulableCache::size() const {
    std::shared_lock lock(impl_->mu);
    return impl_->fast.size() + impl_->slow.size();
}

std::vector<Instance> SchedulableCache::sample(double fraction, std::uint64_t seed) const {
    std::vector<Instance> picked;
    if (fraction <= 0) return picked;
    const auto take = [&](std::uint64_t content_hash) {
        const double u = static_cast<double>(mix64(content_hash ^ seed) >> 11) /
                         static_cast<double>(1ull << 53);
        return u < fraction;
    };
    std::shared_lock lock(impl_->mu);
    impl_->fast.for_each([&](const InstanceKey& key) {
        if (take(InstanceKeyHash{}(key))) {
            picked.emplace_back(unpack_key(key));
        }
    });
    for (const auto& text : impl_->slow) {
        if (take(fnv1a(text))) {
            picked.push_back(parse_instance(text));
        }
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

// ---------------------------------------------------------------------------
// check_with_cache
// ---------------------------------------------------------------------------

namespace {

// Flat schedules for cascade members root..0, rebuilt by lift composition
// from the root's grouped cycle.
std::vector<FlatSchedule> lift_chain(const std::vector<Instance>& cascade, int root,
                                     const GroupedSchedule& root_cycle) {
    std::vector<FlatSchedule> flats(static_cast<std::size_t>(root) + 1);
    flats[static_cast<std::size_t>(root)] = expand_round_robin(
        root_cycle, GroupedInstance::from_instance(cascade[static_cast<std::size_t>(root)]));
    for (int j = root - 1; j >= 0; --j) {
        flats[static_cast<std::size_t>(j)] =
            lift_fold_schedule(flats[static_cast<std::size_t>(j) + 1],
                               cascade[static_cast<std::size_t>(j)]);
    }
    return flats;
}

GroupedSchedule labels_of(const Instance& a, const FlatSchedule& flat) {
    GroupedSchedule gs;
    gs.labels.reserve(flat.days.size());
    for (int agent : flat.days) {
        gs.labels.push_back(a.periods()[static_cast<std::size_t>(agent)]);
    }
    return gs;
}

}  // namespace

CacheCheckOutcome check_with_cache(const Instance& a, SchedulableCache& cache,
                                   const InterleaveOptions& opts) {
    const std::vector<Instance> cascade = fold_cascade(a);
    int hit = -1;
    for (std::size_t j = 0; j < cascade.size(); ++j) {
        if (cache.known(cascade[j])) {
            hit = static_cast<int>(j);
            break;
        }
    }
    if (hit >= 0) {
        // Every known member's cascade reaches a directly-proven root whose
        // cycle is on record; if the journal was truncated we just fall back
        // to a direct run.
        int root = -1;
        std::vector<long long> root_labels;
        for (std::size_t j = static_cast<std::size_t>(hit); j < cascade.size(); ++j) {
            if (auto labels = cache.root_cycle(cascade[j])) {
                root = static_cast<int>(j);
                root_labels = std::move(*labels);
                break;
            }
        }
        if (root >= 0) {
            auto flats = lift_chain(cascade, root, GroupedSchedule{root_labels});
            if (verify_periodic(a, flats[0])) {
                throw std::logic_error("cache-lifted schedule failed verification for " +
                                       a.to_text());
            }
            for (int j = hit - 1; j >= 1; --j) {
                if (verify_periodic(cascade[static_cast<std::size_t>(j)],
                                    flats[static_cast<std::size_t>(j)])) {
                    throw std::logic_error("cache-lifted schedule failed verification for " +
                                           cascade[static_cast<std::size_t>(j)].to_text());
                }
                cache.insert(cascade[static_cast<std::size_t>(j)],
                             certificate_digest(cascade[static_cast<std::size_t>(j)],
                                                flats[static_cast<std::size_t>(j)]));
            }
            if (hit > 0) {
                cache.insert(a, certificate_digest(a, flats[0]));
            }
            CacheCheckOutcome out;
            out.hit_member = hit;
            out.result.verdict = CheckResult::Verdict::Schedulable;
            out.result.schedule = std::move(flats[0]);
            out.result.cycle = labels_of(a, out.result.schedule);
            out.result.proving_member = root;
            return out;
        }
    }

    CacheCheckOutcome out;
    out.executed_search = true;
    out.result = interleaved_check(a, opts);
    if (out.result.verdict == CheckResult::Verdict::Schedulable) {
        const int m = out.result.proving_member.value();
        auto flats = lift_chain(cascade, m, out.result.proving_cycle);
        if (verify_periodic(cascade[static_cast<std::size_t>(m)],
                            flats[static_cast<std::size_t>(m)])) {
            throw std::logic_error("proving member schedule failed verification for " +
                                   cascade[static_cast<std::size_t>(m)].to_text());
        }
        cache.insert_root(cascade[static_cast<std::size_t>(m)], out.result.proving_cycle.labels,
                          certificate_digest(cascade[static_cast<std::size_t>(m)],
                                             flats[static_cast<std::size_t>(m)]));
        for (int j = m - 1; j >= 0; --j) {
            if (verify_periodic(cascade[static_cast<std::size_t>(j)],
                                flats[static_cast<std::size_t>(j)])) {
                throw std::logic_error("lifted schedule failed verification for " +
                                       cascade[static_cast<std::size_t>(j)].to_text());
            }
            cache.insert(cascade[static_cast<std::size_t>(j)],
                         certificate_digest(cascade[static_cast<std::size_t>(j)],
                                            flats[static_cast<std::size_t>(j)]));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Campaign pipeline
// ---------------------------------------------------------------------------

namespace {

struct WorkItem {
    long long seq;
    std::vector<long long> periods;
};

class BoundedQueue {
public:
    explicit BoundedQueue(std::size_t capacity) : capacity_(capacity) {}

    // Returns false when the queue was closed before the item could be queued.
    bool push(WorkItem item) {
        std::unique_lock lock(mu_);
        cv_push_.wait(lock, [&] { return items_.size() < capacity_ || closed_; });
        if (closed_) return false;
        items_.push_back(std::move(item));
        cv_pop_.notify_one();
        return true;
    }

    std::optional<WorkItem> pop() {
        std::unique_lock lock(mu_);
        cv_pop_.wait(lock, [&] { return !items_.empty() || closed_; });
        if (items_.empty()) return std::nullopt;
        WorkItem item = std::move(items_.front());
        items_.pop_front();
        cv_push_.notify_one();
        return item;
    }

    void close() {
        std::lock_guard lock(mu_);
        closed_ = true;
        cv_pop_.notify_all();
        cv_push_.notify_all();
    }

private:
    std::mutex mu_;
    std::condition_variable cv_push_;
    std::condition_variable cv_pop_;
    std::deque<WorkItem> items_;
    std::size_t capacity_;
    bool closed_ = false;
};

struct CompletionEvent {
    std::string instance_text;
    CheckResult::Verdict verdict = CheckResult::Verdict::Exhausted;
    int proving_member = -1;
    std::uint64_t states_expanded = 0;
    bool direct_run = false;
};

struct CheckpointData {
    std::string instance_text;
    long long checked = 0;
    long long runs = 0;
};

std::optional<CheckpointData> read_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    CheckpointData data;
    if (!std::getline(in, data.instance_text) || data.instance_text.empty()) {
        return std::nullopt;
    }
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "checked:") ls >> data.checked;
        if (key == "runs:") ls >> data.runs;
    }
    return data;
}

void write_checkpoint(const std::string& path, const CheckpointData& data) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << data.instance_text << '\n';
        out << "checked: " << data.checked << '\n';
        out << "runs: " << data.runs << '\n';
    }
    std::rename(tmp.c_str(), path.c_str());
}

const char* verdict_name(CheckResult::Verdict v) {
    switch (v) {
        case CheckResult::Verdict::Schedulable: return "schedulable";
        case CheckResult::Verdict::Unschedulable: return "unschedulable";
        case CheckResult::Verdict::Exhausted: return "exhausted";
    }
    return "?";
}

}  // namespace

CampaignReport run_campaign(const CampaignConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    CampaignReport report;
    report.threshold = describe_threshold(config.enumeration);
    report.alpha_terms = config.enumeration.alpha_terms;
    report.slice_states = config.check.slice_states;
    int workers = config.workers;
    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers < 1) workers = 1;
    }
    report.workers = workers;

    if (config.count_only) {
        const auto result = enumerate_essential_raw(nullptr, config.enumeration);
        report.essential_count = result.count;
        report.essential_by_agent_count = result.by_agent_count;
        report.completed = true;
        report.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return report;
    }

    SchedulableCache cache;
    if (!config.cache_file.empty()) {
        cache.attach_file(config.cache_file);
    }

    long long restored_checked = 0;
    long long restored_runs = 0;
    std::optional<std::vector<long long>> resume_until;
    if (config.resume && !config.checkpoint_file.empty()) {
        if (const auto ckpt = read_checkpoint(config.checkpoint_file)) {
            resume_until = parse_instance(ckpt->instance_text).periods();
            restored_checked = ckpt->checked;
            restored_runs = ckpt->runs;
        }
    }

    std::ofstream events;
    if (!config.events_file.empty()) {
        events.open(config.events_file, config.resume ? std::ios::app : std::ios::trunc);
        if (!events) {
            throw std::runtime_error("cannot open events file: " + config.events_file);
        }
    }

    BoundedQueue queue(4096);
    std::mutex collect_mu;
    std::map<long long, CompletionEvent> pending;
    long long next_seq = 0;
    long long checked_this_run = 0;
    long long direct_this_run = 0;
    std::string watermark = resume_until ? Instance(*resume_until).to_text() : std::string();
    std::atomic<bool> abort{false};
    std::atomic<bool> stop{false};
    std::string counterexample;
    std::string abort_reason;
    std::string worker_error;

    auto process_in_order = [&](long long seq, CompletionEvent event) {
        std::lock_guard lock(collect_mu);
        pending.emplace(seq, std::move(event));
        while (!pending.empty() && pending.begin()->first == next_seq) {
            CompletionEvent e = std::move(pending.begin()->second);
            pending.erase(pending.begin());
            ++next_seq;
            ++checked_this_run;
            if (e.direct_run) ++direct_this_run;
            watermark = e.instance_text;
            if (events) {
                events << "{\"instance\":\"" << e.instance_text << "\",\"verdict\":\""
                       << verdict_name(e.verdict) << "\",\"proving_member\":" << e.proving_member
                       << ",\"states_expanded\":" << e.states_expanded << "}\n";
            }
            if (e.verdict != CheckResult::Verdict::Schedulable && !abort.load()) {
                abort.store(true);
                if (e.verdict == CheckResult::Verdict::Unschedulable) {
                    counterexample = e.instance_text;
                    abort_reason = "counterexample: " + e.instance_text + " is unschedulable";
                } else {
                    abort_reason = "budget exhausted on " + e.instance_text;
                }
            }
            if (!config.checkpoint_file.empty() &&
                checked_this_run % config.checkpoint_interval == 0) {
                write_checkpoint(config.checkpoint_file,
                                 CheckpointData{watermark, restored_checked + checked_this_run,
                                                restored_runs + direct_this_run});
            }
            if (config.stop_after && checked_this_run >= *config.stop_after) {
                stop.store(true);
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                auto item = queue.pop();
                if (!item) break;
                if (abort.load() || stop.load()) continue;  // drain without checking
                CompletionEvent event;
                event.instance_text = Instance(item->periods).to_text();
                try {
                    const auto outcome =
                        check_with_cache(Instance(item->periods), cache, config.check);
                    event.verdict = outcome.result.verdict;
                    event.proving_member = outcome.result.proving_member.value_or(-1);
                    event.states_expanded = outcome.result.states_expanded;
                    event.direct_run = outcome.executed_search;
                } catch (const std::exception& ex) {
                    std::lock_guard lock(collect_mu);
                    if (worker_error.empty()) worker_error = ex.what();
                    abort.store(true);
                    event.verdict = CheckResult::Verdict::Exhausted;
                }
                process_in_order(item->seq, std::move(event));
            }
        });
    }

    bool resume_matched = !resume_until.has_value();
    long long seq_counter = 0;
    EnumerationResult enum_result;
    std::string producer_error;
    try {
        enum_result = enumerate_essential_raw(
            [&](const std::vector<long long>& periods) {
                if (abort.load() || stop.load()) return false;
                if (!resume_matched) {
                    if (periods == *resume_until) resume_matched = true;
                    return true;  // skip instances covered by the checkpoint
                }
                return queue.push(WorkItem{seq_counter++, periods});
            },
            config.enumeration);
    } catch (const std::exception& ex) {
        producer_error = ex.what();
        abort.store(true);
    }
    queue.close();
    for (auto& t : pool) t.join();

    report.essential_count = enum_result.count;
    report.essential_by_agent_count = enum_result.by_agent_count;
    report.checked_count = restored_checked + checked_this_run;
    report.direct_cycle_runs = restored_runs + direct_this_run;
    report.cache_size = cache.size();
    report.counterexample = counterexample;

    if (!producer_error.empty()) {
        abort_reason = "enumeration failed: " + producer_error;
    } else if (!worker_error.empty()) {
        abort_reason = "worker failed: " + worker_error;
    } else if (resume_until && !resume_matched) {
        abort.store(true);
        abort_reason = "checkpoint instance not found in the enumeration stream";
    }
    report.abort_reason = abort_reason;

    const bool stopped_early = stop.load() && !abort.load();
    report.completed = !abort.load() && !stopped_early && !enum_result.stopped_early;
    report.all_schedulable = report.completed && report.checked_count == report.essential_count;

    if (!config.checkpoint_file.empty() && !watermark.empty()) {
        write_checkpoint(config.checkpoint_file,
                         CheckpointData{watermark, report.checked_count,
                                        report.direct_cycle_runs});
    }
    if (events) events.flush();

    if (report.all_schedulable && config.audit_fraction > 0) {
        bool ok = true;
        report.audit_checked =
            audit_cache(cache, config.audit_fraction, config.audit_seed, config.check.search, ok);
        report.audit_ok = ok;
        report.all_schedulable = report.all_schedulable && ok;
    }

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

long long audit_cache(const SchedulableCache& cache, double fraction, std::uint64_t seed,
                      const SearchOptions& opts, bool& ok) {
    ok = true;
    long long checked = 0;
    for (const Instance& a : cache.sample(fraction, seed)) {
        const auto outcome = check_schedulable(GroupedInstance::from_instance(a), opts);
        ++checked;
        if (!std::holds_alternative<Schedulable>(outcome)) {
            ok = false;
        }
    }
    return checked;
}

std::string CampaignReport::to_text() const {
    std::ostringstream out;
    out << "essential-count: " << essential_count << '\n';
    out << "checked-count: " << checked_count << '\n';
    out << "direct-cycle-runs: " << direct_cycle_runs << '\n';
    out << "all-schedulable: " << (all_schedulable ? "true" : "false") << '\n';
    out << "completed: " << (completed ? "true" : "false") << '\n';
    char wall[64];
    std::snprintf(wall, sizeof(wall), "%.3f", wall_seconds);
    out << "wall-seconds: " << wall << '\n';
    out << "threshold: " << threshold << '\n';
    out << "alpha-terms: " << alpha_terms << '\n';
    out << "slice-states: " << slice_states << '\n';
    out << "workers: " << workers << '\n';
    out << "cache-size: " << cache_size << '\n';
    for (const auto& [agents, count] : essential_by_agent_count) {
        out << "essential-agents-" << agents << ": " << count << '\n';
    }
    if (!counterexample.empty()) {
        out << "counterexample: " << counterexample << '\n';
    }
    if (!abort_reason.empty()) {
        out << "abort-reason: " << abort_reason << '\n';
    }
    if (audit_checked > 0) {
        out << "audit-checked: " << audit_checked << '\n';
        out << "audit-ok: " << (audit_ok ? "true" : "false") << '\n';
    }
    return out.str();
}

}  // namespace pinwheel
