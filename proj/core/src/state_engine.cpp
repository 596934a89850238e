#include "pinwheel/state_engine.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstring>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace pinwheel {

// ---------------------------------------------------------------------------
// GroupedInstance
// ---------------------------------------------------------------------------

GroupedInstance GroupedInstance::from_instance(const Instance& a) {
    GroupedInstance gi;
    for (auto [period, count] : a.multiplicities()) {
        gi.groups.push_back(Group{period, count});
    }
    return gi;
}

Instance GroupedInstance::to_instance() const {
    std::vector<long long> periods;
    for (const auto& g : groups) {
        periods.insert(periods.end(), static_cast<std::size_t>(g.count), g.period);
    }
    return Instance(std::move(periods));
}

int GroupedInstance::agent_count() const {
    int total = 0;
    for (const auto& g : groups) total += g.count;
    return total;
}

int GroupedInstance::group_base(int g) const {
    int base = 0;
    for (int i = 0; i < g; ++i) base += groups[static_cast<std::size_t>(i)].count;
    return base;
}

int GroupedInstance::group_of_period(long long period) const {
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].period == period) return static_cast<int>(g);
    }
    throw std::invalid_argument("no group with period " + std::to_string(period));
}

GroupedState initial_state(const GroupedInstance& gi) {
    return GroupedState{std::vector<std::uint32_t>(static_cast<std::size_t>(gi.agent_count()), 0u)};
}

namespace {

// Shared layout for the grouped engine and the per-agent (naive) oracle: the
// naive spec simply has one group per agent, duplicates allowed.
struct EngineSpec {
    struct Group {
        long long period;
        int count;
    };
    std::vector<Group> groups;
    std::vector<int> order;  // group indices in successor-choice order
    std::vector<int> base;   // first counter slot of each group
    int total = 0;
    std::uint32_t bits = 1;  // packed bits per counter

    void finalize(bool largest_period_first) {
        base.resize(groups.size());
        int acc = 0;
        long long max_period = 1;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            base[g] = acc;
            acc += groups[g].count;
            max_period = std::max(max_period, groups[g].period);
        }
        total = acc;
        bits = static_cast<std::uint32_t>(
            std::bit_width(static_cast<std::uint64_t>(max_period - 1)));
        if (bits == 0) bits = 1;
        order.resize(groups.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
            const auto px = groups[static_cast<std::size_t>(x)].period;
            const auto py = groups[static_cast<std::size_t>(y)].period;
            return largest_period_first ? px > py : px < py;
        });
    }

    // Writes the successor of `src` under employing group g into `dst`.
    // Caller guarantees the group has a zero counter (slice minimum).
    void transition(const std::uint32_t* src, int g, std::uint32_t* dst) const {
        for (int i = 0; i < total; ++i) {
            dst[i] = src[i] > 0 ? src[i] - 1 : 0;
        }
        const int s = base[static_cast<std::size_t>(g)];
        const int e = s + groups[static_cast<std::size_t>(g)].count;
        for (int j = e - 1; j > s; --j) {
            dst[j] = dst[j - 1];
        }
        dst[s] = static_cast<std::uint32_t>(groups[static_cast<std::size_t>(g)].period - 1);
    }

    bool group_available(const std::uint32_t* state, int g) const {
        const int last = base[static_cast<std::size_t>(g)] +
                         groups[static_cast<std::size_t>(g)].count - 1;
        return state[last] == 0;
    }
};

struct Key128 {
    std::array<std::uint64_t, 2> w{0, 0};
    bool operator==(const Key128& o) const { return w == o.w; }
};

struct Key128Hash {
    std::size_t operator()(const Key128& k) const noexcept {
        std::uint64_t h = k.w[0] * 0x9E3779B97F4A7C15ull;
        h ^= k.w[1] + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        h *= 0xBF58476D1CE4E5B9ull;
        h ^= h >> 31;
        return static_cast<std::size_t>(h);
    }
};

struct Packer128 {
    using Key = Key128;
    using Hash = Key128Hash;
    std::uint32_t bits = 1;
    int total = 0;

    static bool fits(std::uint32_t bits, int total) {
        return static_cast<std::uint64_t>(bits) * static_cast<std::uint64_t>(total) <= 128;
    }

    void pack(const std::uint32_t* c, Key& k) const {
        k.w = {0, 0};
        unsigned pos = 0;
        for (int i = 0; i < total; ++i, pos += bits) {
            const unsigned word = pos >> 6;
            const unsigned off = pos & 63u;
            k.w[word] |= static_cast<std::uint64_t>(c[i]) << off;
            if (off + bits > 64) {
                k.w[word + 1] |= static_cast<std::uint64_t>(c[i]) >> (64 - off);
            }
        }
    }

    void unpack(const Key& k, std::uint32_t* c) const {
        const std::uint64_t mask = (bits >= 64) ? ~0ull : ((1ull << bits) - 1);
        unsigned pos = 0;
        for (int i = 0; i < total; ++i, pos += bits) {
            const unsigned word = pos >> 6;
            const unsigned off = pos & 63u;
            std::uint64_t v = k.w[word] >> off;
            if (off + bits > 64) {
                v |= k.w[word + 1] << (64 - off);
            }
            c[i] = static_cast<std::uint32_t>(v & mask);
        }
    }
};

// Fallback for instances whose packed state exceeds 128 bits. Slow, but such
// state spaces are far beyond any practical budget anyway.
struct PackerBytes {
    using Key = std::string;
    using Hash = std::hash<std::string>;
    int total = 0;

    void pack(const std::uint32_t* c, Key& k) const {
        k.assign(reinterpret_cast<const char*>(c),
                 static_cast<std::size_t>(total) * sizeof(std::uint32_t));
    }
    void unpack(const Key& k, std::uint32_t* c) const {
        std::memcpy(c, k.data(), static_cast<std::size_t>(total) * sizeof(std::uint32_t));
    }
};

enum class StepStatus { Running, FoundCycle, Acyclic, HorizonReached };

class ISearch {
public:
    virtual ~ISearch() = default;
    virtual StepStatus run(std::uint64_t max_new_states) = 0;
    virtual StepStatus status() const = 0;
    virtual std::uint64_t states() const = 0;
    virtual long long root_longest_path() const = 0;
    virtual const std::vector<int>& cycle_groups() const = 0;
    virtual const std::vector<int>& preperiod_groups() const = 0;
};

// Iterative DFS with on-path (gray) marking. Status map values: h >= 0 marks a
// finished state and its longest path to a sink; v <= -2 marks an on-path
// state at stack position -(v + 2).
template <class Packer>
class SearchCore final : public ISearch {
public:
    SearchCore(EngineSpec spec, Packer packer, std::optional<long long> horizon)
        : spec_(std::move(spec)), packer_(packer), horizon_(horizon) {
        scratch_.resize(static_cast<std::size_t>(spec_.total));
        child_.resize(static_cast<std::size_t>(spec_.total));
        status_.reserve(1u << 12);
        typename Packer::Key root{};
        std::fill(scratch_.begin(), scratch_.end(), 0u);
        packer_.pack(scratch_.data(), root);
        status_.emplace(root, gray(0));
        stack_.push_back(Frame{root, 0, 0, -1});
        states_ = 1;
    }

    StepStatus run(std::uint64_t max_new_states) override {
        if (state_ != StepStatus::Running) return state_;
        std::uint64_t inserted = 0;
        while (inserted < max_new_states) {
            if (stack_.empty()) break;  // unreachable; loop exits via Acyclic
            Frame& f = stack_.back();
            packer_.unpack(f.key, scratch_.data());
            int choice = -1;
            for (int ci = f.next; ci < static_cast<int>(spec_.order.size()); ++ci) {
                if (spec_.group_available(scratch_.data(),
                                          spec_.order[static_cast<std::size_t>(ci)])) {
                    choice = ci;
                    break;
                }
            }
            if (choice < 0) {
                // All successors explored (or dead end): finalize this state.
                const long long h = f.best;
                status_[f.key] = h;
                stack_.pop_back();
                if (stack_.empty()) {
                    root_longest_ = h;
                    state_ = StepStatus::Acyclic;
                    return state_;
                }
                Frame& parent = stack_.back();
                parent.best = std::max(parent.best, h + 1);
                continue;
            }
            f.next = choice + 1;
            const int g = spec_.order[static_cast<std::size_t>(choice)];
            spec_.transition(scratch_.data(), g, child_.data());
            typename Packer::Key ck{};
            packer_.pack(child_.data(), ck);
            auto it = status_.find(ck);
            if (it == status_.end()) {
                status_.emplace(ck, gray(stack_.size()));
                stack_.push_back(Frame{ck, 0, 0, g});
                ++states_;
                ++inserted;
                if (horizon_ && static_cast<long long>(stack_.size()) - 1 >= *horizon_) {
                    state_ = StepStatus::HorizonReached;
                    return state_;
                }
            } else if (it->second <= -2) {
                // Back edge: the labels from the repeated state to the top,
                // plus the closing edge, form the repeating pattern.
                const std::size_t pos = gray_pos(it->second);
                cycle_.clear();
                for (std::size_t j = pos + 1; j < stack_.size(); ++j) {
                    cycle_.push_back(stack_[j].entry);
                }
                cycle_.push_back(g);
                preperiod_.clear();
                for (std::size_t j = 1; j <= pos; ++j) {
                    preperiod_.push_back(stack_[j].entry);
                }
                state_ = StepStatus::FoundCycle;
                return state_;
            } else {
                f.best = std::max(f.best, 1 + it->second);
            }
        }
        return state_;
    }

    StepStatus status() const override { return state_; }
    std::uint64_t states() const override { return states_; }
    long long root_longest_path() const override { return root_longest_; }
    const std::vector<int>& cycle_groups() const override { return cycle_; }
    const std::vector<int>& preperiod_groups() const override { return preperiod_; }

private:
    struct Frame {
        typename Packer::Key key;
        long long best;  // max over finished successors of 1 + h(child)
        int next;        // next choice-order index to try
        int entry;       // group employed on the edge into this state
    };

    static long long gray(std::size_t pos) { return -static_cast<long long>(pos) - 2; }
    static std::size_t gray_pos(long long v) { return static_cast<std::size_t>(-v - 2); }

    EngineSpec spec_;
    Packer packer_;
    std::optional<long long> horizon_;
    std::vector<std::uint32_t> scratch_;
    std::vector<std::uint32_t> child_;
    std::unordered_map<typename Packer::Key, long long, typename Packer::Hash> status_;
    std::vector<Frame> stack_;
    std::uint64_t states_ = 0;
    long long root_longest_ = 0;
    std::vector<int> cycle_;
    std::vector<int> preperiod_;
    StepStatus state_ = StepStatus::Running;
};

std::unique_ptr<ISearch> make_search(EngineSpec spec, std::optional<long long> horizon) {
    if (Packer128::fits(spec.bits, spec.total)) {
        Packer128 p{spec.bits, spec.total};
        return std::make_unique<SearchCore<Packer128>>(std::move(spec), p, horizon);
    }
    PackerBytes p{spec.total};
    return std::make_unique<SearchCore<PackerBytes>>(std::move(spec), p, horizon);
}

EngineSpec grouped_spec(const GroupedInstance& gi, bool largest_period_first) {
    if (gi.groups.empty()) {
        throw std::invalid_argument("grouped instance has no groups");
    }
    EngineSpec spec;
    long long prev = 0;
    for (const auto& g : gi.groups) {
        if (g.period <= prev) {
            throw std::invalid_argument("grouped instance periods must be strictly increasing");
        }
        if (g.count < 1) {
            throw std::invalid_argument("group counts must be positive");
        }
        prev = g.period;
        spec.groups.push_back(EngineSpec::Group{g.period, g.count});
    }
    spec.finalize(largest_period_first);
    return spec;
}

EngineSpec naive_spec(const Instance& a, bool largest_period_first) {
    EngineSpec spec;
    for (long long p : a.periods()) {
        spec.groups.push_back(EngineSpec::Group{p, 1});
    }
    spec.finalize(largest_period_first);
    return spec;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public successor view (one edge per available group, engine order)
// ---------------------------------------------------------------------------

std::vector<std::pair<long long, GroupedState>> successors(const GroupedInstance& gi,
                                                           const GroupedState& s) {
    EngineSpec spec = grouped_spec(gi, /*largest_period_first=*/true);
    if (static_cast<int>(s.counters.size()) != spec.total) {
        throw std::invalid_argument("state size does not match the instance");
    }
    for (std::size_t g = 0; g < spec.groups.size(); ++g) {
        const int base = spec.base[g];
        const int count = spec.groups[g].count;
        for (int j = 0; j < count; ++j) {
            const auto c = s.counters[static_cast<std::size_t>(base + j)];
            if (c > spec.groups[g].period - 1) {
                throw std::invalid_argument("counter exceeds period - 1");
            }
            if (j > 0 && s.counters[static_cast<std::size_t>(base + j - 1)] < c) {
                throw std::invalid_argument("group counters must be sorted non-increasing");
            }
        }
    }
    std::vector<std::pair<long long, GroupedState>> result;
    std::vector<std::uint32_t> child(s.counters.size());
    for (int ci = 0; ci < static_cast<int>(spec.order.size()); ++ci) {
        const int g = spec.order[static_cast<std::size_t>(ci)];
        if (!spec.group_available(s.counters.data(), g)) continue;
        spec.transition(s.counters.data(), g, child.data());
        result.emplace_back(spec.groups[static_cast<std::size_t>(g)].period,
                            GroupedState{child});
    }
    return result;
}

// ---------------------------------------------------------------------------
// CycleSearch
// ---------------------------------------------------------------------------

struct CycleSearch::Impl {
    EngineSpec spec;
    std::unique_ptr<ISearch> core;
    Schedulable certificate;
    bool certificate_built = false;
};

CycleSearch::CycleSearch(const GroupedInstance& gi, bool largest_period_first)
    : impl_(std::make_unique<Impl>()) {
    impl_->spec = grouped_spec(gi, largest_period_first);
    impl_->core = make_search(impl_->spec, std::nullopt);
}

CycleSearch::~CycleSearch() = default;
CycleSearch::CycleSearch(CycleSearch&&) noexcept = default;
CycleSearch& CycleSearch::operator=(CycleSearch&&) noexcept = default;

CycleSearch::Status CycleSearch::run(std::uint64_t max_new_states) {
    const StepStatus st = impl_->core->run(max_new_states);
    switch (st) {
        case StepStatus::Running: return Status::Running;
        case StepStatus::FoundCycle: return Status::FoundCycle;
        default: return Status::Acyclic;
    }
}

CycleSearch::Status CycleSearch::status() const {
    switch (impl_->core->status()) {
        case StepStatus::Running: return Status::Running;
        case StepStatus::FoundCycle: return Status::FoundCycle;
        default: return Status::Acyclic;
    }
}

std::uint64_t CycleSearch::states_visited() const { return impl_->core->states(); }

const Schedulable& CycleSearch::certificate() const {
    if (impl_->core->status() != StepStatus::FoundCycle) {
        throw std::logic_error("no cycle certificate available");
    }
    if (!impl_->certificate_built) {
        auto to_periods = [&](const std::vector<int>& groups) {
            std::vector<long long> labels;
            labels.reserve(groups.size());
            for (int g : groups) {
                labels.push_back(impl_->spec.groups[static_cast<std::size_t>(g)].period);
            }
            return labels;
        };
        impl_->certificate.preperiod = to_periods(impl_->core->preperiod_groups());
        impl_->certificate.cycle = GroupedSchedule{to_periods(impl_->core->cycle_groups())};
        impl_->certificate_built = true;
    }
    return impl_->certificate;
}

long long CycleSearch::max_coverage() const {
    if (impl_->core->status() != StepStatus::Acyclic) {
        throw std::logic_error("search has not proven the reachable subgraph acyclic");
    }
    return impl_->core->root_longest_path();
}

// ---------------------------------------------------------------------------
// Drivers
// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t kSlice = 1u << 16;

}  // namespace

SearchOutcome check_schedulable(const GroupedInstance& gi, const SearchOptions& opts) {
    CycleSearch search(gi, opts.largest_period_first);
    const auto start = std::chrono::steady_clock::now();
    for (;;) {
        const std::uint64_t visited = search.states_visited();
        if (visited >= opts.max_states) {
            return Exhausted{BudgetKind::States};
        }
        const std::uint64_t slice = std::min<std::uint64_t>(kSlice, opts.max_states - visited);
        const auto status = search.run(slice);
        if (status == CycleSearch::Status::FoundCycle) {
            return search.certificate();
        }
        if (status == CycleSearch::Status::Acyclic) {
            return Unschedulable{search.max_coverage()};
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        if (elapsed.count() > opts.max_seconds) {
            return Exhausted{BudgetKind::Time};
        }
    }
}

SearchOutcome check_schedulable(const Instance& a, const SearchOptions& opts) {
    return check_schedulable(GroupedInstance::from_instance(a), opts);
}

Coverage max_coverage_days(const GroupedInstance& gi, std::optional<long long> horizon,
                           const SearchOptions& opts) {
    auto core = make_search(grouped_spec(gi, opts.largest_period_first), horizon);
    const auto start = std::chrono::steady_clock::now();
    for (;;) {
        const auto status = core->run(kSlice);
        if (status == StepStatus::FoundCycle) {
            return Coverage{/*infinite=*/true, /*truncated=*/false, 0};
        }
        if (status == StepStatus::Acyclic) {
            return Coverage{false, false, core->root_longest_path()};
        }
        if (status == StepStatus::HorizonReached) {
            return Coverage{false, /*truncated=*/true, *horizon};
        }
        if (core->states() >= opts.max_states) {
            throw std::runtime_error("max_coverage_days exceeded the state budget");
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        if (elapsed.count() > opts.max_seconds) {
            throw std::runtime_error("max_coverage_days exceeded the time budget");
        }
    }
}

GroupedSchedule extract_schedule(const SearchOutcome& outcome) {
    if (const auto* s = std::get_if<Schedulable>(&outcome)) {
        return s->cycle;
    }
    throw std::invalid_argument("outcome carries no schedule (not Schedulable)");
}

FlatSchedule expand_round_robin(const GroupedSchedule& gs, const GroupedInstance& gi) {
    if (gs.labels.empty()) {
        throw std::invalid_argument("grouped schedule cycle must be nonempty");
    }
    const std::size_t num_groups = gi.groups.size();
    std::vector<long long> occurrences(num_groups, 0);
    for (long long label : gs.labels) {
        ++occurrences[static_cast<std::size_t>(gi.group_of_period(label))];
    }
    // Repeat the grouped cycle until every group's round-robin rotation closes.
    long long reps = 1;
    for (std::size_t g = 0; g < num_groups; ++g) {
        const long long count = gi.groups[g].count;
        if (occurrences[g] == 0 || count == 1) continue;
        const long long step = count / std::gcd(occurrences[g], count);
        reps = std::lcm(reps, step);
    }
    const long long flat_length = reps * static_cast<long long>(gs.labels.size());
    if (flat_length > 100'000'000LL) {
        throw std::runtime_error("round-robin expansion too large");
    }
    FlatSchedule flat;
    flat.agent_count = gi.agent_count();
    flat.days.reserve(static_cast<std::size_t>(flat_length));
    std::vector<long long> served(num_groups, 0);
    for (long long rep = 0; rep < reps; ++rep) {
        for (long long label : gs.labels) {
            const int g = gi.group_of_period(label);
            const long long idx = served[static_cast<std::size_t>(g)]++;
            flat.days.push_back(gi.group_base(g) +
                                static_cast<int>(idx % gi.groups[static_cast<std::size_t>(g)].count));
        }
    }
    return flat;
}

// ---------------------------------------------------------------------------
// Naive (per-agent) oracle
// ---------------------------------------------------------------------------

NaiveOutcome naive_check(const Instance& a, const SearchOptions& opts) {
    auto core = make_search(naive_spec(a, opts.largest_period_first), std::nullopt);
    const auto start = std::chrono::steady_clock::now();
    for (;;) {
        const auto status = core->run(kSlice);
        if (status == StepStatus::FoundCycle) {
            NaiveOutcome out;
            out.verdict = NaiveOutcome::Verdict::Schedulable;
            out.cycle.agent_count = a.agent_count();
            for (int g : core->cycle_groups()) out.cycle.days.push_back(g);
            out.preperiod = core->preperiod_groups();
            return out;
        }
        if (status == StepStatus::Acyclic) {
            NaiveOutcome out;
            out.verdict = NaiveOutcome::Verdict::Unschedulable;
            out.max_coverage_days = core->root_longest_path();
            return out;
        }
        if (core->states() >= opts.max_states) {
            NaiveOutcome out;
            out.verdict = NaiveOutcome::Verdict::Exhausted;
            out.budget_kind = BudgetKind::States;
            return out;
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        if (elapsed.count() > opts.max_seconds) {
            NaiveOutcome out;
            out.verdict = NaiveOutcome::Verdict::Exhausted;
            out.budget_kind = BudgetKind::Time;
            return out;
        }
    }
}

}  // namespace pinwheel
