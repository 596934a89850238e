#include "pinwheel/enumeration.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pinwheel {

namespace {

long long contribution_denominator(long long period) {
    return period <= 10 ? period : period - 1;
}

struct ScaledUniverse {
    std::vector<long long> periods;  // ascending, no 10
    std::vector<long long> contrib;  // D' contribution scaled by scale, descending
    long long scale = 1;             // lcm of contribution denominators
    long long q_at = 0;              // smallest scaled value certainly at-or-above
    long long q_below_max = 0;       // largest scaled value certainly below
    int max_agents = 0;              // effective depth bound
};

// Classification over the universe lattice reduces to two integer cutoffs:
// D' values are multiples of 1/scale, so "certainly at-or-above" is
// q >= ceil(B * scale) and "certainly below" is q <= ceil(A * scale) - 1,
// where [A, B] brackets the threshold. The enumeration is only sound when no
// lattice point can land between the cutoffs, which the constructor checks
// exactly (this is the band-width versus minimal-gap argument).
ScaledUniverse build_universe(const EnumerationOptions& opts) {
    ScaledUniverse u;
    u.periods = opts.periods;
    std::sort(u.periods.begin(), u.periods.end());
    u.periods.erase(std::unique(u.periods.begin(), u.periods.end()), u.periods.end());
    if (u.periods.empty()) {
        throw std::invalid_argument("enumeration universe is empty");
    }
    for (long long p : u.periods) {
        if (p == 10) {
            throw std::invalid_argument("period 10 is inessential by definition");
        }
        if (p < 2 || p > 64) {
            throw std::invalid_argument("enumeration periods must lie in [2, 64] \\ {10}");
        }
    }
    if (opts.max_agents < 0 || opts.max_agents > 64) {
        throw std::invalid_argument("max_agents must lie in [0, 64] (0 = automatic)");
    }

    BigInt scale_big = 1;
    for (long long p : u.periods) {
        scale_big = boost::multiprecision::lcm(scale_big, BigInt(contribution_denominator(p)));
    }
    if (scale_big > BigInt(1LL << 40)) {
        throw std::invalid_argument("universe denominators too large for scaled enumeration");
    }
    u.scale = static_cast<long long>(scale_big);
    u.contrib.reserve(u.periods.size());
    for (long long p : u.periods) {
        u.contrib.push_back(u.scale / contribution_denominator(p));
    }
    // Periods ascending => contributions strictly descending (10 is excluded).

    Rational band_lo;  // certainly-below boundary
    Rational band_hi;  // certainly-at-or-above boundary
    if (opts.threshold_override) {
        band_lo = band_hi = *opts.threshold_override;
    } else {
        const AlphaStarBounds bounds = alpha_star_bounds(opts.alpha_terms);
        const Rational tenth(BigInt(1), BigInt(10));
        band_lo = bounds.lower - tenth;
        band_hi = bounds.upper - tenth;
    }
    const BigInt at = ceil_rat(band_hi * u.scale);
    const BigInt below = ceil_rat(band_lo * u.scale);
    if (at != below) {
        std::ostringstream msg;
        msg << "threshold band admits an ambiguous D' value on this universe "
               "(ceil(lower*scale) = "
            << below.str() << ", ceil(upper*scale) = " << at.str()
            << "); raise alpha_terms";
        throw std::runtime_error(msg.str());
    }
    if (at < 0 || at > BigInt(std::numeric_limits<long long>::max() / 2)) {
        throw std::invalid_argument("threshold out of range for this universe");
    }
    u.q_at = static_cast<long long>(at);
    u.q_below_max = u.q_at - 1;

    int effective = opts.max_agents;
    if (effective == 0) {
        // Every proper prefix of an essential instance keeps its scaled sum
        // at or below q_below_max, and each appended agent adds at least the
        // smallest contribution, so the depth saturates on its own.
        const long long c_min = u.contrib.back();
        const long long bound = (u.q_below_max < 0) ? 0 : u.q_below_max / c_min + 1;
        effective = static_cast<int>(std::min<long long>(bound, 64));
    }
    u.max_agents = effective;
    return u;
}

struct Enumerator {
    const ScaledUniverse& u;
    const EssentialRawCallback* cb;
    std::vector<long long> prefix;
    EnumerationResult result;
    bool stop = false;

    void emit() {
        ++result.count;
        ++result.by_agent_count[static_cast<int>(prefix.size())];
        if (cb && !(*cb)(prefix)) {
            stop = true;
        }
    }

    // Extends the non-decreasing prefix with periods of index >= min_idx.
    // sum is the scaled D' of the prefix, last the scaled contribution of its
    // largest period.
    void rec(int min_idx, long long sum, int agents, long long last) {
        if (agents > 0 && sum >= u.q_at && sum - last <= u.q_below_max) {
            emit();
            if (stop) return;
        }
        if (agents == u.max_agents) return;
        // Any extension keeps D' minus the final (smallest) contribution at
        // least `sum`, so once sum exceeds the certainly-below cutoff no
        // extension can stay essential.
        if (sum > u.q_below_max) return;
        const long long remaining = u.max_agents - agents;
        for (int j = min_idx; j < static_cast<int>(u.periods.size()); ++j) {
            const long long c = u.contrib[static_cast<std::size_t>(j)];
            if (sum + remaining * c < u.q_at) break;  // cannot reach the threshold
            prefix.push_back(u.periods[static_cast<std::size_t>(j)]);
            rec(j, sum + c, agents + 1, c);
            prefix.pop_back();
            if (stop) return;
        }
    }
};

}  // namespace

EnumerationResult enumerate_essential_raw(const EssentialRawCallback& cb,
                                          const EnumerationOptions& opts) {
    const ScaledUniverse u = build_universe(opts);
    Enumerator e{u, cb ? &cb : nullptr, {}, {}, false};
    e.prefix.reserve(static_cast<std::size_t>(u.max_agents));
    e.rec(0, 0, 0, 0);
    e.result.stopped_early = e.stop;
    return e.result;
}

long long enumerate_essential(const std::function<void(const Instance&)>& emit,
                              const EnumerationOptions& opts) {
    const auto result = enumerate_essential_raw(
        [&](const std::vector<long long>& periods) {
            if (emit) emit(Instance(periods));
            return true;
        },
        opts);
    return result.count;
}

std::string describe_threshold(const EnumerationOptions& opts) {
    if (opts.threshold_override) {
        return to_string(*opts.threshold_override);
    }
    std::ostringstream out;
    out << "alpha*(" << opts.alpha_terms << " terms) - 1/10";
    return out.str();
}

}  // namespace pinwheel
