// Enumeration of essential instances: no period 10, modified density
// certainly at or above the threshold, and certainly below it after removing
// any single agent. Instances stream in lexicographic order over
// non-decreasing period sequences.
#pragma once

#include "pinwheel/alpha_star.hpp"
#include "pinwheel/instance.hpp"
#include "pinwheel/rational.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pinwheel {

struct EnumerationOptions {
    // Admissible periods; must exclude 10. Defaults to {3..9} + {11..20}.
    std::vector<long long> periods = {3, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20};
    // 0 = automatic: the removal condition caps the depth intrinsically (every
    // proper prefix of an essential instance stays below the threshold, and
    // each agent contributes at least the smallest admissible amount). On the
    // default universe the bound works out to 23 agents. Explicit values
    // restrict the enumeration for sub-universe tests.
    int max_agents = 0;
    int alpha_terms = 64;
    // When set, replaces the alpha* band by an exact rational threshold
    // (D' >= t is at-or-above); used for scaled dry runs.
    std::optional<Rational> threshold_override;
};

struct EnumerationResult {
    long long count = 0;
    std::map<int, long long> by_agent_count;
    bool stopped_early = false;
};

// Fast path: the callback receives the sorted period sequence of each
// essential instance (buffer reused between calls); return false to stop.
using EssentialRawCallback = std::function<bool(const std::vector<long long>&)>;

EnumerationResult enumerate_essential_raw(const EssentialRawCallback& cb,
                                          const EnumerationOptions& opts = {});

// Spec surface: emits each essential instance exactly once, returns the count.
long long enumerate_essential(const std::function<void(const Instance&)>& emit,
                              const EnumerationOptions& opts = {});

// Human-readable description of the active threshold, for report echo.
std::string describe_threshold(const EnumerationOptions& opts);

}  // namespace pinwheel
