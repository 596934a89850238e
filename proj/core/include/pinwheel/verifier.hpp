// Independent checker for the covering frequency condition: agent i works at
// most once in any a_i consecutive days. Shares no transition logic with the
// state engine, so engine bugs cannot self-certify.
#pragma once

#include "pinwheel/instance.hpp"
#include "pinwheel/schedule.hpp"

#include <optional>
#include <vector>

namespace pinwheel {

struct Violation {
    int agent;                  // 0-based index into the canonical instance
    long long window_start;     // day m of the offending window [m, m + a_i)
    long long window_length;    // a_i
    long long count;            // occurrences found in the window, >= 2
};

// Checks the bi-infinite periodic extension of `s` against every agent of `a`.
// A window count for a_i longer than the cycle is computed with exact
// division/remainder arithmetic, never by sampling. Returns nullopt on success.
std::optional<Violation> verify_periodic(const Instance& a, const FlatSchedule& s);

// Checks the frequency condition on the finite run labels[0..n), windows fully
// inside [0, n) only. Labels are 0-based agent indices.
std::optional<Violation> verify_prefix(const Instance& a, const std::vector<int>& labels);

}  // namespace pinwheel
