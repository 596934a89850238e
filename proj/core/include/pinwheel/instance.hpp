// Canonical instance representation and exact density arithmetic.
#pragma once

#include "pinwheel/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace pinwheel {

// A nonempty multiset of positive integer periods, kept sorted non-decreasing.
class Instance {
public:
    explicit Instance(std::vector<long long> periods);

    const std::vector<long long>& periods() const { return periods_; }
    int agent_count() const { return static_cast<int>(periods_.size()); }
    long long max_period() const { return periods_.back(); }

    // Multiplicity view: (period, count) pairs with strictly increasing periods.
    std::vector<std::pair<long long, int>> multiplicities() const;

    // Canonical text form, e.g. "3,5,5,5,7".
    std::string to_text() const;

    // Copy with the agent at `index` removed; instance must keep >= 1 agent.
    Instance without_agent(int index) const;

    bool operator==(const Instance& other) const { return periods_ == other.periods_; }
    bool operator!=(const Instance& other) const { return periods_ != other.periods_; }
    bool operator<(const Instance& other) const { return periods_ < other.periods_; }

private:
    std::vector<long long> periods_;
};

// Accepts comma- or whitespace-separated positive integers, with optional
// "p^m" multiplicity terms (e.g. "5^3, 3, 7" -> 3,5,5,5,7).
Instance parse_instance(const std::string& text);

// D(A) = sum of 1/a_i, exact.
Rational density(const Instance& a);

// D'(A) = sum of 1/a_i for a_i <= 10 and 1/(a_i - 1) for a_i > 10, exact.
// Requires every period >= 2.
Rational modified_density(const Instance& a);

// B_k = (2, 3, 5, ..., 2^{k-1} + 1).
Instance generate_bk(int k);

}  // namespace pinwheel
