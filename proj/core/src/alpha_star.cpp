#include "pinwheel/alpha_star.hpp"

#include <stdexcept>

namespace pinwheel {

AlphaStarBounds alpha_star_bounds(int n_terms) {
    if (n_terms < 1) {
        throw std::invalid_argument("alpha* enclosure needs at least one term");
    }
    if (n_terms > 4096) {
        throw std::invalid_argument("alpha* enclosure term count is unreasonably large");
    }
    Rational lower = 0;
    for (int i = 1; i <= n_terms; ++i) {
        lower += Rational(BigInt(1), (BigInt(1) << (i - 1)) + 1);
    }
    Rational upper = lower + pow2_rational(1 - n_terms);
    return AlphaStarBounds{n_terms, lower, upper};
}

ThresholdClass classify_threshold(const Instance& a, const AlphaStarBounds& bounds) {
    const Rational dprime = modified_density(a);
    const Rational tenth(BigInt(1), BigInt(10));
    if (dprime >= bounds.upper - tenth) {
        return ThresholdClass::AtOrAbove;
    }
    if (dprime < bounds.lower - tenth) {
        return ThresholdClass::Below;
    }
    return ThresholdClass::Ambiguous;
}

ThresholdClass classify_threshold(const Rational& modified_density_value,
                                  const Rational& threshold) {
    return modified_density_value >= threshold ? ThresholdClass::AtOrAbove
                                               : ThresholdClass::Below;
}

bool is_essential(const Instance& a, const AlphaStarBounds& bounds) {
    for (long long p : a.periods()) {
        if (p < 3 || p > 20) {
            throw std::invalid_argument("essentiality is defined for periods in {3,...,20}");
        }
    }
    for (long long p : a.periods()) {
        if (p == 10) return false;
    }
    if (classify_threshold(a, bounds) != ThresholdClass::AtOrAbove) {
        return false;
    }
    if (a.agent_count() == 1) {
        // Single agent: "removal" leaves the empty instance, whose D' is 0,
        // certainly below the threshold.
        return true;
    }
    for (int i = 0; i < a.agent_count(); ++i) {
        if (classify_threshold(a.without_agent(i), bounds) != ThresholdClass::Below) {
            return false;
        }
    }
    return true;
}

const char* threshold_class_name(ThresholdClass c) {
    switch (c) {
        case ThresholdClass::AtOrAbove: return "at-or-above";
        case ThresholdClass::Below: return "below";
        case ThresholdClass::Ambiguous: return "ambiguous";
    }
    return "?";
}

}  // namespace pinwheel
