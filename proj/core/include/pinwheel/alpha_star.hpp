// Rigorous rational enclosure of alpha* = sum_{i>=1} 1/(2^{i-1}+1) and the
// threshold predicates built on it.
#pragma once

#include "pinwheel/instance.hpp"
#include "pinwheel/rational.hpp"

namespace pinwheel {

// lower = N-term partial sum; upper = lower + 2^{1-N}. The tail majorant is
// geometric: each omitted term 1/(2^{i-1}+1) < 2^{1-i}.
struct AlphaStarBounds {
    int terms;
    Rational lower;
    Rational upper;
};

AlphaStarBounds alpha_star_bounds(int n_terms);

enum class ThresholdClass { AtOrAbove, Below, Ambiguous };

// Compares D'(a) against alpha* - 1/10 through the enclosure:
//   AtOrAbove  iff D' >= upper - 1/10   (certainly at or above the threshold)
//   Below      iff D' <  lower - 1/10   (certainly below)
//   Ambiguous  otherwise                (D' lands inside the enclosure band)
ThresholdClass classify_threshold(const Instance& a, const AlphaStarBounds& bounds);

// Same comparison against an exact rational threshold (no band, never Ambiguous).
ThresholdClass classify_threshold(const Rational& modified_density_value,
                                  const Rational& threshold);

// True iff: no period equals 10, classification is AtOrAbove, and removing
// any single agent drops the classification to Below.
// Requires all periods in {3,...,20}.
bool is_essential(const Instance& a, const AlphaStarBounds& bounds);

const char* threshold_class_name(ThresholdClass c);

}  // namespace pinwheel
