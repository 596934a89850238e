// Exact arithmetic carrier for densities and threshold comparisons.
// All decision paths in this library compare rationals exactly; floating
// point appears only in diagnostics.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace pinwheel {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    return Rational(num, den);
}

// Largest integer <= q. cpp_int division truncates toward zero, so negative
// non-integers need one correction step. Canonical denominators are positive.
inline BigInt floor_rat(const Rational& q) {
    BigInt n = boost::multiprecision::numerator(q);
    BigInt d = boost::multiprecision::denominator(q);
    BigInt t = n / d;
    if (n % d != 0 && n < 0) {
        --t;
    }
    return t;
}

inline BigInt ceil_rat(const Rational& q) {
    BigInt n = boost::multiprecision::numerator(q);
    BigInt d = boost::multiprecision::denominator(q);
    BigInt t = n / d;
    if (n % d != 0 && n > 0) {
        ++t;
    }
    return t;
}

// 2^exp as an exact rational; exp may be negative.
inline Rational pow2_rational(long exp) {
    BigInt one = 1;
    if (exp >= 0) {
        return Rational(one << static_cast<unsigned>(exp), one);
    }
    return Rational(one, one << static_cast<unsigned>(-exp));
}

// Accepts "p/q" or a plain integer "p".
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(BigInt(text));
        }
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        return make_rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("not a rational: '" + text + "'");
    }
}

inline std::string to_string(const Rational& q) {
    return q.str();
}

}  // namespace pinwheel
