#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace vaforge {

/// Exact rational scalar. All coefficient arithmetic in the engine is exact;
/// there is no floating point anywhere.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0) {
        if (e < 0) throw std::domain_error("rat_pow: zero to negative power");
        return Rat(0);
    }
    Rat b = e < 0 ? Rat(1) / base : base;
    long n = e < 0 ? -e : e;
    Rat acc(1);
    while (n > 0) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

inline Rat factorial(long n) {
    Rat acc(1);
    for (long i = 2; i <= n; ++i) acc *= i;
    return acc;
}

/// Generalized binomial coefficient: m*(m-1)*...*(m-t+1)/t! for integer m
/// (possibly negative) and t >= 0.
inline Rat binomial(long m, long t) {
    if (t < 0) return Rat(0);
    Rat acc(1);
    for (long i = 0; i < t; ++i) acc *= Rat(m - i);
    return acc / factorial(t);
}

/// Parses "a", "-a" or "a/b" with arbitrary-precision components.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::domain_error("parse_rat: zero denominator");
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw std::domain_error("parse_rat: malformed rational '" + s + "'");
    }
}

inline std::string rat_str(const Rat& r) { return r.str(); }

}  // namespace vaforge
