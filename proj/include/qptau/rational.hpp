#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace qptau {

// Exact rational scalar for the appendix identity suites.
using Rat = boost::multiprecision::mpq_rational;

inline Rat rat(long num, long den = 1) { return Rat(num, den); }

inline Rat pow_int(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    bool neg = e < 0;
    unsigned long n = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Rat acc(1), b = base;
    while (n) {
        if (n & 1UL) acc *= b;
        b *= b;
        n >>= 1UL;
    }
    return neg ? Rat(Rat(1) / acc) : acc;
}

// Parses "p/q" or "p".
Rat parse_rat(const std::string& s);
std::string rat_str(const Rat& r);

} // namespace qptau
