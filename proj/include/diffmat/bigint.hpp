#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>

namespace diffmat {

// Exact nonnegative matrix counts; never rounded.
using BigCount = boost::multiprecision::cpp_int;

using Rational = boost::multiprecision::cpp_rational;

inline BigCount big_pow(std::uint64_t base, std::uint64_t exp) {
    BigCount b = base;
    BigCount r = 1;
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

// log10 of a positive big integer without overflow, ~1e-15 relative accuracy.
inline double big_log10(const BigCount& n) {
    if (n < 0) return std::numeric_limits<double>::quiet_NaN();
    if (n == 0) return -std::numeric_limits<double>::infinity();
    const unsigned bits = boost::multiprecision::msb(n) + 1;
    if (bits <= 900) return std::log10(n.convert_to<double>());
    const unsigned shift = bits - 500;
    const double top = (n >> shift).convert_to<double>();
    return std::log10(top) + shift * std::log10(2.0);
}

}  // namespace diffmat
