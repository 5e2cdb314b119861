#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

namespace hforge {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar.  All identity-style tests in this library run on
/// this type so that "equals" means equals.
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }

inline Rat rat(long long num, long long den = 1) { return Rat(BigInt(num), BigInt(den)); }

inline bool is_zero(const Rat& r) { return r.is_zero(); }

inline Rat abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

/// log2 of a positive big integer, accurate to ~1e-15 even when the value
/// does not fit in a double.
inline double log2_abs(const BigInt& v) {
    BigInt a = v < 0 ? BigInt(-v) : v;
    if (a.is_zero()) return -std::numeric_limits<double>::infinity();
    const unsigned bits = boost::multiprecision::msb(a);
    if (bits <= 960) return std::log2(a.template convert_to<double>());
    const unsigned shift = bits - 52;
    const double top = (a >> shift).template convert_to<double>();
    return std::log2(top) + static_cast<double>(shift);
}

/// Natural log of |r|; finite for any nonzero rational regardless of size.
inline double log_abs(const Rat& r) {
    if (r.is_zero()) return -std::numeric_limits<double>::infinity();
    constexpr double ln2 = 0.6931471805599453;
    return (log2_abs(numerator(r)) - log2_abs(denominator(r))) * ln2;
}

inline Rat factorial(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Rat(f);
}

inline Rat binomial(int n, int k) {
    if (k < 0 || k > n) return Rat(0);
    BigInt b = 1;
    for (int i = 0; i < k; ++i) {
        b *= (n - i);
        b /= (i + 1);
    }
    return Rat(b);
}

inline Rat pow_rat(const Rat& base, int e) {
    if (e < 0) {
        if (base.is_zero()) throw std::domain_error("pow_rat: 0^negative");
        return Rat(1) / pow_rat(base, -e);
    }
    Rat out(1), b = base;
    for (int n = e; n > 0; n >>= 1) {
        if (n & 1) out *= b;
        b *= b;
    }
    return out;
}

inline std::string to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace hforge
