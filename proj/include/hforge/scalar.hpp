#pragma once

#include "hforge/errors.hpp"
#include "hforge/rational.hpp"

#include <cmath>
#include <string>

namespace hforge {

/// Exact scalar of the form coef * E^p, where E is one tagged transcendental
/// unit (in practice exp(eps) for the ambient group parameter) and coef is an
/// exact rational.  Sums require matching powers of E, which is all the
/// group-law and reparametrization identities ever produce; the float backend
/// substitutes a numeric value for E instead.
struct XRat {
    Rat coef{0};
    int upow = 0;

    XRat() = default;
    XRat(const Rat& c) : coef(c) {}           // NOLINT: implicit by design
    XRat(long long n) : coef(Rat(n)) {}       // NOLINT
    XRat(const Rat& c, int p) : coef(c), upow(c.is_zero() ? 0 : p) {}

    bool is_zero() const { return coef.is_zero(); }

    friend XRat operator-(const XRat& a) { return XRat(Rat(-a.coef), a.upow); }

    friend XRat operator+(const XRat& a, const XRat& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.upow != b.upow)
            throw MixedUnitPowers("XRat add: unit powers " + std::to_string(a.upow) + " vs " +
                                  std::to_string(b.upow));
        return XRat(Rat(a.coef + b.coef), a.upow);
    }
    friend XRat operator-(const XRat& a, const XRat& b) { return a + (-b); }
    friend XRat operator*(const XRat& a, const XRat& b) {
        if (a.is_zero() || b.is_zero()) return XRat();
        return XRat(Rat(a.coef * b.coef), a.upow + b.upow);
    }
    friend XRat operator/(const XRat& a, const XRat& b) {
        if (b.is_zero()) throw std::domain_error("XRat: division by zero");
        if (a.is_zero()) return XRat();
        return XRat(Rat(a.coef / b.coef), a.upow - b.upow);
    }
    XRat& operator+=(const XRat& o) { return *this = *this + o; }
    XRat& operator-=(const XRat& o) { return *this = *this - o; }
    XRat& operator*=(const XRat& o) { return *this = *this * o; }
    XRat& operator/=(const XRat& o) { return *this = *this / o; }

    friend bool operator==(const XRat& a, const XRat& b) {
        return a.coef == b.coef && (a.is_zero() || a.upow == b.upow);
    }
    friend bool operator!=(const XRat& a, const XRat& b) { return !(a == b); }
};

/// E^p as a value.
inline XRat unit_power(int p) { return XRat(Rat(1), p); }

inline std::string to_string(const XRat& x) {
    if (x.upow == 0) return to_string(x.coef);
    return to_string(x.coef) + "*E^" + std::to_string(x.upow);
}

/// Numeric value given E = unit_value.
inline double to_double(const XRat& x, double unit_value) {
    return to_double(x.coef) * std::pow(unit_value, x.upow);
}

// ---- scalar traits used by the series engine ------------------------------

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double from_int(long long v) { return static_cast<double>(v); }
    static double from_rat(const Rat& r) { return to_double(r); }
    static bool is_zero(double v) { return v == 0.0; }
    static double log_abs(double v) { return std::log(std::fabs(v)); }
};

template <>
struct scalar_traits<Rat> {
    static constexpr bool exact = true;
    static Rat zero() { return Rat(0); }
    static Rat one() { return Rat(1); }
    static Rat from_int(long long v) { return Rat(v); }
    static Rat from_rat(const Rat& r) { return r; }
    static bool is_zero(const Rat& v) { return v.is_zero(); }
    static double log_abs(const Rat& v) { return hforge::log_abs(v); }
};

template <>
struct scalar_traits<XRat> {
    static constexpr bool exact = true;
    static XRat zero() { return XRat(); }
    static XRat one() { return XRat(Rat(1)); }
    static XRat from_int(long long v) { return XRat(Rat(v)); }
    static XRat from_rat(const Rat& r) { return XRat(r); }
    static bool is_zero(const XRat& v) { return v.is_zero(); }
    // magnitude of the unit is unknown; log of the rational part is what the
    // radius machinery wants (a common E^p factor does not move a radius)
    static double log_abs(const XRat& v) { return hforge::log_abs(v.coef); }
};

}  // namespace hforge
