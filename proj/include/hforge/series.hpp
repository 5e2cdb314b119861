#pragma once

#include "hforge/errors.hpp"
#include "hforge/radius.hpp"
#include "hforge/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace hforge {

/// Power series around a base point, truncated at order K = coeffs.size()-1.
/// valid_order is the highest index guaranteed correct by whatever operation
/// produced the series; everything beyond it is carried but untrusted.
template <class S>
struct TruncatedSeries {
    using scalar_type = S;

    S base{};
    std::vector<S> coeffs;  // indices 0..K
    int valid_order = 0;
    bool approximate = false;  // set by formal (uncertified) rebase

    TruncatedSeries() = default;
    TruncatedSeries(S base_point, std::vector<S> c)
        : base(std::move(base_point)), coeffs(std::move(c)) {
        valid_order = order();
    }
    TruncatedSeries(S base_point, std::vector<S> c, int valid)
        : base(std::move(base_point)), coeffs(std::move(c)), valid_order(valid) {}

    int order() const { return static_cast<int>(coeffs.size()) - 1; }

    const S& operator[](int k) const { return coeffs[k]; }
    S& operator[](int k) { return coeffs[k]; }

    /// Highest index with a nonzero coefficient, or -1 for the zero series.
    int degree() const {
        for (int k = order(); k >= 0; --k)
            if (!scalar_traits<S>::is_zero(coeffs[k])) return k;
        return -1;
    }

    /// True when the carried coefficients visibly terminate before the valid
    /// order, i.e. the series is exactly a polynomial.
    bool is_polynomial() const { return degree() < valid_order; }

    static TruncatedSeries zero(S base_point, int K) {
        return TruncatedSeries(std::move(base_point), std::vector<S>(K + 1, scalar_traits<S>::zero()), K);
    }
    static TruncatedSeries constant(S base_point, S value, int K) {
        auto s = zero(std::move(base_point), K);
        s.coeffs[0] = std::move(value);
        return s;
    }
};

using DSeries = TruncatedSeries<double>;
using QSeries = TruncatedSeries<Rat>;
using XSeries = TruncatedSeries<XRat>;

namespace detail {
template <class S>
void require_same_base(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
    if (!(a.base == b.base)) throw BasePointMismatch("series operands have different base points");
}
}  // namespace detail

template <class S>
TruncatedSeries<S> add(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
    detail::require_same_base(a, b);
    const int K = std::min(a.order(), b.order());
    TruncatedSeries<S> out = TruncatedSeries<S>::zero(a.base, K);
    for (int k = 0; k <= K; ++k) out.coeffs[k] = a.coeffs[k] + b.coeffs[k];
    out.valid_order = std::min(a.valid_order, b.valid_order);
    out.approximate = a.approximate || b.approximate;
    return out;
}

template <class S>
TruncatedSeries<S> sub(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
    detail::require_same_base(a, b);
    const int K = std::min(a.order(), b.order());
    TruncatedSeries<S> out = TruncatedSeries<S>::zero(a.base, K);
    for (int k = 0; k <= K; ++k) out.coeffs[k] = a.coeffs[k] - b.coeffs[k];
    out.valid_order = std::min(a.valid_order, b.valid_order);
    out.approximate = a.approximate || b.approximate;
    return out;
}

template <class S>
TruncatedSeries<S> scale(const TruncatedSeries<S>& a, const S& factor) {
    TruncatedSeries<S> out = a;
    for (auto& c : out.coeffs) c = c * factor;
    return out;
}

/// Cauchy product: exact convolution up to min(valid orders).
template <class S>
TruncatedSeries<S> mul(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
    detail::require_same_base(a, b);
    const int K = std::min(a.order(), b.order());
    TruncatedSeries<S> out = TruncatedSeries<S>::zero(a.base, K);
    for (int k = 0; k <= K; ++k) {
        S acc = scalar_traits<S>::zero();
        for (int l = 0; l <= k; ++l) acc += a.coeffs[l] * b.coeffs[k - l];
        out.coeffs[k] = acc;
    }
    out.valid_order = std::min(a.valid_order, b.valid_order);
    out.approximate = a.approximate || b.approximate;
    return out;
}

/// Series division a / b; requires b's constant term nonzero.
template <class S>
TruncatedSeries<S> div(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
    detail::require_same_base(a, b);
    if (scalar_traits<S>::is_zero(b.coeffs[0]))
        throw DegenerateSeries("div: divisor has vanishing constant term");
    const int K = std::min(a.order(), b.order());
    TruncatedSeries<S> out = TruncatedSeries<S>::zero(a.base, K);
    for (int k = 0; k <= K; ++k) {
        S acc = a.coeffs[k];
        for (int l = 1; l <= k; ++l) acc -= b.coeffs[l] * out.coeffs[k - l];
        out.coeffs[k] = acc / b.coeffs[0];
    }
    out.valid_order = std::min(a.valid_order, b.valid_order);
    out.approximate = a.approximate || b.approximate;
    return out;
}

template <class S>
TruncatedSeries<S> differentiate(const TruncatedSeries<S>& a) {
    if (a.valid_order < 1) throw DegenerateSeries("differentiate: valid_order would underflow");
    const int K = std::max(a.order() - 1, 0);
    TruncatedSeries<S> out = TruncatedSeries<S>::zero(a.base, K);
    for (int k = 0; k < static_cast<int>(a.coeffs.size()) - 1; ++k)
        out.coeffs[k] = a.coeffs[k + 1] * scalar_traits<S>::from_int(k + 1);
    out.valid_order = a.valid_order - 1;
    out.approximate = a.approximate;
    return out;
}

template <class S>
TruncatedSeries<S> antidifferentiate(const TruncatedSeries<S>& a, const S& constant) {
    const int K = a.order() + 1;
    TruncatedSeries<S> out = TruncatedSeries<S>::zero(a.base, K);
    out.coeffs[0] = constant;
    for (int k = 0; k <= a.order(); ++k)
        out.coeffs[k + 1] = a.coeffs[k] / scalar_traits<S>::from_int(k + 1);
    out.valid_order = std::min(a.valid_order + 1, K);
    out.approximate = a.approximate;
    return out;
}

/// Expansion of (1 + c*x)^m around 0 for integer m (negative allowed),
/// truncated at order K.  Exact in the scalar ring.
template <class S>
TruncatedSeries<S> binom_power(const S& c, int m, int K) {
    TruncatedSeries<S> out = TruncatedSeries<S>::zero(scalar_traits<S>::zero(), K);
    S coeff = scalar_traits<S>::one();  // generalized binomial(m, l) * c^l
    out.coeffs[0] = coeff;
    for (int l = 1; l <= K; ++l) {
        coeff = coeff * scalar_traits<S>::from_int(m - l + 1) / scalar_traits<S>::from_int(l);
        coeff = coeff * c;
        out.coeffs[l] = coeff;
        if (m >= 0 && l >= m) {  // exact polynomial: remaining terms vanish
            break;
        }
    }
    out.valid_order = K;
    return out;
}

/// Substitute x = xt / (1 + eps*xt) into a series based at 0; the result is a
/// series in xt based at 0, exact to the input's valid order.  eps = 0 is the
/// identity, and composing with -eps inverts (one-parameter group law).
template <class S>
TruncatedSeries<S> compose_moebius(const TruncatedSeries<S>& s, const S& eps) {
    if (!scalar_traits<S>::is_zero(s.base))
        throw BasePointMismatch("compose_moebius: series must be based at 0");
    const int K = s.order();
    if (K < 1) throw DegenerateSeries("compose_moebius: need order >= 1");

    TruncatedSeries<S> out = TruncatedSeries<S>::zero(s.base, K);
    out.coeffs[0] = s.coeffs[0];
    // x^k = sum_{m>=k} (-1)^{m-k} C(m-1, m-k) eps^{m-k} xt^m
    for (int k = 1; k <= K; ++k) {
        S w = scalar_traits<S>::one();
        for (int m = k; m <= K; ++m) {
            if (m > k) {
                // w(k,m) = w(k,m-1) * (-eps) * (m-1) / (m-k)
                w = w * scalar_traits<S>::from_int(m - 1) / scalar_traits<S>::from_int(m - k);
                w = w * (scalar_traits<S>::zero() - eps);
            }
            out.coeffs[m] += s.coeffs[k] * w;
        }
    }
    out.valid_order = s.valid_order;
    out.approximate = s.approximate;
    return out;
}

enum class Certify { No, Yes };

/// Log-magnitudes of the coefficients, for the root-test machinery.
template <class S>
std::vector<double> coeff_log_abs(const TruncatedSeries<S>& s) {
    std::vector<double> out(s.coeffs.size());
    for (size_t i = 0; i < s.coeffs.size(); ++i) out[i] = scalar_traits<S>::log_abs(s.coeffs[i]);
    return out;
}

/// Taylor shift to a new base point via binomial re-expansion.  Exact (and
/// valid-order preserving) for polynomial inputs; otherwise the result is
/// flagged approximate.  Certified mode insists the shift stays strictly
/// inside the root-test radius.
template <class S>
TruncatedSeries<S> rebase(const TruncatedSeries<S>& s, const S& new_base,
                          Certify certify = Certify::No) {
    const S delta = new_base - s.base;
    if (scalar_traits<S>::is_zero(delta)) return s;

    const bool poly = s.is_polynomial();
    if (certify == Certify::Yes && !poly) {
        if (s.coeffs.size() < 16)
            throw OutsideRadius("rebase: too few coefficients to certify the shift");
        const RadiusEstimate est = radius_estimate_log(coeff_log_abs(s));
        const double shift = std::exp(scalar_traits<S>::log_abs(delta));
        if (est.kind == RadiusEstimate::Kind::Zero ||
            (est.kind == RadiusEstimate::Kind::Finite && shift >= est.radius))
            throw OutsideRadius("rebase: |new_base - base| not inside the estimated radius");
    }

    const int K = s.order();
    TruncatedSeries<S> out = TruncatedSeries<S>::zero(new_base, K);
    // Horner-style shift: process coefficients from the top down.
    for (int k = K; k >= 0; --k) {
        for (int j = K - k; j >= 1; --j)
            out.coeffs[j] = out.coeffs[j] * delta + out.coeffs[j - 1];
        out.coeffs[0] = out.coeffs[0] * delta + s.coeffs[k];
    }
    out.valid_order = s.valid_order;
    out.approximate = s.approximate || !poly;
    return out;
}

template <class S>
struct EvalResult {
    S value;
    bool tail_flag = false;  // last included term is not negligible
};

/// Horner evaluation of the truncated polynomial.  tail_flag reports when the
/// K-th term is larger than tail_rel_tol relative to the result, i.e. the
/// truncation cannot be trusted at this point.
template <class S>
EvalResult<S> evaluate(const TruncatedSeries<S>& s, const S& x, double tail_rel_tol = 1e-12) {
    const S dx = x - s.base;
    S acc = scalar_traits<S>::zero();
    for (int k = s.order(); k >= 0; --k) acc = acc * dx + s.coeffs[k];

    EvalResult<S> out{acc, false};
    const int K = s.order();
    const double log_dx = scalar_traits<S>::log_abs(dx);
    const double log_last = scalar_traits<S>::log_abs(s.coeffs[K]) +
                            (std::isfinite(log_dx) ? K * log_dx : -1e300);
    const double log_val = scalar_traits<S>::log_abs(acc);
    const double ref = std::isfinite(log_val) ? log_val : 0.0;
    out.tail_flag = std::isfinite(log_last) && (log_last - ref) > std::log(tail_rel_tol);
    return out;
}

/// exp of a series with zero constant term (exact coefficient recurrence).
template <class S>
TruncatedSeries<S> exp_series(const TruncatedSeries<S>& g) {
    if (!scalar_traits<S>::is_zero(g.coeffs[0]))
        throw DegenerateSeries("exp_series: constant term must vanish");
    const int K = g.order();
    TruncatedSeries<S> out = TruncatedSeries<S>::zero(g.base, K);
    out.coeffs[0] = scalar_traits<S>::one();
    for (int m = 1; m <= K; ++m) {
        S acc = scalar_traits<S>::zero();
        for (int j = 1; j <= m; ++j) acc += g.coeffs[j] * scalar_traits<S>::from_int(j) * out.coeffs[m - j];
        out.coeffs[m] = acc / scalar_traits<S>::from_int(m);
    }
    out.valid_order = std::min(g.valid_order, K);
    out.approximate = g.approximate;
    return out;
}

/// (1 + h)^alpha for a series h with zero constant term and rational alpha,
/// via the first-order recurrence (1+h) f' = alpha h' f.
template <class S>
TruncatedSeries<S> pow1p_series(const TruncatedSeries<S>& h, const S& alpha) {
    if (!scalar_traits<S>::is_zero(h.coeffs[0]))
        throw DegenerateSeries("pow1p_series: constant term must vanish");
    const int K = h.order();
    TruncatedSeries<S> out = TruncatedSeries<S>::zero(h.base, K);
    out.coeffs[0] = scalar_traits<S>::one();
    for (int m = 1; m <= K; ++m) {
        S acc = scalar_traits<S>::zero();
        for (int j = 1; j <= m; ++j) {
            const S w = alpha * scalar_traits<S>::from_int(j) - scalar_traits<S>::from_int(m - j);
            acc += w * h.coeffs[j] * out.coeffs[m - j];
        }
        out.coeffs[m] = acc / scalar_traits<S>::from_int(m);
    }
    out.valid_order = std::min(h.valid_order, K);
    out.approximate = h.approximate;
    return out;
}

/// Coefficientwise equality up to and including index `upto`.
template <class S>
bool equal_prefix(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b, int upto) {
    if (!(a.base == b.base)) return false;
    if (a.order() < upto || b.order() < upto) return false;
    for (int k = 0; k <= upto; ++k)
        if (!(a.coeffs[k] == b.coeffs[k])) return false;
    return true;
}

template <class S>
double max_abs_coeff(const TruncatedSeries<S>& s, int upto) {
    double m = 0.0;
    for (int k = 0; k <= std::min(upto, s.order()); ++k) {
        const double la = scalar_traits<S>::log_abs(s.coeffs[k]);
        if (std::isfinite(la)) m = std::max(m, std::exp(la));
    }
    return m;
}

inline DSeries to_double_series(const QSeries& s) {
    std::vector<double> c(s.coeffs.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = to_double(s.coeffs[i]);
    DSeries out(to_double(s.base), std::move(c), s.valid_order);
    out.approximate = s.approximate;
    return out;
}

inline DSeries to_double_series(const XSeries& s, double unit_value) {
    std::vector<double> c(s.coeffs.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = to_double(s.coeffs[i], unit_value);
    DSeries out(to_double(s.base, unit_value), std::move(c), s.valid_order);
    out.approximate = s.approximate;
    return out;
}

}  // namespace hforge
