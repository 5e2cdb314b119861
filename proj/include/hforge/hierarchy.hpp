#pragma once

#include "hforge/series.hpp"

#include <vector>

namespace hforge {

/// Rational function in x with exact coefficients (numerator/denominator
/// coefficient lists, lowest degree first).
struct RationalFn {
    std::vector<Rat> num{Rat(0)};
    std::vector<Rat> den{Rat(1)};

    static RationalFn zero() { return {}; }
    static RationalFn constant(const Rat& c) { return {{c}, {Rat(1)}}; }
    /// c / x^p
    static RationalFn monomial_inverse(const Rat& c, int p) {
        std::vector<Rat> d(p + 1, Rat(0));
        d[p] = Rat(1);
        return {{c}, std::move(d)};
    }

    bool is_zero() const {
        for (const auto& c : num)
            if (!c.is_zero()) return false;
        return true;
    }
    Rat eval_den(const Rat& x) const {
        Rat acc(0);
        for (int k = static_cast<int>(den.size()) - 1; k >= 0; --k) acc = acc * x + den[k];
        return acc;
    }

    /// Series expansion around `base`, truncated at order K.  Requires the
    /// denominator not to vanish at the base point.
    template <class S>
    TruncatedSeries<S> expand(const S& base, int K) const {
        auto lift = [&](const std::vector<Rat>& poly) {
            TruncatedSeries<S> p = TruncatedSeries<S>::zero(scalar_traits<S>::zero(), K);
            for (size_t k = 0; k < poly.size() && k <= static_cast<size_t>(K); ++k)
                p.coeffs[k] = scalar_traits<S>::from_rat(poly[k]);
            p.valid_order = K;
            // shift to the requested base; polynomials rebase exactly
            if (!scalar_traits<S>::is_zero(base)) p = rebase(p, base);
            return p;
        };
        TruncatedSeries<S> n = lift(num), d = lift(den);
        if (scalar_traits<S>::is_zero(d.coeffs[0]))
            throw PoleAtBasePoint("rational coefficient has a pole at the expansion point");
        return div(n, d);
    }
};

/// The four coefficient functions of the first-order forward-recursive
/// hierarchy y_n' = q0 + q1 y_n + q2 y_{n+1}^2 + q3 y_{n+1}.
struct GeneralRiccatiHierarchySpec {
    enum class Kind { General, Linear, NonlinearXCubed };

    RationalFn q0, q1, q2, q3;
    Kind kind = Kind::General;

    /// q = (0, 0, 0, -1):  y_n' = -y_{n+1}.
    static GeneralRiccatiHierarchySpec linear() {
        GeneralRiccatiHierarchySpec s;
        s.q3 = RationalFn::constant(Rat(-1));
        s.kind = Kind::Linear;
        return s;
    }
    /// q = (0, 1/x, 1/x^3, 0):  y_n' - y_n/x = y_{n+1}^2 / x^3.
    static GeneralRiccatiHierarchySpec nonlinear_x_cubed() {
        GeneralRiccatiHierarchySpec s;
        s.q1 = RationalFn::monomial_inverse(Rat(1), 1);
        s.q2 = RationalFn::monomial_inverse(Rat(1), 3);
        s.kind = Kind::NonlinearXCubed;
        return s;
    }
};

/// Plain: levels hold y_n directly.  PoleCleared: levels hold z_n = y_n/x^2,
/// the substitution that clears the nonlinear specialization's poles.
enum class StateForm { Plain, PoleCleared };

/// Finite truncation of an infinite hierarchy solution: levels 1..N, all
/// series sharing one base point.
template <class S>
struct HierarchyState {
    std::vector<TruncatedSeries<S>> levels;
    StateForm form = StateForm::Plain;

    int depth() const { return static_cast<int>(levels.size()); }
    const TruncatedSeries<S>& level(int n) const { return levels.at(n - 1); }
    TruncatedSeries<S>& level(int n) { return levels.at(n - 1); }
    const S& base() const { return levels.front().base; }

    void check_shared_base() const {
        for (const auto& l : levels)
            if (!(l.base == levels.front().base))
                throw BasePointMismatch("hierarchy levels have different base points");
    }
};

using DState = HierarchyState<double>;
using QState = HierarchyState<Rat>;
using XState = HierarchyState<XRat>;

/// Per-level residual magnitudes for levels 1..N-1 (level N's equation needs
/// level N+1).  exact_zero is meaningful on exact scalar backends only.
struct ResidualReport {
    std::vector<double> per_level_max;
    std::vector<int> checked_order;  // highest residual index inspected per level
    bool exact_zero = false;

    double max() const {
        double m = 0.0;
        for (double v : per_level_max) m = std::max(m, v);
        return m;
    }
};

namespace detail {

template <class S>
TruncatedSeries<S> x_minus_base(const S& base, int K) {
    auto s = TruncatedSeries<S>::zero(base, K);
    s.coeffs[1] = scalar_traits<S>::one();
    return s;
}

}  // namespace detail

/// Residual series of level n's equation, valid to
/// min(valid(y_n)-1, valid(y_{n+1})).
template <class S>
TruncatedSeries<S> residual_series(const GeneralRiccatiHierarchySpec& spec,
                                   const HierarchyState<S>& state, int n) {
    const auto& yn = state.level(n);
    const auto& yn1 = state.level(n + 1);
    const int K = std::min(yn.order(), yn1.order());

    if (state.form == StateForm::PoleCleared) {
        if (spec.kind != GeneralRiccatiHierarchySpec::Kind::NonlinearXCubed)
            throw PoleAtBasePoint("pole-cleared states are defined for the nonlinear specialization");
        // x z' + z = z_{n+1}^2, written as (x-a) z' + a z' + z - z_{n+1}^2.
        auto dz = differentiate(yn);
        auto r = add(mul(detail::x_minus_base(yn.base, K), dz), scale(dz, yn.base));
        r = add(r, yn);
        return sub(r, mul(yn1, yn1));
    }

    auto r = differentiate(yn);
    if (!spec.q0.is_zero()) r = sub(r, spec.q0.expand<S>(yn.base, K));
    if (!spec.q1.is_zero()) r = sub(r, mul(spec.q1.expand<S>(yn.base, K), yn));
    if (!spec.q2.is_zero()) r = sub(r, mul(spec.q2.expand<S>(yn.base, K), mul(yn1, yn1)));
    if (!spec.q3.is_zero()) r = sub(r, mul(spec.q3.expand<S>(yn.base, K), yn1));
    return r;
}

template <class S>
ResidualReport residual(const GeneralRiccatiHierarchySpec& spec, const HierarchyState<S>& state) {
    if (state.depth() < 2) throw DegenerateSeries("residual: need depth >= 2");
    state.check_shared_base();

    ResidualReport rep;
    rep.exact_zero = scalar_traits<S>::exact;
    for (int n = 1; n <= state.depth() - 1; ++n) {
        const auto r = residual_series(spec, state, n);
        const int upto = std::min(state.level(n).valid_order - 1, state.level(n + 1).valid_order);
        const int checked = std::min(upto, r.order());
        rep.checked_order.push_back(checked);
        double m = 0.0;
        bool zero = true;
        for (int k = 0; k <= checked; ++k) {
            if (!scalar_traits<S>::is_zero(r.coeffs[k])) zero = false;
            const double la = scalar_traits<S>::log_abs(r.coeffs[k]);
            if (std::isfinite(la)) m = std::max(m, std::exp(la));
        }
        rep.per_level_max.push_back(m);
        if (!scalar_traits<S>::exact || !zero) rep.exact_zero = rep.exact_zero && zero;
    }
    return rep;
}

/// Which constructor produced a truncation, for validity bookkeeping.
enum class Producer { Flow, FreeLevel, NonlinearSeries };

/// Per-level guaranteed orders implied by a producing operation.
///  - Flow: `supply` integration constants; level n is valid to supply - n.
///  - FreeLevel: free series at level `free_level` valid to `supply`;
///    derivatives above lose one order per level, antiderivatives below
///    gain one (capped at the stored order K).
///  - NonlinearSeries: seeds to depth `supply`; level n valid to supply - n.
std::vector<int> truncate_guarantee(Producer producer, int depth, int order, int supply,
                                    int free_level = 1);

}  // namespace hforge
