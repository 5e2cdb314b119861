#pragma once

#include "hforge/hierarchy.hpp"
#include "hforge/laurent.hpp"
#include "hforge/radius.hpp"
#include "hforge/series.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace hforge {

// ---------------------------------------------------------------------------
// Power-series coefficient tables of the nonlinear hierarchy
// ---------------------------------------------------------------------------

/// Coefficients lam(n,k) of the general solution y_n = x^2 sum_k lam(n,k)
/// (x-a)^k.  They satisfy, levelwise,
///   (k+1) lam(n,k) + a (k+1) lam(n,k+1) = sum_l lam(n+1,k-l) lam(n+1,l).
template <class S>
struct NonlinearSeriesTable {
    S a{};
    int depth = 0;  // levels exposed: 1..depth
    int order = 0;  // columns exposed: 0..order
    // rows 1..rows_held; row n holds columns 0..(cap - n) with cap = depth+order
    std::vector<std::vector<S>> lam;
    bool derived_by_constraint = false;  // a = 0 tables beyond the closed forms

    const S& operator()(int n, int k) const {
        if (n < 1 || n > static_cast<int>(lam.size()) || k < 0 ||
            k >= static_cast<int>(lam[n - 1].size()))
            throw DependencyConeViolation("table index outside the dependency cone");
        return lam[n - 1][k];
    }
};

/// a != 0 mode: seeds c_n = lam(n,0) for n <= depth+order (the dependency
/// cone of the forward-in-k march).
template <class S>
NonlinearSeriesTable<S> nonlinear_series_table(const std::vector<S>& seeds, const S& a, int depth,
                                               int order) {
    if (scalar_traits<S>::is_zero(a))
        throw DomainError("nonlinear_series_table: use the a = 0 overload for a vanishing base");
    const int cap = depth + order;
    if (static_cast<int>(seeds.size()) < cap)
        throw DependencyConeViolation("nonlinear_series_table: need depth+order seeds");

    NonlinearSeriesTable<S> t;
    t.a = a;
    t.depth = depth;
    t.order = order;
    t.lam.assign(cap, {});
    for (int n = 1; n <= cap; ++n) {
        t.lam[n - 1].assign(cap - n + 1, scalar_traits<S>::zero());
        t.lam[n - 1][0] = seeds[n - 1];
    }
    // march forward in k: lam(n,k+1) = [conv(n+1,k) - (k+1) lam(n,k)] / (a (k+1))
    for (int k = 0; k < cap - 1; ++k) {
        for (int n = 1; n + k + 1 <= cap; ++n) {
            S conv = scalar_traits<S>::zero();
            for (int l = 0; l <= k; ++l) conv += t.lam[n][k - l] * t.lam[n][l];
            const S kp1 = scalar_traits<S>::from_int(k + 1);
            t.lam[n - 1][k + 1] = (conv - kp1 * t.lam[n - 1][k]) / (a * kp1);
        }
    }
    return t;
}

/// Closed forms of the a != 0 coefficients for k <= 3 in terms of the seeds.
template <class S>
S nonlinear_closed_form(const std::vector<S>& c, const S& a, int n, int k) {
    const auto at = [&](int i) { return c.at(i - 1); };
    const S one = scalar_traits<S>::one();
    switch (k) {
        case 0:
            return at(n);
        case 1:
            return (scalar_traits<S>::zero() - one) / a * (at(n) - at(n + 1) * at(n + 1));
        case 2:
            return one / (a * a) *
                   (at(n) - scalar_traits<S>::from_int(2) * at(n + 1) * at(n + 1) +
                    at(n + 1) * at(n + 2) * at(n + 2));
        case 3: {
            const S t1 = scalar_traits<S>::from_int(3) * at(n);
            const S t2 = scalar_traits<S>::from_int(9) * at(n + 1) * at(n + 1);
            const S t3 = scalar_traits<S>::from_int(9) * at(n + 1) * at(n + 2) * at(n + 2);
            const S t4 = scalar_traits<S>::from_int(2) * at(n + 1) * at(n + 2) * at(n + 3) * at(n + 3);
            const S c4 = at(n + 2) * at(n + 2) * at(n + 2) * at(n + 2);
            return (scalar_traits<S>::zero() - one) / (scalar_traits<S>::from_int(3) * a * a * a) *
                   (t1 - t2 + t3 - t4 - c4);
        }
        default:
            throw Error("nonlinear_closed_form: closed forms cover k <= 3 only");
    }
}

/// a = 0 seed data: the per-level constants couple through a single free
/// parameter sigma_1 via lam(n,0) = exp(2^{1-n} sigma_1).
struct SigmaVector {
    std::vector<double> sigma;  // sigma_1..sigma_M
};

/// Closed forms of the a = 0 coefficients for k <= 3.
double a0_closed_form(const SigmaVector& s, int n, int k);

enum class A0Closure {
    None,          // reject order > 3 (the paper gives no general-k solution)
    ZeroTopRow,    // extend a top row by zeros beyond k = 3 and propagate the
                   // degenerate constraint lam(n,k) = conv(n+1,k)/(k+1) downward
};

/// a = 0 mode.  Columns k <= 3 come from the closed forms; columns beyond
/// require opting into a top-level closure and are marked derived_by_constraint.
NonlinearSeriesTable<double> nonlinear_series_table_a0(const SigmaVector& s, int depth, int order,
                                                       A0Closure closure = A0Closure::None);

/// State with levels z_n = y_n/x^2 (pole-cleared form), based at a.
template <class S>
HierarchyState<S> assemble_solution(const NonlinearSeriesTable<S>& t) {
    HierarchyState<S> st;
    st.form = StateForm::PoleCleared;
    for (int n = 1; n <= t.depth; ++n) {
        TruncatedSeries<S> z = TruncatedSeries<S>::zero(t.a, t.order);
        const int avail = std::min(t.order, t.depth + t.order - n);
        for (int k = 0; k <= avail; ++k) z.coeffs[k] = t(n, k);
        z.valid_order = avail;
        st.levels.push_back(std::move(z));
    }
    return st;
}

// ---------------------------------------------------------------------------
// Special solutions and coverage
// ---------------------------------------------------------------------------

struct SpecialSolutionId {
    enum class Which { Y1, Y2, Y3 } which = Which::Y1;
    double tau = 0.0;  // prolonged Y1: y_n = exp(tau 2^{1-n}) x^2
};

/// Value of the chosen special solution at (level, x).  Y3 requires x > 0.
double special_solution(const SpecialSolutionId& id, int level, double x);
/// d/dx of the same.
double special_solution_deriv(const SpecialSolutionId& id, int level, double x);

/// Y3's exponent 2 + 2^{2-n} and amplitude 5^{-2^{-n}} prod_{i<n}
/// (1+2^{2-i})^{2^{i-n}}.
double y3_exponent(int level);
double y3_amplitude(int level);

/// Matched expansion coefficient of Y3 around a != 0: amplitude *
/// a^{beta-k}/k! * beta(beta-1)...(beta-k+1), beta = 2^{2-n}.  The falling
/// product sidesteps Gamma poles at nonpositive arguments.
double matched_lambda_y3(double a, int level, int k);

struct CoverageReport {
    enum class Verdict { Global, Partial, None };
    Verdict verdict = Verdict::None;
    bool covers_origin = false;
    double a = 0.0;
    std::vector<RadiusEstimate> level_estimates;  // per level 1..depth
    double radius = 0.0;                          // min finite level radius
    std::string witness;
};

/// Match a special solution's pole-cleared expansion at a != 0 against the
/// recurrence-generated table and classify how much of the solution the
/// general power-series family covers.
CoverageReport coverage_check(const SpecialSolutionId& id, double a, int depth, int order);

// ---------------------------------------------------------------------------
// Uncoupled invariances
// ---------------------------------------------------------------------------

/// A hierarchy solution known pointwise with one derivative: eval(n, x) ->
/// (y_n(x), y_n'(x)).
struct PointwiseSolution {
    int depth = 0;
    std::function<std::pair<double, double>(int, double)> eval;
};

PointwiseSolution special_pointwise(const SpecialSolutionId& id, int depth);
PointwiseSolution table_pointwise(const NonlinearSeriesTable<double>& t);

/// Residual y_n' - y_n/x - y_{n+1}^2/x^3 at a point (x != 0).
double nonlinear_pointwise_residual(const PointwiseSolution& sol, int level, double x);

enum class UncoupledId { T1inf, T2inf };

/// The two uncoupled invariances: scaling (xt, yt) = (e^e x, e^{2e} y) and
/// projective (x/(1-e x), y/(1-e x)), acting levelwise.
PointwiseSolution apply_uncoupled_invariance(UncoupledId id, double eps, PointwiseSolution sol);

// ---------------------------------------------------------------------------
// Classification of the uncoupled invariance algebra
// ---------------------------------------------------------------------------

struct ConstraintResidual {
    LaurentPoly2 first;   // alpha' x - phi' + phi/x
    LaurentPoly2 second;  // alpha_n - 2 alpha_{n+1} - phi' + 3 phi/x
    double max_first = 0.0;
    double max_second = 0.0;
    bool exact_zero = false;
};

/// Constraint residuals for the two-parameter family phi = c1 x + c2 x^2,
/// alpha_n = 2 c1 + c2 x (the full uncoupled sub-algebra).
ConstraintResidual uncoupled_constraint_residual(const Rat& c1, const Rat& c2,
                                                 const std::vector<Rat>& samples);

/// Residual of the classifying equation x phi'' - 2 phi' + 2 phi/x for an
/// arbitrary polynomial phi (coefficients lowest first); identically zero
/// exactly on span{x, x^2}.
LaurentPoly2 uncoupled_classifying_residual(const std::vector<Rat>& phi_poly);

}  // namespace hforge
