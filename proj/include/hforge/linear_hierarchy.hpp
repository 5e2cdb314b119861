#pragma once

#include "hforge/hierarchy.hpp"
#include "hforge/radius.hpp"
#include "hforge/series.hpp"

#include <functional>
#include <vector>

namespace hforge {

// ---------------------------------------------------------------------------
// Triangular weights of the projective equivalence transform
// ---------------------------------------------------------------------------

/// Weight triangle W(n,k) for 2 <= n <= N, 1 <= k <= n-1, defined by
/// W(2,1) = 1,  W(n,k) = (n-2+k) W(n-1,k) + W(n-1,k-1),
/// with zero boundaries W(n,0) = W(n,n) = 0.  These are the Lah numbers
/// L(n-1,k) and grow factorially, hence exact integers throughout.
class LahTable {
  public:
    explicit LahTable(int depth);

    int depth() const { return depth_; }

    /// W(n,k); zero outside the triangle.
    const Rat& operator()(int n, int k) const {
        static const Rat kZero(0);
        if (n < 2 || n > depth_ || k < 1 || k > n - 1) return kZero;
        return rows_[n][k];
    }

  private:
    int depth_;
    std::vector<std::vector<Rat>> rows_;
};

// ---------------------------------------------------------------------------
// Solution constructors
// ---------------------------------------------------------------------------

/// Flow solution from an integration-constant stream:
/// level n has coefficients c_{n+k} (-1)^k / k!, k = 0..K.
/// Requires at least depth + order constants.
template <class S>
HierarchyState<S> flow_solution(const std::vector<S>& c, const S& base_point, int depth,
                                int order) {
    if (static_cast<int>(c.size()) < depth + order)
        throw DependencyConeViolation("flow_solution: need at least depth+order constants");
    HierarchyState<S> st;
    st.form = StateForm::Plain;
    for (int n = 1; n <= depth; ++n) {
        TruncatedSeries<S> s = TruncatedSeries<S>::zero(base_point, order);
        S kfact = scalar_traits<S>::one();
        for (int k = 0; k <= order; ++k) {
            if (k > 0) kfact = kfact * scalar_traits<S>::from_int(k);
            S v = c[n + k - 1] / kfact;
            if (k % 2) v = scalar_traits<S>::zero() - v;
            s.coeffs[k] = v;
        }
        s.valid_order = order;
        st.levels.push_back(std::move(s));
    }
    return st;
}

/// Underdetermined constructor: pick one level freely; levels above are the
/// alternating-sign derivatives, levels below the alternating-sign
/// antiderivatives with one supplied constant per integration.
/// y_{n*-k} = (-1)^k A_k with A_0 = free, A_j = integral(A_{j-1}) + const_j.
template <class S>
HierarchyState<S> generate_from_free(int free_level, const TruncatedSeries<S>& free, int depth,
                                     const std::vector<S>& constants) {
    if (free_level < 1 || free_level > depth)
        throw Error("generate_from_free: free level outside 1..depth");
    if (static_cast<int>(constants.size()) < free_level - 1)
        throw MissingConstants("generate_from_free: need one constant per level below the free one");

    std::vector<TruncatedSeries<S>> levels(depth);
    levels[free_level - 1] = free;
    // upward: derivatives with alternating sign
    for (int n = free_level + 1; n <= depth; ++n) {
        auto d = differentiate(levels[n - 2]);
        levels[n - 1] = scale(d, scalar_traits<S>::from_int(-1));
    }
    // downward: antiderivatives, constant inserted inside each integration
    TruncatedSeries<S> acc = free;
    for (int j = 1; j <= free_level - 1; ++j) {
        acc = antidifferentiate(acc, constants[j - 1]);
        const int n = free_level - j;
        levels[n - 1] = j % 2 ? scale(acc, scalar_traits<S>::from_int(-1)) : acc;
    }
    // trim stored orders so all levels share the same length bookkeeping
    HierarchyState<S> st;
    st.form = StateForm::Plain;
    st.levels = std::move(levels);
    return st;
}

// ---------------------------------------------------------------------------
// Group matrix of the projective transform and its inverse
// ---------------------------------------------------------------------------

/// Lower-triangular N x N matrix G(x, eps): row 1 is (E, 0, ...), row n has
/// entries E * W(n,k) eps^{n-k-1} (1 - eps x)^{n+k-1} in column k+1, where E
/// is exp(eps) (passed explicitly: numeric for double, the tagged unit for
/// the exact backend).
template <class S>
struct GroupMatrix {
    int depth = 0;
    std::vector<std::vector<S>> entry;  // entry[n-1][j-1], lower triangular

    const S& operator()(int n, int j) const { return entry[n - 1][j - 1]; }
};

template <class S>
GroupMatrix<S> group_matrix(const S& x, const S& eps, const S& exp_eps, int depth,
                            const LahTable& lah) {
    if (lah.depth() < depth) throw Error("group_matrix: weight table too small");
    GroupMatrix<S> g;
    g.depth = depth;
    g.entry.assign(depth, {});
    for (int n = 1; n <= depth; ++n) g.entry[n - 1].assign(depth, scalar_traits<S>::zero());

    const S one = scalar_traits<S>::one();
    const S u = one - eps * x;
    g.entry[0][0] = exp_eps;
    for (int n = 2; n <= depth; ++n) {
        for (int k = 1; k <= n - 1; ++k) {
            S v = scalar_traits<S>::from_rat(lah(n, k)) * exp_eps;
            // eps^{n-k-1}
            for (int p = 0; p < n - k - 1; ++p) v = v * eps;
            // (1 - eps x)^{n+k-1}
            for (int p = 0; p < n + k - 1; ++p) v = v * u;
            g.entry[n - 1][k] = v;  // column k+1
        }
    }
    return g;
}

/// G^{-1}(x, eps) = G(x / (1 - eps x), -eps).
template <class S>
GroupMatrix<S> inverse_group_matrix(const S& x, const S& eps, const S& exp_eps, int depth,
                                    const LahTable& lah) {
    const S one = scalar_traits<S>::one();
    const S den = one - eps * x;
    if (scalar_traits<S>::is_zero(den))
        throw TransformSingular("inverse_group_matrix: eps*x = 1");
    return group_matrix(x / den, scalar_traits<S>::zero() - eps, one / exp_eps, depth, lah);
}

template <class S>
std::vector<S> apply(const GroupMatrix<S>& g, const std::vector<S>& v) {
    if (static_cast<int>(v.size()) < g.depth) throw Error("group matrix apply: vector too short");
    std::vector<S> out(g.depth, scalar_traits<S>::zero());
    for (int n = 1; n <= g.depth; ++n)
        for (int j = 1; j <= n; ++j) out[n - 1] += g(n, j) * v[j - 1];
    return out;
}

template <class S>
GroupMatrix<S> matmul(const GroupMatrix<S>& a, const GroupMatrix<S>& b) {
    if (a.depth != b.depth) throw Error("matmul: depth mismatch");
    GroupMatrix<S> out;
    out.depth = a.depth;
    out.entry.assign(a.depth, std::vector<S>(a.depth, scalar_traits<S>::zero()));
    for (int n = 1; n <= a.depth; ++n)
        for (int j = 1; j <= n; ++j) {
            S acc = scalar_traits<S>::zero();
            for (int m = j; m <= n; ++m) acc += a(n, m) * b(m, j);
            out.entry[n - 1][j - 1] = acc;
        }
    return out;
}

// ---------------------------------------------------------------------------
// Equivalence transforms acting on truncated states
// ---------------------------------------------------------------------------

/// Scaling transform: xt = e^{-eps} x, y~_n = e^{n eps} y_n, expressed as
/// series in xt (coefficient k of level n picks up e^{(n+k) eps}).
template <class S>
HierarchyState<S> apply_scaling_transform(const HierarchyState<S>& state, const S& exp_eps) {
    HierarchyState<S> out = state;
    const S inv = scalar_traits<S>::one() / exp_eps;
    for (int n = 1; n <= state.depth(); ++n) {
        auto& s = out.level(n);
        S f = scalar_traits<S>::one();
        for (int p = 0; p < n; ++p) f = f * exp_eps;
        for (int k = 0; k <= s.order(); ++k) {
            s.coeffs[k] = s.coeffs[k] * f;
            f = f * exp_eps;
        }
        s.base = s.base * inv;
    }
    return out;
}

/// Projective transform: xt = x/(1 - eps x), y~_1 = E y_1,
/// y~_n = sum_k W(n,k) eps^{n-k-1} (1 - eps x)^{n+k-1} E y_{k+1}, re-expressed
/// as series in xt via the Moebius substitution x = xt/(1 + eps xt), under
/// which (1 - eps x) = 1/(1 + eps xt).  States must be based at 0.
template <class S>
HierarchyState<S> apply_projective_transform(const HierarchyState<S>& state, const S& eps,
                                             const S& exp_eps, const LahTable& lah) {
    if (!scalar_traits<S>::is_zero(state.base()))
        throw BasePointMismatch("projective transform: state must be based at 0");
    const int N = state.depth();
    const int K = state.level(1).order();

    // Moebius-composed levels, shared across rows.
    std::vector<TruncatedSeries<S>> comp;
    comp.reserve(N);
    for (int n = 1; n <= N; ++n) comp.push_back(compose_moebius(state.level(n), eps));

    HierarchyState<S> out;
    out.form = state.form;
    out.levels.reserve(N);
    out.levels.push_back(scale(comp[0], exp_eps));
    for (int n = 2; n <= N; ++n) {
        TruncatedSeries<S> acc = TruncatedSeries<S>::zero(scalar_traits<S>::zero(), K);
        acc.valid_order = K;
        for (int k = 1; k <= n - 1; ++k) {
            S w = scalar_traits<S>::from_rat(lah(n, k)) * exp_eps;
            for (int p = 0; p < n - k - 1; ++p) w = w * eps;
            auto term = scale(mul(binom_power<S>(eps, -(n + k - 1), K), comp[k]), w);
            acc = add(acc, term);
        }
        out.levels.push_back(std::move(acc));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reparametrization of the integration constants
// ---------------------------------------------------------------------------

inline double to_plain_double(double v) { return v; }
inline double to_plain_double(const Rat& v) { return to_double(v); }
inline double to_plain_double(const XRat& v) { return to_double(v.coef); }

/// c~ = G(0, eps) c, cross-checked against the two closed-form summations
/// (the per-index double sum is evaluated for every split m = n + i).  All
/// routes must agree exactly on exact backends (1e-9 relative for double).
template <class S>
std::vector<S> reparam_ctilde(const std::vector<S>& c, const S& eps, const S& exp_eps, int depth,
                              const LahTable& lah) {
    if (static_cast<int>(c.size()) < depth)
        throw DependencyConeViolation("reparam_ctilde: need at least depth constants");

    const auto g0 = group_matrix(scalar_traits<S>::zero(), eps, exp_eps, depth, lah);
    std::vector<S> via_matrix = apply(g0, c);

    // Route 2: c~_{1+i} = E sum_{j=1..i} c_{1+j} [i!/(j!(i-j)!)] eps^{i-j} (i-1)!/( (j-1)! ) / ... ,
    // written with the factorial ratios kept exact.
    std::vector<S> via_sum(depth, scalar_traits<S>::zero());
    via_sum[0] = exp_eps * c[0];
    for (int i = 1; i < depth; ++i) {
        S acc = scalar_traits<S>::zero();
        for (int j = 1; j <= i; ++j) {
            const Rat w = binomial(i, j) * factorial(i - 1) / factorial(j - 1) / Rat(1);
            S term = scalar_traits<S>::from_rat(w) * c[j];
            for (int p = 0; p < i - j; ++p) term = term * eps;
            acc += term;
        }
        via_sum[i] = exp_eps * acc;
    }

    // Route 3: the shifted double sum for rows n >= 2, evaluated for every
    // split m = n + i; each split must reproduce the same c~_m.
    auto check_equal = [&](const S& a, const S& b, const char* what) {
        if constexpr (scalar_traits<S>::exact) {
            if (!(a == b)) throw InternalInconsistency(std::string("reparam_ctilde: ") + what);
        } else {
            const double da = to_plain_double(a), db = to_plain_double(b);
            if (std::fabs(da - db) > 1e-9 * std::max({1.0, std::fabs(da), std::fabs(db)}))
                throw InternalInconsistency(std::string("reparam_ctilde: ") + what);
        }
    };

    for (int m = 1; m <= depth; ++m) check_equal(via_matrix[m - 1], via_sum[m - 1], "matrix vs closed sum");

    for (int m = 2; m <= depth; ++m) {
        for (int n = 2; n <= m; ++n) {
            const int i = m - n;
            S acc = scalar_traits<S>::zero();
            for (int k = 1; k <= n - 1; ++k) {
                for (int j = 0; j <= i; ++j) {
                    if (k + 1 + j > static_cast<int>(c.size())) continue;
                    const Rat w = lah(n, k) * binomial(i, j) * factorial(n + k + i - 2) /
                                  factorial(n + k + j - 2);
                    S term = scalar_traits<S>::from_rat(w) * c[k + j];
                    for (int p = 0; p < n + i - j - k - 1; ++p) term = term * eps;
                    acc += term;
                }
            }
            check_equal(via_matrix[m - 1], exp_eps * acc, "matrix vs shifted double sum");
        }
    }
    return via_matrix;
}

// ---------------------------------------------------------------------------
// Convergence restrictions and the initial-value pair
// ---------------------------------------------------------------------------

struct RestrictionCheck {
    bool shifted_ratio = false;  // |(xt - a) eps / (1 + a eps)| < 1
    bool base_ratio = false;     // |a eps / (1 + a eps)| < 1
    bool plain = false;          // |xt eps| < 1
    bool all() const { return shifted_ratio && base_ratio && plain; }
};

/// The three simultaneous convergence restrictions of the projective
/// reparametrization.
RestrictionCheck restrictions_ok(double x_tilde, double eps, double a);

/// The two solutions of y' = -A y, y(0) = y0: the primary flow and the
/// projective continuation G(x*, eps) [flow at x* = x/(1+eps x) from
/// G(0,-eps) y0].  Both agree at x = 0 by the exact group inverse.
template <class S>
class IvpSolutionPair {
  public:
    IvpSolutionPair(std::vector<S> y0, const S& eps, const S& exp_eps, int depth, int order,
                    const LahTable& lah)
        : y0_(std::move(y0)), eps_(eps), exp_eps_(exp_eps), depth_(depth), order_(order), lah_(lah) {
        if (static_cast<int>(y0_.size()) < depth_ + order_)
            throw DependencyConeViolation("solve_ivp_pair: y0 needs depth+order entries");
        const auto ginv0 = group_matrix(scalar_traits<S>::zero(), scalar_traits<S>::zero() - eps_,
                                        scalar_traits<S>::one() / exp_eps_,
                                        static_cast<int>(y0_.size()), lah_);
        y0_star_ = apply(ginv0, y0_);
    }

    /// Primary flow, level n: sum_k y0_{n+k} (-x)^k / k!, k <= order.
    S eval_primary(int n, const S& x) const { return flow_at(y0_, n, x); }

    /// Transformed solution at x != -1/eps.
    S eval_transformed(int n, const S& x) const {
        const S den = scalar_traits<S>::one() + eps_ * x;
        if (scalar_traits<S>::is_zero(den))
            throw TransformSingular("transformed solution singular at x = -1/eps");
        const S xs = x / den;
        const auto g = group_matrix(xs, eps_, exp_eps_, depth_, lah_);
        S acc = scalar_traits<S>::zero();
        for (int j = 1; j <= n; ++j) acc += g(n, j) * flow_at(y0_star_, j, xs);
        return acc;
    }

    const std::vector<S>& seed() const { return y0_; }
    const std::vector<S>& transformed_seed() const { return y0_star_; }
    int order() const { return order_; }

  private:
    S flow_at(const std::vector<S>& c, int n, const S& x) const {
        // Horner over k = order..0 of c_{n+k} (-1)^k / k! x^k
        S acc = scalar_traits<S>::zero();
        const int kmax = std::min(order_, static_cast<int>(c.size()) - n);
        Rat kfact = factorial(kmax);
        for (int k = kmax; k >= 0; --k) {
            S term = c[n + k - 1] / scalar_traits<S>::from_rat(kfact);
            if (k % 2) term = scalar_traits<S>::zero() - term;
            acc = acc * x + term;
            if (k > 0) kfact /= k;
        }
        return acc;
    }

    std::vector<S> y0_;
    S eps_, exp_eps_;
    int depth_, order_;
    const LahTable& lah_;
};

// ---------------------------------------------------------------------------
// Convergence-domain classification of the initial-value pair (Table rows)
// ---------------------------------------------------------------------------

enum class SeedFamily {
    TransformedConstants,  // y0 = G(0,eps) c with c_j = alpha (constant)
    FactorialSeed,         // y0_i = alpha i!
    PlainConstants,        // y0_i = alpha
    FactorialSquaredSeed,  // y0_i = alpha (i!)^2
};

struct DomainDescriptor {
    enum class Class { Disk, MoebiusDisk, AllReals, AllRealsMinusPole, PointOnly } cls;
    double radius = 0.0;  // Disk: |x| < radius; MoebiusDisk: |x/(1+eps x)| < radius
    double pole = 0.0;    // AllRealsMinusPole
    RadiusEstimate estimate;
};

struct ConvergencePair {
    DomainDescriptor primary;
    DomainDescriptor transformed;
};

/// Root-test classification of the primary solution's level-1 stream and of
/// the transformed solution's inner flow stream (mapped through the Moebius
/// change of variable).  Exact seed arithmetic, double only at the very end.
ConvergencePair convergence_domains(SeedFamily family, const Rat& eps, int order);

/// Seed vector of a family (exact; entries carry the tagged unit where the
/// family involves the group matrix).
std::vector<XRat> seed_vector(SeedFamily family, const Rat& eps, int count, const Rat& alpha,
                              const LahTable& lah);

// ---------------------------------------------------------------------------
// Initial-condition-compatible infinitesimals
// ---------------------------------------------------------------------------

struct IcCompatibleInfinitesimals {
    std::function<double(double, double)> xi;    // xi(x, y1)
    std::function<double(double, double)> eta1;  // eta1(x, y1)
};

/// xi = f0 * exp(-gamma_f^2/(x-x0)^2), eta1 = g0 * exp(-gamma_g^2/(y1-y01)^2),
/// flat-extended by 0 at the removable singularities, so the initial point is
/// mapped invariantly for any choice of f0, g0.
IcCompatibleInfinitesimals ic_compatible_infinitesimals(
    std::function<double(double, double)> f0, std::function<double(double, double)> g0,
    double gamma_f, double gamma_g, double x0, double y01);

// ---------------------------------------------------------------------------
// Pointwise exponentiation of the free-function transform (xi = f(x))
// ---------------------------------------------------------------------------

/// Transform with infinitesimal xi = f(x), eta_n = y_n +
/// sum_{k<n} (-1)^{n-k} C(n-1,k-1) f^{(n-k)} y_{k+1}, exponentiated by
/// integrating d(xt)/de = f(xt), d(yt_n)/de = eta_n with classical RK4,
/// step eps/64.  f is a polynomial (coefficients lowest first) so the
/// derivatives are exact.  Returns the transformed point (xt, yt_1..yt_N).
std::pair<double, std::vector<double>> apply_free_function_transform(
    const std::vector<double>& f_poly, double eps, double x, const std::vector<double>& y);

}  // namespace hforge
