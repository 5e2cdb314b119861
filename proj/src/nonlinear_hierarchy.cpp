#include "hforge/nonlinear_hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hforge {

double a0_closed_form(const SigmaVector& s, int n, int k) {
    const auto sig = [&](int i) -> double {
        return i <= static_cast<int>(s.sigma.size()) ? s.sigma[i - 1] : 0.0;
    };
    const double s1 = sig(1), s2 = sig(2), s3 = sig(3), s4 = sig(4);
    const double half_pow = std::pow(2.0, 1.0 - n);  // 2^{1-n}
    switch (k) {
        case 0:
            return std::exp(half_pow * s1);
        case 1:
            return std::exp((half_pow - 1.0) * s1) * s2;
        case 2:
            return std::pow(2.0, -n) * std::exp((half_pow - 2.0) * s1) *
                   (s2 * s2 * (std::pow(2.0, n) - std::pow(3.0, n)) +
                    2.0 * std::pow(3.0, n - 1) * std::exp(s1) * s3);
        case 3:
            return std::pow(2.0, -1.0 - n) * std::exp((half_pow - 3.0) * s1) *
                   (s2 * s2 * s2 *
                        (std::pow(2.0, 1 + n) + std::pow(2.0, 2 + 2 * n) - 2.0 * std::pow(3.0, 1 + n)) +
                    (4.0 * std::pow(3.0, n) - std::pow(4.0, 1 + n)) * std::exp(s1) * s2 * s3 +
                    std::pow(4.0, n) * std::exp(2.0 * s1) * s4);
        default:
            throw Error("a0_closed_form: closed forms cover k <= 3 only");
    }
}

NonlinearSeriesTable<double> nonlinear_series_table_a0(const SigmaVector& s, int depth, int order,
                                                       A0Closure closure) {
    if (order > 3 && closure == A0Closure::None)
        throw ClosureRequired(
            "a = 0 needs a top-level closure beyond k = 3 (the degenerate recurrence determines "
            "each level from the one above it)");

    NonlinearSeriesTable<double> t;
    t.a = 0.0;
    t.depth = depth;
    t.order = order;
    t.derived_by_constraint = order > 3;

    const int top = order > 3 ? depth + order : depth;
    t.lam.assign(top, std::vector<double>(order + 1, 0.0));
    for (int n = top; n >= 1; --n) {
        for (int k = 0; k <= std::min(order, 3); ++k) t.lam[n - 1][k] = a0_closed_form(s, n, k);
        if (order > 3 && n < top) {
            for (int k = 4; k <= order; ++k) {
                double conv = 0.0;
                for (int l = 0; l <= k; ++l) conv += t.lam[n][k - l] * t.lam[n][l];
                t.lam[n - 1][k] = conv / (k + 1);
            }
        }
    }
    t.lam.resize(depth);  // expose the requested levels only
    return t;
}

double y3_exponent(int level) { return 2.0 + std::pow(2.0, 2 - level); }

double y3_amplitude(int level) {
    double prod = std::pow(5.0, -std::pow(2.0, -level));
    for (int k = 0; k <= level - 1; ++k)
        prod *= std::pow(1.0 + std::pow(2.0, 2 - k), std::pow(2.0, k - level));
    return prod;
}

double special_solution(const SpecialSolutionId& id, int level, double x) {
    if (level < 1) throw DomainError("special_solution: level must be >= 1");
    switch (id.which) {
        case SpecialSolutionId::Which::Y1:
            return std::exp(id.tau * std::pow(2.0, 1 - level)) * x * x;
        case SpecialSolutionId::Which::Y2:
            if (level == 1) return -1.0;
            if (level == 2) return x;
            return 0.0;
        case SpecialSolutionId::Which::Y3:
            if (x <= 0.0) throw DomainError("Y3 needs x > 0 (fractional exponents)");
            return y3_amplitude(level) * std::pow(x, y3_exponent(level));
    }
    throw Error("unreachable");
}

double special_solution_deriv(const SpecialSolutionId& id, int level, double x) {
    switch (id.which) {
        case SpecialSolutionId::Which::Y1:
            return std::exp(id.tau * std::pow(2.0, 1 - level)) * 2.0 * x;
        case SpecialSolutionId::Which::Y2:
            return level == 2 ? 1.0 : 0.0;
        case SpecialSolutionId::Which::Y3:
            if (x <= 0.0) throw DomainError("Y3 needs x > 0 (fractional exponents)");
            return y3_amplitude(level) * y3_exponent(level) * std::pow(x, y3_exponent(level) - 1.0);
    }
    throw Error("unreachable");
}

double matched_lambda_y3(double a, int level, int k) {
    if (a == 0.0) throw DomainError("matched_lambda_y3: a must be nonzero");
    const double beta = std::pow(2.0, 2 - level);
    double falling = 1.0;
    for (int i = 0; i < k; ++i) falling *= (beta - i);
    double kfact = 1.0;
    for (int i = 2; i <= k; ++i) kfact *= i;
    return y3_amplitude(level) * std::pow(a, beta - k) / kfact * falling;
}

namespace {

std::vector<double> row_logs(const std::vector<Rat>& row) {
    std::vector<double> out(row.size());
    for (size_t i = 0; i < row.size(); ++i) out[i] = log_abs(row[i]);
    return out;
}

}  // namespace

CoverageReport coverage_check(const SpecialSolutionId& id, double a, int depth, int order) {
    if (a == 0.0) throw DomainError("coverage_check: partial-coverage analysis needs a != 0");
    CoverageReport rep;
    rep.a = a;

    switch (id.which) {
        case SpecialSolutionId::Which::Y1: {
            // seeds c_n = exp(tau 2^{-n} ...)|_{tau=0} = 1; exact table
            const Rat ra(a);
            std::vector<Rat> seeds(depth + order, Rat(1));
            const auto t = nonlinear_series_table(seeds, ra, depth, order);
            bool clean = true;
            for (int n = 1; n <= depth && clean; ++n)
                for (int k = 1; k <= order; ++k)
                    if (!t(n, k).is_zero()) {
                        clean = false;
                        break;
                    }
            rep.verdict = clean ? CoverageReport::Verdict::Global : CoverageReport::Verdict::None;
            rep.covers_origin = true;
            rep.radius = std::numeric_limits<double>::infinity();
            rep.witness = clean ? "constant seeds reproduce x^2 at every level"
                                : "seed propagation failed";
            return rep;
        }
        case SpecialSolutionId::Which::Y2: {
            const Rat ra(a);
            std::vector<Rat> seeds(depth + order, Rat(0));
            seeds[0] = Rat(-1) / (ra * ra);
            if (seeds.size() > 1) seeds[1] = Rat(1) / ra;
            const auto t = nonlinear_series_table(seeds, ra, depth, order);
            for (int n = 1; n <= depth; ++n) rep.level_estimates.push_back(radius_estimate_log(row_logs(t.lam[n - 1])));
            double rmin = std::numeric_limits<double>::infinity();
            for (const auto& est : rep.level_estimates)
                if (est.kind == RadiusEstimate::Kind::Finite) rmin = std::min(rmin, est.radius);
            rep.radius = rmin;
            rep.verdict = CoverageReport::Verdict::None;
            rep.covers_origin = false;  // y_1(0) = -1, but the Ansatz forces y(0) = 0
            rep.witness = "y1(0) = -1 while x^2-weighted series vanish at 0; local disc only";
            return rep;
        }
        case SpecialSolutionId::Which::Y3: {
            std::vector<double> seeds(depth + order);
            for (int n = 1; n <= depth + order; ++n)
                seeds[n - 1] = y3_amplitude(n) * std::pow(a, std::pow(2.0, 2 - n));
            const auto t = nonlinear_series_table(seeds, a, depth, order);
            for (int n = 1; n <= depth; ++n) {
                std::vector<double> la(t.lam[n - 1].size());
                for (size_t i = 0; i < la.size(); ++i)
                    la[i] = t.lam[n - 1][i] == 0.0
                                ? -std::numeric_limits<double>::infinity()
                                : std::log(std::fabs(t.lam[n - 1][i]));
                rep.level_estimates.push_back(radius_estimate_log(la));
            }
            double rmin = std::numeric_limits<double>::infinity();
            for (size_t n = 2; n <= rep.level_estimates.size(); ++n) {
                const auto& est = rep.level_estimates[n - 1];
                if (est.kind == RadiusEstimate::Kind::Finite) rmin = std::min(rmin, est.radius);
            }
            rep.radius = rmin;
            rep.verdict = CoverageReport::Verdict::Partial;
            rep.covers_origin = false;  // the matched disc |x-a| < |a| stops at the origin
            rep.witness = "fractional powers match only inside |x-a| < |a|";
            return rep;
        }
    }
    throw Error("unreachable");
}

PointwiseSolution special_pointwise(const SpecialSolutionId& id, int depth) {
    PointwiseSolution sol;
    sol.depth = depth;
    sol.eval = [id](int n, double x) {
        return std::make_pair(special_solution(id, n, x), special_solution_deriv(id, n, x));
    };
    return sol;
}

PointwiseSolution table_pointwise(const NonlinearSeriesTable<double>& t) {
    PointwiseSolution sol;
    sol.depth = t.depth;
    const auto table = t;  // own a copy; tables are cheap at test sizes
    sol.eval = [table](int n, double x) {
        const double u = x - table.a;
        const int kmax = std::min(table.order, table.depth + table.order - n);
        // z and z' by Horner in one pass
        double z = 0.0, dz = 0.0;
        for (int k = kmax; k >= 0; --k) {
            dz = dz * u + z;
            z = z * u + table(n, k);
        }
        const double y = x * x * z;
        const double dy = 2.0 * x * z + x * x * dz;
        return std::make_pair(y, dy);
    };
    return sol;
}

double nonlinear_pointwise_residual(const PointwiseSolution& sol, int level, double x) {
    if (x == 0.0) throw DomainError("nonlinear_pointwise_residual: x must be nonzero");
    const auto [y, dy] = sol.eval(level, x);
    const auto [y1, dy1] = sol.eval(level + 1, x);
    (void)dy1;
    return dy - y / x - y1 * y1 / (x * x * x);
}

PointwiseSolution apply_uncoupled_invariance(UncoupledId id, double eps, PointwiseSolution sol) {
    PointwiseSolution out;
    out.depth = sol.depth;
    if (id == UncoupledId::T1inf) {
        out.eval = [eps, sol](int n, double xt) {
            const double x = std::exp(-eps) * xt;
            const auto [y, dy] = sol.eval(n, x);
            return std::make_pair(std::exp(2 * eps) * y, std::exp(eps) * dy);
        };
    } else {
        out.eval = [eps, sol](int n, double xt) {
            const double den = 1.0 + eps * xt;
            if (den == 0.0) throw TransformSingular("T2inf: xt at the image pole");
            const double x = xt / den;
            const auto [y, dy] = sol.eval(n, x);
            // yt = (1 + eps xt) y(x(xt)); dx/dxt = 1/(1+eps xt)^2
            return std::make_pair(den * y, eps * y + dy / den);
        };
    }
    return out;
}

ConstraintResidual uncoupled_constraint_residual(const Rat& c1, const Rat& c2,
                                                 const std::vector<Rat>& samples) {
    // phi = c1 x + c2 x^2, alpha_n = 2 c1 + c2 x (level-independent)
    const LaurentPoly2 phi = LaurentPoly2::term(c1, 1, 0) + LaurentPoly2::term(c2, 2, 0);
    const LaurentPoly2 alpha = LaurentPoly2::term(Rat(2) * c1, 0, 0) + LaurentPoly2::term(c2, 1, 0);
    const LaurentPoly2 x_inv = LaurentPoly2::term(Rat(1), -1, 0);
    const LaurentPoly2 x1 = LaurentPoly2::term(Rat(1), 1, 0);

    ConstraintResidual out;
    out.first = alpha.dx() * x1 - phi.dx() + phi * x_inv;
    out.second = alpha - (LaurentPoly2::term(Rat(2), 0, 0) * alpha) - phi.dx() +
                 LaurentPoly2::term(Rat(3), 0, 0) * phi * x_inv;
    out.exact_zero = out.first.is_zero() && out.second.is_zero();
    for (const auto& x : samples) {
        if (x.is_zero()) throw DomainError("constraint samples must avoid x = 0");
        out.max_first = std::max(out.max_first, std::fabs(to_double(out.first.eval(x, Rat(0)))));
        out.max_second = std::max(out.max_second, std::fabs(to_double(out.second.eval(x, Rat(0)))));
    }
    return out;
}

LaurentPoly2 uncoupled_classifying_residual(const std::vector<Rat>& phi_poly) {
    LaurentPoly2 phi;
    for (size_t k = 0; k < phi_poly.size(); ++k) phi.add_term(phi_poly[k], static_cast<int>(k), 0);
    const LaurentPoly2 x1 = LaurentPoly2::term(Rat(1), 1, 0);
    const LaurentPoly2 x_inv = LaurentPoly2::term(Rat(1), -1, 0);
    return x1 * phi.dx().dx() - LaurentPoly2::term(Rat(2), 0, 0) * phi.dx() +
           LaurentPoly2::term(Rat(2), 0, 0) * phi * x_inv;
}

}  // namespace hforge
