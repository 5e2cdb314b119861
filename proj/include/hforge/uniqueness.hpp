#pragma once

#include "hforge/errors.hpp"

#include <vector>

namespace hforge {

/// The flat bump b(x) = exp(-gamma/x^2), extended by b(0) = 0; every
/// derivative vanishes at the origin, which is what makes the two global
/// solutions of the all-ones initial value problem agree to all orders there.
struct BumpSpec {
    double gamma = 1.0;
};

/// d^m/dx^m exp(-gamma/x^2), computed as R_m(1/x) exp(-gamma/x^2) with the
/// exact polynomial recurrence R_0 = 1, R_{m+1}(u) = -u^2 R_m'(u)
/// + 2 gamma u^3 R_m(u).  Returns exactly 0 at (and flat-near) x = 0.
double bump_derivative(const BumpSpec& spec, int order, double x);

/// Coefficients of R_m (lowest power of u first), exposed for the
/// finite-difference cross-checks.
std::vector<double> bump_rational_poly(const BumpSpec& spec, int order);

/// Level n of the second global solution of the all-ones problem:
/// y_n = e^{-x} + (-1)^{n-1} d^{n-1}/dx^{n-1} exp(-gamma/x^2).
/// Every level equals 1 at x = 0.
double alt_solution(const BumpSpec& spec, int level, double x);

/// First global solution (every level is e^{-x}).
double primary_solution(int level, double x);

/// Length of the maximal interval around 0 on which |y_n^II - y_n^I| stays
/// below delta; located by outward scan plus bisection to 1e-6.  The
/// difference is even in x, so the interval is symmetric.
double uniqueness_interval(const BumpSpec& spec, int level, double delta);

struct PointwiseResidualReport {
    std::vector<double> per_level_max;  // levels 1..N-1
    double max() const {
        double m = 0;
        for (double v : per_level_max) m = std::max(m, v);
        return m;
    }
};

/// Pointwise residual y_n' + y_{n+1} of both global families over a grid,
/// from the exact derivative formulas.
PointwiseResidualReport verify_global_pair_primary(int depth, const std::vector<double>& grid);
PointwiseResidualReport verify_global_pair_alt(const BumpSpec& spec, int depth,
                                               const std::vector<double>& grid);

}  // namespace hforge
