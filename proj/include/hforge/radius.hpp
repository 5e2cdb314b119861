#pragma once

#include <vector>

namespace hforge {

/// Cauchy-Hadamard root-test estimate of a power-series convergence radius.
///
/// Root estimates |c_k|^{1/k} are taken over the tail window k in [K/2, K]
/// (zero coefficients skipped).  The reported radius extrapolates the two
/// half-window medians linearly in 1/sqrt(k), which cancels the
/// exp(c*sqrt(k)) subexponential factors typical of the coefficient streams
/// produced by the triangular group transforms, while leaving clean geometric
/// streams untouched.  Zero/Infinite are classified from the median trend
/// between the half windows.
struct RadiusEstimate {
    enum class Kind { Zero, Finite, Infinite };

    Kind kind = Kind::Finite;
    double radius = 0.0;  // meaningful for Kind::Finite
    int window_lo = 0;    // inclusive index range of the tail window
    int window_hi = 0;
    double spread = 0.0;      // max - min of the raw root estimates
    double raw_median = 0.0;  // reciprocal of the plain median (diagnostic)
    bool all_zero_tail = false;

    bool is_finite() const { return kind == Kind::Finite; }
};

/// Estimate from coefficient magnitudes.  Requires at least 16 coefficients.
RadiusEstimate radius_estimate(const std::vector<double>& coeffs);

/// Same, from log|c_k| (use -infinity for zero coefficients).  This form
/// accepts streams whose magnitudes overflow double.
RadiusEstimate radius_estimate_log(const std::vector<double>& log_abs_coeffs);

}  // namespace hforge
