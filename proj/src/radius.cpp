#include "hforge/radius.hpp"

#include "hforge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hforge {
namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Trend thresholds on the half-window log-median difference.  Scale-free:
// factorial growth/decay gives |diff| = ln(k2/k1) ~ 0.34 for any window,
// while e^{c/sqrt k} corrections stay an order of magnitude below.
constexpr double kGrowTrend = 0.140;   // ln(1.15)
constexpr double kDecayTrend = -0.140;
constexpr double kRootFloor = 1e-9;

}  // namespace

RadiusEstimate radius_estimate_log(const std::vector<double>& log_abs_coeffs) {
    const int count = static_cast<int>(log_abs_coeffs.size());
    if (count < 16) throw Error("radius_estimate: need at least 16 coefficients");
    const int top = count - 1;
    const int lo = top / 2;

    RadiusEstimate out;
    out.window_lo = lo;
    out.window_hi = top;

    std::vector<int> ks;
    std::vector<double> logr;  // log |c_k|^{1/k}
    for (int k = std::max(lo, 1); k <= top; ++k) {
        const double la = log_abs_coeffs[k];
        if (!std::isfinite(la) && la < 0) continue;  // zero coefficient
        ks.push_back(k);
        logr.push_back(la / k);
    }
    if (ks.empty()) {
        out.kind = RadiusEstimate::Kind::Infinite;
        out.all_zero_tail = true;
        out.spread = 0.0;
        out.raw_median = std::numeric_limits<double>::infinity();
        return out;
    }

    double rmin = std::numeric_limits<double>::infinity(), rmax = -rmin;
    for (double lr : logr) {
        rmin = std::min(rmin, std::exp(lr));
        rmax = std::max(rmax, std::exp(lr));
    }
    out.spread = rmax - rmin;

    const double med = median(logr);
    out.raw_median = std::exp(-med);

    if (std::exp(med) < kRootFloor) {
        out.kind = RadiusEstimate::Kind::Infinite;
        return out;
    }
    if (ks.size() < 4) {
        out.kind = RadiusEstimate::Kind::Finite;
        out.radius = out.raw_median;
        return out;
    }

    const size_t half = ks.size() / 2;
    std::vector<double> lr1(logr.begin(), logr.begin() + half);
    std::vector<double> lr2(logr.begin() + half, logr.end());
    std::vector<double> u1v, u2v;
    for (size_t i = 0; i < half; ++i) u1v.push_back(1.0 / std::sqrt(double(ks[i])));
    for (size_t i = half; i < ks.size(); ++i) u2v.push_back(1.0 / std::sqrt(double(ks[i])));
    const double m1 = median(lr1), m2 = median(lr2);
    const double u1 = median(u1v), u2 = median(u2v);

    const double trend = m2 - m1;  // second half has larger k
    if (trend >= kGrowTrend) {
        out.kind = RadiusEstimate::Kind::Zero;
        return out;
    }
    if (trend <= kDecayTrend) {
        out.kind = RadiusEstimate::Kind::Infinite;
        return out;
    }

    const double slope = (m2 - m1) / (u2 - u1);
    const double intercept = m2 - slope * u2;
    const double radius = std::exp(-intercept);
    if (radius > 1e9) {
        out.kind = RadiusEstimate::Kind::Infinite;
    } else if (radius < kRootFloor) {
        out.kind = RadiusEstimate::Kind::Zero;
    } else {
        out.kind = RadiusEstimate::Kind::Finite;
        out.radius = radius;
    }
    return out;
}

RadiusEstimate radius_estimate(const std::vector<double>& coeffs) {
    std::vector<double> la(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i)
        la[i] = coeffs[i] == 0.0 ? -std::numeric_limits<double>::infinity()
                                 : std::log(std::fabs(coeffs[i]));
    return radius_estimate_log(la);
}

}  // namespace hforge
