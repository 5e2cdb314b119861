#include "hforge/uniqueness.hpp"

#include <algorithm>
#include <cmath>

namespace hforge {

std::vector<double> bump_rational_poly(const BumpSpec& spec, int order) {
    if (order < 0) throw DomainError("bump_rational_poly: order must be >= 0");
    std::vector<double> r{1.0};  // R_0
    for (int m = 0; m < order; ++m) {
        std::vector<double> next(r.size() + 3, 0.0);
        // -u^2 R'(u)
        for (size_t j = 1; j < r.size(); ++j) next[j + 1] -= static_cast<double>(j) * r[j];
        // + 2 gamma u^3 R(u)
        for (size_t j = 0; j < r.size(); ++j) next[j + 3] += 2.0 * spec.gamma * r[j];
        r = std::move(next);
    }
    return r;
}

double bump_derivative(const BumpSpec& spec, int order, double x) {
    if (spec.gamma <= 0) throw DomainError("bump_derivative: gamma must be positive");
    if (x == 0.0) return 0.0;
    const double e = spec.gamma / (x * x);
    // the exponential always wins against the rational prefactor; cut before
    // the prefactor can overflow
    if (e > 600.0) return 0.0;
    const auto r = bump_rational_poly(spec, order);
    const double u = 1.0 / x;
    double acc = 0.0;
    for (int j = static_cast<int>(r.size()) - 1; j >= 0; --j) acc = acc * u + r[j];
    return acc * std::exp(-e);
}

double primary_solution(int level, double x) {
    (void)level;
    return std::exp(-x);
}

double alt_solution(const BumpSpec& spec, int level, double x) {
    if (level < 1) throw DomainError("alt_solution: level must be >= 1");
    const double sign = (level - 1) % 2 ? -1.0 : 1.0;
    return std::exp(-x) + sign * bump_derivative(spec, level - 1, x);
}

double uniqueness_interval(const BumpSpec& spec, int level, double delta) {
    if (delta <= 0) throw DomainError("uniqueness_interval: delta must be positive");
    const auto diff = [&](double x) { return std::fabs(bump_derivative(spec, level - 1, x)); };

    // outward geometric scan for the first crossing of delta
    double lo = 1e-6 * std::sqrt(spec.gamma);
    double hi = lo;
    const double x_max = 50.0;
    bool crossed = false;
    while (hi < x_max) {
        if (diff(hi) >= delta) {
            crossed = true;
            break;
        }
        lo = hi;
        hi *= 1.02;
    }
    if (!crossed) return 2.0 * x_max;  // never leaves the tube on the probed range

    for (int it = 0; it < 200 && hi - lo > 1e-6; ++it) {
        const double mid = 0.5 * (lo + hi);
        (diff(mid) >= delta ? hi : lo) = mid;
    }
    return 2.0 * 0.5 * (lo + hi);  // symmetric interval
}

PointwiseResidualReport verify_global_pair_primary(int depth, const std::vector<double>& grid) {
    PointwiseResidualReport rep;
    for (int n = 1; n <= depth - 1; ++n) {
        double worst = 0.0;
        for (double x : grid) {
            // y_n' = -e^{-x}, y_{n+1} = e^{-x}
            worst = std::max(worst, std::fabs(-std::exp(-x) + primary_solution(n + 1, x)));
        }
        rep.per_level_max.push_back(worst);
    }
    return rep;
}

PointwiseResidualReport verify_global_pair_alt(const BumpSpec& spec, int depth,
                                               const std::vector<double>& grid) {
    PointwiseResidualReport rep;
    for (int n = 1; n <= depth - 1; ++n) {
        double worst = 0.0;
        const double sign_n = (n - 1) % 2 ? -1.0 : 1.0;
        for (double x : grid) {
            // y_n' = -e^{-x} + (-1)^{n-1} b^{(n)};  y_{n+1} = e^{-x} + (-1)^n b^{(n)}
            const double deriv = -std::exp(-x) + sign_n * bump_derivative(spec, n, x);
            const double next = alt_solution(spec, n + 1, x);
            worst = std::max(worst, std::fabs(deriv + next));
        }
        rep.per_level_max.push_back(worst);
    }
    return rep;
}

}  // namespace hforge
