#include "hforge/linear_hierarchy.hpp"

#include <cmath>

namespace hforge {

LahTable::LahTable(int depth) : depth_(depth) {
    if (depth < 2) throw Error("LahTable: depth must be >= 2");
    rows_.assign(depth + 1, {});
    for (int n = 2; n <= depth; ++n) {
        rows_[n].assign(n, Rat(0));
        if (n == 2) {
            rows_[2][1] = Rat(1);
            continue;
        }
        for (int k = 1; k <= n - 1; ++k) {
            Rat v = Rat(n - 2 + k) * (*this)(n - 1, k);
            v += (*this)(n - 1, k - 1);
            rows_[n][k] = v;
        }
    }
}

RestrictionCheck restrictions_ok(double x_tilde, double eps, double a) {
    const double den = 1.0 + a * eps;
    if (den == 0.0) throw TransformSingular("restrictions_ok: a*eps = -1");
    RestrictionCheck r;
    r.shifted_ratio = std::fabs((x_tilde - a) * eps / den) < 1.0;
    r.base_ratio = std::fabs(a * eps / den) < 1.0;
    r.plain = std::fabs(x_tilde * eps) < 1.0;
    return r;
}

std::vector<XRat> seed_vector(SeedFamily family, const Rat& eps, int count, const Rat& alpha,
                              const LahTable& lah) {
    std::vector<XRat> y0(count);
    switch (family) {
        case SeedFamily::TransformedConstants: {
            const std::vector<XRat> ones(count, XRat(alpha));
            const auto g = group_matrix(XRat(Rat(0)), XRat(eps), unit_power(1), count, lah);
            y0 = apply(g, ones);
            break;
        }
        case SeedFamily::FactorialSeed: {
            Rat f(1);
            for (int i = 1; i <= count; ++i) {
                f *= i;
                y0[i - 1] = XRat(Rat(alpha * f));
            }
            break;
        }
        case SeedFamily::PlainConstants:
            for (int i = 0; i < count; ++i) y0[i] = XRat(alpha);
            break;
        case SeedFamily::FactorialSquaredSeed: {
            Rat f(1);
            for (int i = 1; i <= count; ++i) {
                f *= i;
                y0[i - 1] = XRat(Rat(alpha * f * f));
            }
            break;
        }
    }
    return y0;
}

namespace {

// level-1 flow stream y0_{1+k} (-1)^k / k! as log-magnitudes
std::vector<double> level1_stream_logs(const std::vector<XRat>& y0) {
    std::vector<double> logs(y0.size());
    double lf = 0.0;  // log k!
    for (size_t k = 0; k < y0.size(); ++k) {
        if (k > 0) lf += std::log(static_cast<double>(k));
        logs[k] = log_abs(y0[k].coef) - lf;
    }
    return logs;
}

DomainDescriptor classify_primary(const RadiusEstimate& est) {
    DomainDescriptor d;
    d.estimate = est;
    switch (est.kind) {
        case RadiusEstimate::Kind::Infinite:
            d.cls = DomainDescriptor::Class::AllReals;
            break;
        case RadiusEstimate::Kind::Zero:
            d.cls = DomainDescriptor::Class::PointOnly;
            break;
        case RadiusEstimate::Kind::Finite:
            d.cls = DomainDescriptor::Class::Disk;
            d.radius = est.radius;
            break;
    }
    return d;
}

DomainDescriptor classify_transformed(const RadiusEstimate& est, double eps) {
    DomainDescriptor d;
    d.estimate = est;
    switch (est.kind) {
        case RadiusEstimate::Kind::Infinite:
            d.cls = DomainDescriptor::Class::AllRealsMinusPole;
            d.pole = -1.0 / eps;
            break;
        case RadiusEstimate::Kind::Zero:
            d.cls = DomainDescriptor::Class::PointOnly;
            break;
        case RadiusEstimate::Kind::Finite:
            d.cls = DomainDescriptor::Class::MoebiusDisk;
            d.radius = est.radius;
            d.pole = -1.0 / eps;
            break;
    }
    return d;
}

}  // namespace

ConvergencePair convergence_domains(SeedFamily family, const Rat& eps, int order) {
    const int count = order + 1;
    const LahTable lah(count + 1);
    const auto y0 = seed_vector(family, eps, count, Rat(1), lah);

    // inner seed of the transformed solution: G(0,-eps) y0 (exact; the unit
    // powers cancel or factor out and do not affect the root test)
    const auto ginv0 = group_matrix(XRat(Rat(0)), XRat(Rat(-eps)), unit_power(-1), count, lah);

    ConvergencePair out;
    out.primary = classify_primary(radius_estimate_log(level1_stream_logs(y0)));
    const auto y0s = apply(ginv0, y0);
    out.transformed = classify_transformed(radius_estimate_log(level1_stream_logs(y0s)),
                                           to_double(eps));
    return out;
}

IcCompatibleInfinitesimals ic_compatible_infinitesimals(
    std::function<double(double, double)> f0, std::function<double(double, double)> g0,
    double gamma_f, double gamma_g, double x0, double y01) {
    if (gamma_f <= 0 || gamma_g <= 0)
        throw DomainError("ic_compatible_infinitesimals: gammas must be positive");
    IcCompatibleInfinitesimals out;
    out.xi = [f0 = std::move(f0), gamma_f, x0](double x, double y1) {
        const double d = x - x0;
        if (d == 0.0) return 0.0;
        const double e = gamma_f * gamma_f / (d * d);
        if (e > 700.0) return 0.0;
        return f0(x, y1) * std::exp(-e);
    };
    out.eta1 = [g0 = std::move(g0), gamma_g, y01](double x, double y1) {
        const double d = y1 - y01;
        if (d == 0.0) return 0.0;
        const double e = gamma_g * gamma_g / (d * d);
        if (e > 700.0) return 0.0;
        return g0(x, y1) * std::exp(-e);
    };
    return out;
}

namespace {

double poly_eval(const std::vector<double>& p, double x) {
    double acc = 0.0;
    for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) acc = acc * x + p[k];
    return acc;
}

std::vector<double> poly_deriv(const std::vector<double>& p) {
    if (p.size() <= 1) return {0.0};
    std::vector<double> d(p.size() - 1);
    for (size_t k = 1; k < p.size(); ++k) d[k - 1] = k * p[k];
    return d;
}

}  // namespace

std::pair<double, std::vector<double>> apply_free_function_transform(
    const std::vector<double>& f_poly, double eps, double x, const std::vector<double>& y) {
    const int N = static_cast<int>(y.size());
    // f and its first N-1 derivatives, exact for polynomial f
    std::vector<std::vector<double>> derivs{f_poly};
    for (int m = 1; m <= N - 1; ++m) derivs.push_back(poly_deriv(derivs.back()));

    auto rhs = [&](const std::vector<double>& state, std::vector<double>& out) {
        const double xt = state[0];
        out[0] = poly_eval(derivs[0], xt);
        for (int n = 1; n <= N; ++n) {
            double eta = state[n];
            for (int k = 1; k <= n - 1; ++k) {
                double w = to_double(binomial(n - 1, k - 1));
                if ((n - k) % 2) w = -w;
                eta += w * poly_eval(derivs[n - k], xt) * state[k + 1];
            }
            out[n] = eta;
        }
    };

    std::vector<double> state(N + 1);
    state[0] = x;
    for (int n = 0; n < N; ++n) state[n + 1] = y[n];

    const int steps = 64;
    const double h = eps / steps;
    std::vector<double> k1(N + 1), k2(N + 1), k3(N + 1), k4(N + 1), tmp(N + 1);
    for (int s = 0; s < steps; ++s) {
        rhs(state, k1);
        for (int i = 0; i <= N; ++i) tmp[i] = state[i] + 0.5 * h * k1[i];
        rhs(tmp, k2);
        for (int i = 0; i <= N; ++i) tmp[i] = state[i] + 0.5 * h * k2[i];
        rhs(tmp, k3);
        for (int i = 0; i <= N; ++i) tmp[i] = state[i] + h * k3[i];
        rhs(tmp, k4);
        for (int i = 0; i <= N; ++i) state[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }

    std::vector<double> yt(state.begin() + 1, state.end());
    return {state[0], yt};
}

}  // namespace hforge
