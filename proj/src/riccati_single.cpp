#include "hforge/riccati_single.hpp"

#include <algorithm>
#include <cmath>

namespace hforge {

TangentField riccati_tangent_field(int n) {
    TangentField f;
    f.name = "X" + std::to_string(n);
    switch (n) {
        case 0:  // d_x + (3y/x - x) d_y
            f.xi = LaurentPoly2::term(Rat(1), 0, 0);
            f.eta = LaurentPoly2::term(Rat(3), -1, 1) - LaurentPoly2::term(Rat(1), 1, 0);
            return f;
        case 1:  // x d_x + 2y d_y
            f.xi = LaurentPoly2::term(Rat(1), 1, 0);
            f.eta = LaurentPoly2::term(Rat(2), 0, 1);
            return f;
        case 2:  // x^2 d_x + xy d_y
            f.xi = LaurentPoly2::term(Rat(1), 2, 0);
            f.eta = LaurentPoly2::term(Rat(1), 1, 1);
            return f;
        case 3:  // x^3 d_x + (y^2 + y x^2) d_y
            f.xi = LaurentPoly2::term(Rat(1), 3, 0);
            f.eta = LaurentPoly2::term(Rat(1), 0, 2) + LaurentPoly2::term(Rat(1), 2, 1);
            return f;
        default:
            throw Error("riccati_tangent_field: only the four concrete fields are provided");
    }
}

LaurentPoly2 determining_relation(const TangentField& field) {
    const auto t = [](long long c, int xe, int ye) { return LaurentPoly2::term(Rat(c), xe, ye); };
    // xi (3 y^2 x^2 + y x^4) - eta (2 y x^3 + x^5)
    //   - xi_x (y^2 x^3 + y x^5) - xi_y (y^4 + 2 y^3 x^2 + y^2 x^4)
    //   + eta_x x^6 + eta_y (y^2 x^3 + y x^5)
    const LaurentPoly2 p_a = t(3, 2, 2) + t(1, 4, 1);
    const LaurentPoly2 p_b = t(2, 3, 1) + t(1, 5, 0);
    const LaurentPoly2 p_c = t(1, 3, 2) + t(1, 5, 1);
    const LaurentPoly2 p_d = t(1, 0, 4) + t(2, 2, 3) + t(1, 4, 2);
    const LaurentPoly2 p_e = t(1, 6, 0);

    return field.xi * p_a - field.eta * p_b - field.xi.dx() * p_c - field.xi.dy() * p_d +
           field.eta.dx() * p_e + field.eta.dy() * p_c;
}

double determining_residual(const TangentField& field,
                            const std::vector<std::pair<Rat, Rat>>& samples) {
    const LaurentPoly2 rel = determining_relation(field);
    double worst = 0.0;
    for (const auto& [x, y] : samples) {
        if (x.is_zero()) throw DomainError("determining_residual: samples must have x != 0");
        worst = std::max(worst, std::fabs(to_double(rel.eval(x, y))));
    }
    return worst;
}

double determining_residual_numeric(const std::function<double(double, double)>& xi,
                                    const std::function<double(double, double)>& eta,
                                    const std::vector<std::pair<double, double>>& samples) {
    constexpr double h = 1e-6;
    const auto part = [&](const std::function<double(double, double)>& f, double x, double y,
                          bool in_x) {
        return in_x ? (f(x + h, y) - f(x - h, y)) / (2 * h) : (f(x, y + h) - f(x, y - h)) / (2 * h);
    };
    double worst = 0.0;
    for (const auto& [x, y] : samples) {
        const double y2 = y * y;
        const double r = xi(x, y) * (3 * y2 * x * x + y * std::pow(x, 4)) -
                         eta(x, y) * (2 * y * std::pow(x, 3) + std::pow(x, 5)) -
                         part(xi, x, y, true) * (y2 * std::pow(x, 3) + y * std::pow(x, 5)) -
                         part(xi, x, y, false) *
                             (std::pow(y, 4) + 2 * std::pow(y, 3) * x * x + y2 * std::pow(x, 4)) +
                         part(eta, x, y, true) * std::pow(x, 6) +
                         part(eta, x, y, false) * (y2 * std::pow(x, 3) + y * std::pow(x, 5));
        worst = std::max(worst, std::fabs(r));
    }
    return worst;
}

std::pair<double, double> apply_point_transform(PointTransformId id, double eps, double x,
                                                double y) {
    switch (id) {
        case PointTransformId::T0: {
            if (x == 0.0) throw TransformSingular("T0 needs x != 0");
            const double xt = x + eps;
            const double w = (y - x * x) / (x * x * x) + 1.0 / xt;
            return {xt, w * xt * xt * xt};
        }
        case PointTransformId::T1:
            return {std::exp(eps) * x, std::exp(2 * eps) * y};
        case PointTransformId::T2: {
            const double den = 1.0 - eps * x;
            if (den == 0.0) throw TransformSingular("T2 singular at eps*x = 1");
            return {x / den, y / den};
        }
        case PointTransformId::T3: {
            const double q = 1.0 - 2.0 * eps * x * x;
            if (q <= 0.0) throw TransformSingular("T3 needs 2*eps*x^2 < 1");
            const double s = std::sqrt(q);
            const double den = y * q - (y - x * x) * s;
            if (den == 0.0) throw TransformSingular("T3: vanishing denominator");
            return {x / s, y * x * x / den};
        }
    }
    throw Error("unreachable");
}

double induced_derivative(PointTransformId id, double eps, double x, double y, double yprime) {
    switch (id) {
        case PointTransformId::T0: {
            if (x == 0.0) throw TransformSingular("T0 needs x != 0");
            const double xt = x + eps;
            const double xt3 = xt * xt * xt;
            const double w = (y - x * x) / (x * x * x) + 1.0 / xt;
            const double dwdx = -2.0 / (x * x) - 3.0 * (y - x * x) / std::pow(x, 4) - 1.0 / (xt * xt);
            const double dydx_t = dwdx * xt3 + 3.0 * xt * xt * w;
            const double dydy_t = xt3 / (x * x * x);
            return dydx_t + dydy_t * yprime;  // dxt/dx = 1
        }
        case PointTransformId::T1:
            return std::exp(eps) * yprime;
        case PointTransformId::T2: {
            const double den = 1.0 - eps * x;
            if (den == 0.0) throw TransformSingular("T2 singular at eps*x = 1");
            // (dxt/dx)^{-1} = den^2;  d yt/dx = eps*y/den^2;  d yt/dy = 1/den
            return eps * y + den * yprime;
        }
        case PointTransformId::T3: {
            const double q = 1.0 - 2.0 * eps * x * x;
            if (q <= 0.0) throw TransformSingular("T3 needs 2*eps*x^2 < 1");
            const double s = std::sqrt(q);
            const double D = y * q - (y - x * x) * s;
            if (D == 0.0) throw TransformSingular("T3: vanishing denominator");
            const double dDdx = -4.0 * eps * x * y + 2.0 * x * s + 2.0 * eps * x * (y - x * x) / s;
            const double dDdy = q - s;
            const double dytdx = (2.0 * x * y * D - y * x * x * dDdx) / (D * D);
            const double dytdy = (x * x * D - y * x * x * dDdy) / (D * D);
            // dxt/dx = q^{-3/2}
            return (dytdx + dytdy * yprime) * s * q;
        }
    }
    throw Error("unreachable");
}

ReparamResult classify_reparam(PointTransformId id, double eps, double c, double tol) {
    const RiccatiFamilyMember member{c};
    const std::array<double, 3> xs{0.2, 0.35, 0.5};

    std::vector<double> fitted;
    for (double x : xs) {
        const auto [xt, yt] = apply_point_transform(id, eps, x, member(x));
        if (xt == 0.0 || yt == 0.0) throw TransformSingular("classify_reparam: degenerate sample");
        fitted.push_back((xt * xt / yt - 1.0) / xt);
    }
    double lo = fitted[0], hi = fitted[0];
    for (double f : fitted) {
        lo = std::min(lo, f);
        hi = std::max(hi, f);
    }

    ReparamResult out;
    out.fit_residual = hi - lo;
    if (out.fit_residual > tol * std::max(1.0, std::fabs(fitted[0]))) {
        out.kind = ReparamResult::Kind::NotInFamily;
        return out;
    }
    out.c_tilde = fitted[1];
    out.kind = std::fabs(out.c_tilde - c) <= tol ? ReparamResult::Kind::Invariant
                                                 : ReparamResult::Kind::NewParam;
    return out;
}

}  // namespace hforge
