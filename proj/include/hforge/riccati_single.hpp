#pragma once

#include "hforge/errors.hpp"
#include "hforge/laurent.hpp"
#include "hforge/series.hpp"

#include <array>
#include <functional>
#include <utility>
#include <vector>

namespace hforge {

/// Member of the one-parameter solution family y(x) = x^2 / (1 + c x) of the
/// single quadratic-rank equation y' - y/x - y^2/x^3 = 0.
struct RiccatiFamilyMember {
    double c = 0.0;

    double operator()(double x) const {
        const double den = 1.0 + c * x;
        if (den == 0.0) throw PoleEvaluation("family member evaluated at its pole");
        return x * x / den;
    }
    double deriv(double x) const {
        const double den = 1.0 + c * x;
        if (den == 0.0) throw PoleEvaluation("family member evaluated at its pole");
        return (2.0 * x + c * x * x) / (den * den);
    }

    /// Expansion around 0: x^2 * sum (-c)^k x^k.
    QSeries series(const Rat& c_exact, int K) const {
        QSeries s = QSeries::zero(Rat(0), K);
        Rat p(1);
        for (int k = 2; k <= K; ++k) {
            s.coeffs[k] = p;
            p *= -c_exact;
        }
        s.valid_order = K;
        return s;
    }
};

/// Tangent field xi(x,y) d_x + eta(x,y) d_y, stored exactly.
struct TangentField {
    LaurentPoly2 xi, eta;
    std::string name;
};

/// The four concrete monomial-scaled fields admitted by the equation
/// (xi = x^n for n = 0..3, with integration functions fixed to the simplest
/// representatives).
TangentField riccati_tangent_field(int n);

/// Left-hand side of the determining relation for the infinitesimals,
/// combined exactly as a Laurent polynomial.  Identically zero iff the field
/// satisfies the relation.
LaurentPoly2 determining_relation(const TangentField& field);

/// Max |relation| over the sample points (exact evaluation); the relation is
/// singular on x = 0, so samples must avoid it.
double determining_residual(const TangentField& field,
                            const std::vector<std::pair<Rat, Rat>>& samples);

/// Closure-based variant; partials by central differences with step 1e-6.
double determining_residual_numeric(const std::function<double(double, double)>& xi,
                                    const std::function<double(double, double)>& eta,
                                    const std::vector<std::pair<double, double>>& samples);

enum class PointTransformId { T0, T1, T2, T3 };

/// Global one-parameter point transformations generated by the four fields.
std::pair<double, double> apply_point_transform(PointTransformId id, double eps, double x,
                                                double y);

/// Transformed first derivative dy~/dx~ induced by a point transformation,
/// from the exact partials of the chosen map.
double induced_derivative(PointTransformId id, double eps, double x, double y, double yprime);

struct ReparamResult {
    enum class Kind { NewParam, Invariant, NotInFamily };
    Kind kind = Kind::NotInFamily;
    double c_tilde = 0.0;
    double fit_residual = 0.0;  // max spread of the per-point fitted parameters
};

/// Push the family member through a point transformation and fit the image
/// back to the family: consistent fit => reparametrization (NewParam /
/// Invariant), inconsistent fit => NotInFamily.
ReparamResult classify_reparam(PointTransformId id, double eps, double c, double tol = 1e-10);

}  // namespace hforge
