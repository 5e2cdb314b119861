#include "hforge/moments.hpp"

#include "hforge/uniqueness.hpp"

#include <array>
#include <cmath>

namespace hforge {

std::vector<Rat> gaussian_moments(const GaussianSpec& spec, int n_max) {
    if (n_max < 0) throw DomainError("gaussian_moments: n_max must be >= 0");
    std::vector<Rat> m(n_max + 1);
    m[0] = spec.weight;
    if (n_max >= 1) m[1] = spec.mean * spec.weight;
    for (int n = 2; n <= n_max; ++n) m[n] = spec.mean * m[n - 1] + Rat(n - 1) * spec.variance * m[n - 2];
    return m;
}

namespace {

void require_backward_unit(const MomentSystemSpec& spec) {
    if (!spec.c.is_zero()) throw WrongDirection("backward_solution: spec must have c = 0");
    if (!spec.b.is_zero() || spec.a != Rat(1))
        throw WrongDirection("backward_solution: implemented for (a,b,c) = (1,0,0)");
}

}  // namespace

std::vector<QSeries> backward_polynomials(const std::vector<Rat>& c_seed, int n_max, int order) {
    if (static_cast<int>(c_seed.size()) < n_max + 1)
        throw DependencyConeViolation("backward_polynomials: need seeds up to n_max");
    std::vector<QSeries> out;
    out.reserve(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        QSeries p = QSeries::zero(Rat(0), order);
        if (n <= 1) {
            p.coeffs[0] = c_seed[n];
        } else if (n % 2 == 0) {
            const int nn = n / 2 - 1;  // u_{2nn+2} = u_n
            for (int k = 0; k <= nn + 1 && k <= order; ++k)
                p.coeffs[k] = factorial(2 * nn + 2) / factorial(2 * nn + 2 - 2 * k) *
                              c_seed[2 * nn + 2 - 2 * k] / factorial(k);
        } else {
            const int mm = (n - 1) / 2;  // u_{2mm+1} = u_n
            for (int k = 0; k <= mm && k <= order; ++k)
                p.coeffs[k] = factorial(2 * mm + 1) / factorial(2 * mm + 1 - 2 * k) *
                              c_seed[2 * mm + 1 - 2 * k] / factorial(k);
        }
        p.valid_order = order;
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Rat> backward_solution(const MomentSystemSpec& spec, const std::vector<Rat>& c_seed,
                                   const Rat& t, int n_max) {
    require_backward_unit(spec);
    const int order = n_max / 2 + 1;
    const auto polys = backward_polynomials(c_seed, n_max, order);
    std::vector<Rat> out(n_max + 1);
    for (int n = 0; n <= n_max; ++n) out[n] = evaluate(polys[n], t).value;
    return out;
}

ACoeffTable::ACoeffTable(int i_max, int n_max) : i_max_(i_max), n_max_(n_max) {
    a1_.assign(i_max + 1, std::vector<Rat>(n_max + 2, Rat(0)));
    for (int n = -1; n <= n_max; ++n) a1_[0][n + 1] = Rat(1);
    for (int i = 1; i <= i_max; ++i)
        for (int n = 0; n <= n_max; ++n) {
            Rat acc(0);
            for (int k = 0; k <= n - 2 * i + 1; ++k) {
                const int idx = n - 2 - k;
                if (idx < -1) continue;
                acc += Rat((2 * n - 2 * k)) * Rat((2 * n - 1 - 2 * k)) * a1_[i - 1][idx + 1];
            }
            a1_[i][n + 1] = acc;
        }

    a2_.assign(i_max + 1, std::vector<Rat>(n_max + 1, Rat(0)));
    for (int m = 0; m <= n_max; ++m) a2_[0][m] = Rat(1);  // a2_[j-1][m], seed j = 1
    for (int j = 2; j <= i_max + 1; ++j) {
        if (j - 1 > i_max) break;
        for (int m = 1; m <= n_max; ++m) {
            Rat acc(0);
            for (int k = 1; k <= m - (2 * j - 3); ++k) {
                const int idx = m - 1 - k;
                if (idx < 0) continue;
                acc += Rat((2 * m - 2 * k)) * Rat((2 * m + 1 - 2 * k)) * a2_[j - 2][idx];
            }
            a2_[j - 1][m] = acc;
        }
    }
}

Rat ACoeffTable::a1(int i, int n) const {
    if (i < 0 || n < -1) return Rat(0);
    if (i > i_max_ || n > n_max_) throw DependencyConeViolation("ACoeffTable::a1 out of range");
    return a1_[i][n + 1];
}

Rat ACoeffTable::a2(int j, int m) const {
    if (j < 1 || m < 0) return Rat(0);
    if (j - 1 > i_max_ || m > n_max_) throw DependencyConeViolation("ACoeffTable::a2 out of range");
    return a2_[j - 1][m];
}

QSeries forward_solved_form(const QSeries& u0, const QSeries& u1, int level,
                            const ACoeffTable& table) {
    if (level < 2) throw DomainError("forward_solved_form: level must be >= 2");

    const auto nth_derivative = [](QSeries s, int q) {
        for (int i = 0; i < q; ++i) s = differentiate(s);
        return s;
    };

    if (level % 2 == 0) {
        const int n = level / 2 - 1;
        if (u0.valid_order < n + 1)
            throw DependencyConeViolation("forward_solved_form: u0 order too low");
        QSeries acc = QSeries::zero(u0.base, u0.order() - (n + 1));
        acc.valid_order = acc.order();
        for (int i = 0; n + 1 - 2 * i >= 0; ++i) {
            const Rat w = table.a1(i, n);
            if (w.is_zero()) continue;
            acc = add(acc, scale(nth_derivative(u0, n + 1 - 2 * i), w));
        }
        const Rat sign = (n + 1) % 2 ? Rat(-1) : Rat(1);
        return scale(acc, sign);
    }

    const int m = (level - 1) / 2;
    if (u1.valid_order < m) throw DependencyConeViolation("forward_solved_form: u1 order too low");
    QSeries acc = QSeries::zero(u1.base, u1.order() - m);
    acc.valid_order = acc.order();
    for (int j = 1; m + 2 - 2 * j >= 0; ++j) {
        const Rat w = table.a2(j, m);
        if (w.is_zero()) continue;
        acc = add(acc, scale(nth_derivative(u1, m + 2 - 2 * j), w));
    }
    const Rat sign = m % 2 ? Rat(-1) : Rat(1);
    return scale(acc, sign);
}

std::pair<std::vector<Rat>, std::vector<Rat>> init_coeff_recursion(
    const std::vector<Rat>& initial_moments, int order, const ACoeffTable& table) {
    if (static_cast<int>(initial_moments.size()) < 2 * order + 2)
        throw DependencyConeViolation("init_coeff_recursion: need moments up to 2*order+1");

    std::vector<Rat> c1(order + 1), c2(order + 1);
    for (int k = 0; k <= order; ++k) {
        Rat acc = (k % 2 ? Rat(-1) : Rat(1)) * initial_moments[2 * k];
        for (int i = 1; k - 2 * i >= 0; ++i) acc -= table.a1(i, k - 1) * c1[k - 2 * i];
        c1[k] = acc;

        Rat acc2 = (k % 2 ? Rat(-1) : Rat(1)) * initial_moments[2 * k + 1];
        for (int i = 1; k - 2 * i >= 0; ++i) acc2 -= table.a2(i + 1, k) * c2[k - 2 * i];
        c2[k] = acc2;
    }
    return {std::move(c1), std::move(c2)};
}

std::pair<double, double> reference_moments(double t) {
    if (t < 0) throw DomainError("reference_moments: t must be >= 0");
    const double s = 1.0 + 3.0 * std::exp(4.0 * t);
    const double g = -(1.0 - 4.0 / s) / 3.0;
    const double u0 = 2.0 * std::exp(g + t) / std::sqrt(s);
    const double u1 = 8.0 * std::exp(g + 3.0 * t) / std::sqrt(s * s * s);
    return {u0, u1};
}

std::pair<QSeries, QSeries> reference_series(int order) {
    const int K = order;
    // e^{4t} - 1 and company, all exact rational series around t = 0
    QSeries e4 = QSeries::zero(Rat(0), K);
    Rat p(1);
    for (int k = 0; k <= K; ++k) {
        e4.coeffs[k] = p / factorial(k);
        p *= 4;
    }
    e4.valid_order = K;

    // h = (s-4)/4 = (3/4)(e^{4t} - 1);  s = 4(1+h)
    QSeries h = e4;
    h.coeffs[0] = Rat(0);
    h = scale(h, Rat(3) / Rat(4));

    // g = -(1/3)(1 - 1/(1+h)) + t = -(1/3) h/(1+h) + t
    QSeries one_ph = h;
    one_ph.coeffs[0] = Rat(1);
    QSeries g = scale(div(h, one_ph), Rat(-1) / Rat(3));
    g.coeffs[1] += Rat(1);

    // u0 = e^g (1+h)^{-1/2};  u1 = e^g e^{2t} (1+h)^{-3/2}
    const QSeries eg = exp_series(g);
    const QSeries u0 = mul(eg, pow1p_series(h, Rat(-1) / Rat(2)));

    QSeries e2t = QSeries::zero(Rat(0), K);
    p = Rat(1);
    for (int k = 0; k <= K; ++k) {
        e2t.coeffs[k] = p / factorial(k);
        p *= 2;
    }
    e2t.valid_order = K;
    const QSeries u1 = mul(mul(eg, e2t), pow1p_series(h, Rat(-3) / Rat(2)));
    return {u0, u1};
}

std::array<double, 3> kolmogorov_point_transform(KolmogorovDirection dir,
                                                 const std::array<double, 3>& point) {
    const auto [t, x, u] = point;
    if (dir == KolmogorovDirection::Forward) {
        const double tt = 0.25 * (std::exp(4.0 * t) - 1.0);
        const double xt = x * std::exp(2.0 * t);
        const double ut = u * std::exp(-0.5 * x * x - t);
        return {tt, xt, ut};
    }
    if (1.0 + 4.0 * t <= 0.0) throw DomainError("inverse transform needs 1 + 4t > 0");
    const double s = 1.0 + 4.0 * t;
    const double t0 = 0.25 * std::log(s);
    const double x0 = x / std::sqrt(s);
    const double u0 = u * std::pow(s, 0.25) * std::exp(0.5 * x * x / s);
    return {t0, x0, u0};
}

MomentTrajectory integrate_truncated(const MomentSystemSpec& spec,
                                     const std::vector<double>& initial_moments, double t_end,
                                     int depth, int steps, int sample_every) {
    if (t_end < 0) throw DomainError("integrate_truncated: t_end must be >= 0");
    const int count = depth + 1;
    if (static_cast<int>(initial_moments.size()) < count)
        throw DependencyConeViolation("integrate_truncated: need moments 0..depth");

    const double a = to_double(spec.a), b = to_double(spec.b), c = to_double(spec.c);
    auto rhs = [&](const std::vector<double>& u, std::vector<double>& du) {
        for (int n = 0; n < count; ++n) {
            const double lower = n >= 2 ? u[n - 2] : 0.0;
            const double upper = n + 2 < count ? u[n + 2] : 0.0;  // zero closure
            du[n] = a * n * (n - 1) * lower - b * n * u[n] + c * upper;
        }
    };

    std::vector<double> u(initial_moments.begin(), initial_moments.begin() + count);
    MomentTrajectory traj;
    traj.times.push_back(0.0);
    traj.values.push_back(u);
    if (t_end == 0.0) return traj;

    const double hstep = t_end / steps;
    std::vector<double> k1(count), k2(count), k3(count), k4(count), tmp(count);
    for (int s = 1; s <= steps; ++s) {
        rhs(u, k1);
        for (int i = 0; i < count; ++i) tmp[i] = u[i] + 0.5 * hstep * k1[i];
        rhs(tmp, k2);
        for (int i = 0; i < count; ++i) tmp[i] = u[i] + 0.5 * hstep * k2[i];
        rhs(tmp, k3);
        for (int i = 0; i < count; ++i) tmp[i] = u[i] + hstep * k3[i];
        rhs(tmp, k4);
        for (int i = 0; i < count; ++i)
            u[i] += hstep / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        if (s % sample_every == 0 || s == steps) {
            traj.times.push_back(s * hstep);
            traj.values.push_back(u);
        }
    }
    return traj;
}

namespace {

double poly_at(const std::vector<double>& p, double t) {
    double acc = 0.0;
    for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) acc = acc * t + p[k];
    return acc;
}

AmbiguousChoice make_choice(const std::vector<double>& f, const std::vector<double>& psi,
                            double gamma) {
    if (gamma <= 0) throw DomainError("ambiguity_pair: gammas must be positive");
    AmbiguousChoice ch;
    const BumpSpec bump{gamma * gamma};  // exponent is gamma^2 / t^2 here
    ch.value = [f, psi, bump](double t) {
        const double flat = t == 0.0 ? 0.0 : bump_derivative(bump, 0, t);
        return poly_at(f, t) + poly_at(psi, t) * flat;
    };
    // derivatives at 0: the bump part is flat to all orders, so these are
    // exactly the derivatives of the base polynomial
    double fact = 1.0;
    for (int m = 0; m <= 6; ++m) {
        if (m > 0) fact *= m;
        ch.derivs_at_zero.push_back(m < static_cast<int>(f.size()) ? f[m] * fact : 0.0);
    }
    return ch;
}

}  // namespace

std::pair<AmbiguousChoice, AmbiguousChoice> ambiguity_pair(const std::vector<double>& f0,
                                                           const std::vector<double>& f1,
                                                           const std::vector<double>& psi0,
                                                           const std::vector<double>& psi1,
                                                           double gamma0, double gamma1) {
    return {make_choice(f0, psi0, gamma0), make_choice(f1, psi1, gamma1)};
}

}  // namespace hforge
