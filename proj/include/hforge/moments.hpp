#pragma once

#include "hforge/series.hpp"

#include <array>
#include <functional>
#include <utility>
#include <vector>

namespace hforge {

/// Coefficients of the generalized diffusion equation
/// u_t = a u_xx + b x u_x + (b + c x^2) u, whose spatial moments obey
/// du_n/dt = a n(n-1) u_{n-2} - b n u_n + c u_{n+2}.
/// c = 0 closes the system backward (integrable level by level); c != 0
/// couples every level upward and leaves the hierarchy unclosed.
struct MomentSystemSpec {
    Rat a{1}, b{0}, c{0};

    bool backward() const { return c.is_zero(); }
};

/// Gaussian initial datum; moments satisfy
/// m_n = mean m_{n-1} + (n-1) variance m_{n-2}, m_0 = weight.
struct GaussianSpec {
    Rat mean{0};
    Rat variance{1};
    Rat weight{1};
};

std::vector<Rat> gaussian_moments(const GaussianSpec& spec, int n_max);

/// Backward (closed) hierarchy for spec (a,b,c) = (1,0,0): u_0, u_1 constant,
/// u_{2n+2}(t) = sum_{k=0}^{n+1} (2n+2)!/(2n+2-2k)! c_{2n+2-2k} t^k / k!,
/// u_{2m+1}(t) = sum_{k=0}^{m}   (2m+1)!/(2m+1-2k)! c_{2m+1-2k} t^k / k!.
std::vector<Rat> backward_solution(const MomentSystemSpec& spec, const std::vector<Rat>& c_seed,
                                   const Rat& t, int n_max);

/// The same moments as explicit polynomials in t (series based at 0).
std::vector<QSeries> backward_polynomials(const std::vector<Rat>& c_seed, int n_max, int order);

/// Coefficient tables of the forward hierarchy's solved form.
/// a1(i, n) is defined for i >= 0, n >= -1 (seed row a1(0, .) = 1);
/// a2(j, m) for j >= 1, m >= 0 (seed row a2(1, .) = 1).  Empty sums are zero.
class ACoeffTable {
  public:
    ACoeffTable(int i_max, int n_max);

    Rat a1(int i, int n) const;
    Rat a2(int j, int m) const;
    int i_max() const { return i_max_; }
    int n_max() const { return n_max_; }

  private:
    int i_max_, n_max_;
    std::vector<std::vector<Rat>> a1_;  // a1_[i][n+1]
    std::vector<std::vector<Rat>> a2_;  // a2_[j-1][m]
};

/// Solved form of the forward hierarchy (a,b,c) = (1,0,-1):
/// u_{2n+2} = (-1)^{n+1} sum_i A1_i(n) d^{n+1-2i} u0,
/// u_{2m+1} = (-1)^m sum_{j>=1} A2_j(m) d^{m+2-2j} u1,  negative-order
/// derivatives contributing zero.
QSeries forward_solved_form(const QSeries& u0, const QSeries& u1, int level,
                            const ACoeffTable& table);

/// Expansion coefficients c^{(1)}, c^{(2)} of u0, u1 = sum c_k t^k / k! fixed
/// recursively by the initial moments u_n(0) (needs n <= 2*order+1).
std::pair<std::vector<Rat>, std::vector<Rat>> init_coeff_recursion(
    const std::vector<Rat>& initial_moments, int order, const ACoeffTable& table);

/// Closed-form first moments for phi(x) = pi^{-1/2} exp(-(x-1)^2), with
/// s = 1 + 3 e^{4t}:  u0 = 2 e^{-(1/3)(1-4/s)+t}/sqrt(s),
/// u1 = 8 e^{-(1/3)(1-4/s)+3t}/sqrt(s^3).
std::pair<double, double> reference_moments(double t);

/// Exact Taylor expansions of the same two closed forms around t = 0.
std::pair<QSeries, QSeries> reference_series(int order);

enum class KolmogorovDirection { Forward, Inverse };

/// The point transformation linking u_t = u_xx - x^2 u to the plain heat
/// equation: forward (t,x,u) -> ((e^{4t}-1)/4, x e^{2t}, u e^{-x^2/2 - t});
/// inverse requires 1 + 4t > 0.
std::array<double, 3> kolmogorov_point_transform(KolmogorovDirection dir,
                                                 const std::array<double, 3>& point);

struct MomentTrajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> values;  // values[i][n], n = 0..depth
};

/// Classical fixed-step 4th-order integration of the first depth+1 moment
/// equations with zero closure (u_n = 0 for n > depth).
MomentTrajectory integrate_truncated(const MomentSystemSpec& spec,
                                     const std::vector<double>& initial_moments, double t_end,
                                     int depth, int steps = 1024, int sample_every = 32);

/// One solution choice u = f + psi * exp(-gamma^2/t^2) of the forward
/// hierarchy's free functions; shares every derivative with f at t = 0.
struct AmbiguousChoice {
    std::function<double(double)> value;
    std::vector<double> derivs_at_zero;  // orders 0..6, equal to f's
};

/// Build the perturbed pair (u0, u1) from base polynomials f and perturbation
/// polynomials psi (coefficients lowest first).
std::pair<AmbiguousChoice, AmbiguousChoice> ambiguity_pair(const std::vector<double>& f0,
                                                           const std::vector<double>& f1,
                                                           const std::vector<double>& psi0,
                                                           const std::vector<double>& psi1,
                                                           double gamma0, double gamma1);

}  // namespace hforge
