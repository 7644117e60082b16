#pragma once

#include <array>

namespace swlp {

/// One side of the relaxed acoustic Riemann problem, W = (tau, u, pi, z).
struct RelaxedCell {
    double tau = 1.0;
    double u = 0.0;
    double pi = 0.0;
    double z = 0.0;
};

struct RiemannInput {
    RelaxedCell left;
    RelaxedCell right;
    double a = 1.0;
    double dm_left = 1.0;
    double dm_right = 1.0;
    double g = 9.81;
};

/// Intermediate states of the four-state approximate solver (waves -a, 0, +a).
/// u is continuous across the 0-wave; pi jumps by m_jump there.
struct RiemannFan {
    double tau_left_star = 0.0;
    double tau_right_star = 0.0;
    double u_star = 0.0;
    double pi_star = 0.0;
    double pi_left_star = 0.0;
    double pi_right_star = 0.0;
    double m_jump = 0.0;          ///< g (h_L + h_R)/2 (z_R - z_L)
    double source_bracket = 0.0;  ///< discrete {(g/tau) d_m z} at the interface
};

/// Topography jump g (h_L + h_R)/2 (z_R - z_L), with h = 1/tau.
double topography_jump(double h_left, double h_right, double z_left, double z_right, double g);

/// Interface velocity and pressure of the fan. Shared by the explicit and
/// implicit acoustic steps and by the time-step pre-pass.
inline double interface_velocity(double u_l, double u_r, double pi_l, double pi_r, double a, double m_jump) {
    return 0.5 * (u_l + u_r) - (pi_r - pi_l) / (2.0 * a) - m_jump / (2.0 * a);
}
inline double interface_pressure(double u_l, double u_r, double pi_l, double pi_r, double a) {
    return 0.5 * (pi_l + pi_r) - 0.5 * a * (u_r - u_l);
}

/// Throws StepFailure if any starred quantity is not finite.
RiemannFan solve_interface(const RiemannInput& in);

/// Residual of G(W_R) - G(W_L) + a(W_L* - W_L) - a(W_R - W_R*) + (dm_L+dm_R)/2 {.} E_2,
/// with G(W) = (-u, pi, a^2 u, 0). Components ordered (tau, u, pi, z).
std::array<double, 4> integral_consistency_residual(const RiemannInput& in, const RiemannFan& fan);

/// Same residual, each component divided by the largest magnitude among the terms it
/// sums and the a-scaled states those terms are differences of.
std::array<double, 4> integral_consistency_relative(const RiemannInput& in, const RiemannFan& fan);

/// Riemann-invariant residuals: pi + a u and u - a tau across the -a wave,
/// pi - a u and u + a tau across the +a wave. Relative to the invariant's magnitude.
struct InvariantResiduals {
    double minus_pi = 0.0;
    double minus_tau = 0.0;
    double plus_pi = 0.0;
    double plus_tau = 0.0;

    double max() const noexcept;
};
InvariantResiduals check_riemann_invariants(const RiemannInput& in, const RiemannFan& fan);

}  // namespace swlp
