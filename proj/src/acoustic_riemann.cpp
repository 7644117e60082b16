#include "swlp/acoustic_riemann.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "swlp/errors.hpp"

namespace swlp {

double topography_jump(double h_left, double h_right, double z_left, double z_right, double g) {
    return g * ((h_left + h_right) / 2.0) * (z_right - z_left);
}

RiemannFan solve_interface(const RiemannInput& in) {
    const auto& L = in.left;
    const auto& R = in.right;
    const double a = in.a;
    const double du = R.u - L.u;
    const double dpi = R.pi - L.pi;
    const double h_left = 1.0 / L.tau;
    const double h_right = 1.0 / R.tau;

    RiemannFan fan;
    fan.m_jump = topography_jump(h_left, h_right, L.z, R.z, in.g);
    fan.u_star = interface_velocity(L.u, R.u, L.pi, R.pi, a, fan.m_jump);
    fan.pi_star = interface_pressure(L.u, R.u, L.pi, R.pi, a);
    fan.pi_left_star = fan.pi_star + fan.m_jump / 2.0;
    fan.pi_right_star = fan.pi_star - fan.m_jump / 2.0;
    fan.tau_left_star = L.tau + du / (2.0 * a) - dpi / (2.0 * a * a) - fan.m_jump / (2.0 * a * a);
    fan.tau_right_star = R.tau + du / (2.0 * a) + dpi / (2.0 * a * a) + fan.m_jump / (2.0 * a * a);
    fan.source_bracket = in.g * ((h_left + h_right) / 2.0) * 2.0 * (R.z - L.z) / (in.dm_left + in.dm_right);

    for (double v : {fan.tau_left_star, fan.tau_right_star, fan.u_star, fan.pi_star, fan.pi_left_star,
                     fan.pi_right_star, fan.m_jump, fan.source_bracket}) {
        if (!std::isfinite(v)) throw StepFailure("approximate Riemann solver produced a non-finite state");
    }
    return fan;
}

namespace {

// Each component as the list of terms it sums, so the residual can be scaled.
std::array<std::array<double, 5>, 4> consistency_terms(const RiemannInput& in, const RiemannFan& fan) {
    const auto& L = in.left;
    const auto& R = in.right;
    const double a = in.a;
    const double source = 0.5 * (in.dm_left + in.dm_right) * fan.source_bracket;
    return {{
        {-R.u, L.u, a * (fan.tau_left_star - L.tau), -a * (R.tau - fan.tau_right_star), 0.0},
        {R.pi, -L.pi, a * (fan.u_star - L.u), -a * (R.u - fan.u_star), source},
        {a * a * R.u, -a * a * L.u, a * (fan.pi_left_star - L.pi), -a * (R.pi - fan.pi_right_star), 0.0},
        {0.0, 0.0, a * (L.z - L.z), -a * (R.z - R.z), 0.0},
    }};
}

// Magnitudes of the operands behind the a (W* - W) differences; a difference
// of two large states cannot be resolved better than these.
std::array<double, 4> operand_scales(const RiemannInput& in, const RiemannFan& fan) {
    const auto& L = in.left;
    const auto& R = in.right;
    const double a = in.a;
    return {
        a * std::max({std::abs(L.tau), std::abs(R.tau), std::abs(fan.tau_left_star), std::abs(fan.tau_right_star)}),
        a * std::max({std::abs(L.u), std::abs(R.u), std::abs(fan.u_star)}),
        a * std::max({std::abs(L.pi), std::abs(R.pi), std::abs(fan.pi_left_star), std::abs(fan.pi_right_star)}),
        a * std::max(std::abs(L.z), std::abs(R.z)),
    };
}

double relative(double residual, double scale) { return scale > 0.0 ? std::abs(residual) / scale : std::abs(residual); }

}  // namespace

std::array<double, 4> integral_consistency_residual(const RiemannInput& in, const RiemannFan& fan) {
    const auto terms = consistency_terms(in, fan);
    std::array<double, 4> r{};
    for (std::size_t c = 0; c < 4; ++c) {
        for (double t : terms[c]) r[c] += t;
    }
    return r;
}

std::array<double, 4> integral_consistency_relative(const RiemannInput& in, const RiemannFan& fan) {
    const auto terms = consistency_terms(in, fan);
    const auto operands = operand_scales(in, fan);
    std::array<double, 4> r{};
    for (std::size_t c = 0; c < 4; ++c) {
        double sum = 0.0;
        double scale = operands[c];
        for (double t : terms[c]) {
            sum += t;
            scale = std::max(scale, std::abs(t));
        }
        r[c] = relative(sum, scale);
    }
    return r;
}

double InvariantResiduals::max() const noexcept { return std::max({minus_pi, minus_tau, plus_pi, plus_tau}); }

InvariantResiduals check_riemann_invariants(const RiemannInput& in, const RiemannFan& fan) {
    const auto& L = in.left;
    const auto& R = in.right;
    const double a = in.a;
    auto rel = [](double lhs, double rhs, std::initializer_list<double> parts) {
        double scale = 0.0;
        for (double p : parts) scale = std::max(scale, std::abs(p));
        return relative(lhs - rhs, scale);
    };
    InvariantResiduals r;
    r.minus_pi = rel(fan.pi_left_star + a * fan.u_star, L.pi + a * L.u,
                     {fan.pi_left_star, a * fan.u_star, L.pi, a * L.u});
    r.minus_tau = rel(fan.u_star - a * fan.tau_left_star, L.u - a * L.tau,
                      {fan.u_star, a * fan.tau_left_star, L.u, a * L.tau});
    r.plus_pi = rel(fan.pi_right_star - a * fan.u_star, R.pi - a * R.u,
                    {fan.pi_right_star, a * fan.u_star, R.pi, a * R.u});
    r.plus_tau = rel(fan.u_star + a * fan.tau_right_star, R.u + a * R.tau,
                     {fan.u_star, a * fan.tau_right_star, R.u, a * R.tau});
    return r;
}

}  // namespace swlp
