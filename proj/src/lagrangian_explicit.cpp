#include "swlp/lagrangian_explicit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "swlp/errors.hpp"

namespace swlp {

RiemannInput AcousticInputs::riemann_input(std::size_t k, double a) const {
    RiemannInput in;
    in.left = {tau[k], u[k], pi[k], z[k]};
    in.right = {tau[k + 1], u[k + 1], pi[k + 1], z[k + 1]};
    in.a = a;
    in.dm_left = dm[k];
    in.dm_right = dm[k + 1];
    in.g = g;
    return in;
}

AcousticInputs prepare_acoustic_inputs(const GhostedState& ext, double dx, double g) {
    const std::size_t cells = ext.h.size();
    AcousticInputs in;
    in.g = g;
    in.dx = dx;
    in.h = ext.h;
    in.z = ext.z;
    in.tau.resize(cells);
    in.u.resize(cells);
    in.pi.resize(cells);
    in.dm.resize(cells);
    for (std::size_t k = 0; k < cells; ++k) {
        const double h = ext.h[k];
        if (!(h > 0.0) || !std::isfinite(h)) {
            // ghosted index k is cell k - 1; ghosts report the adjacent boundary cell
            const std::size_t cell = k == 0 ? 0 : std::min(k - 1, cells - 3);
            throw PositivityError(fmt::format("non-positive depth h = {} at ghosted index {}", h, k), cell);
        }
        in.tau[k] = 1.0 / h;
        in.u[k] = ext.hu[k] / h;
        in.pi[k] = 0.5 * g * h * h;
        in.dm[k] = dx * h;
    }
    in.dm_half.resize(cells - 1);
    in.m_jump.resize(cells - 1);
    in.bracket.resize(cells - 1);
    for (std::size_t k = 0; k + 1 < cells; ++k) {
        in.dm_half[k] = 0.5 * (in.dm[k] + in.dm[k + 1]);
        in.m_jump[k] = topography_jump(in.h[k], in.h[k + 1], in.z[k], in.z[k + 1], g);
        in.bracket[k] = in.m_jump[k] / in.dm_half[k];
    }
    return in;
}

InterfaceFluxes explicit_interface_fluxes(const AcousticInputs& in, const InterfaceSpeeds& speeds) {
    const std::size_t m = in.n_interfaces();
    InterfaceFluxes f;
    f.u_star.resize(m);
    f.pi_star.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double a = speeds.a[k];
        f.u_star[k] = interface_velocity(in.u[k], in.u[k + 1], in.pi[k], in.pi[k + 1], a, in.m_jump[k]);
        f.pi_star[k] = interface_pressure(in.u[k], in.u[k + 1], in.pi[k], in.pi[k + 1], a);
    }
    return f;
}

FlowState AcousticStepOutput::conserved_minus(double time) const {
    return conserved_from_primitives(state_minus, time);
}

namespace detail {

void finish_acoustic_step(const AcousticInputs& in, AcousticStepOutput& out) {
    const std::size_t n = in.n_cells();
    auto& s = out.state_minus;
    s.tau.resize(n);
    s.z.assign(in.z.begin() + 1, in.z.end() - 1);
    out.L.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double du = out.u_star[j + 1] - out.u_star[j];
        s.tau[j] = in.tau[j + 1] + (out.dt / in.dm[j + 1]) * du;
        out.L[j] = 1.0 + (out.dt / in.dx) * du;
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(s.tau[j]) || !std::isfinite(s.u[j]) || !std::isfinite(s.pi[j]) ||
            !std::isfinite(out.L[j])) {
            throw StepFailure(fmt::format("acoustic step produced non-finite values in cell {}", j));
        }
        if (!(out.L[j] > 0.0) || !(s.tau[j] > 0.0)) {
            throw CflError(fmt::format("acoustic step: L = {} in cell {} (dt = {})", out.L[j], j, out.dt), j);
        }
    }
    out.ghost_left = {in.tau.front(), in.u.front(), in.pi.front(), in.z.front()};
    out.ghost_right = {in.tau.back(), in.u.back(), in.pi.back(), in.z.back()};
}

}  // namespace detail

AcousticStepOutput explicit_acoustic_step(const AcousticInputs& in, const InterfaceSpeeds& speeds, double dt) {
    const std::size_t n = in.n_cells();
    auto fluxes = explicit_interface_fluxes(in, speeds);

    AcousticStepOutput out;
    out.dt = dt;
    out.u_star = std::move(fluxes.u_star);
    out.pi_star = std::move(fluxes.pi_star);
    out.m_jump = in.m_jump;
    out.source_cell.resize(n);
    out.state_minus.u.resize(n);
    out.state_minus.pi.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t e = j + 1;
        const double c = dt / in.dm[e];
        const double a_cell = speeds.cell_speed(j);
        out.source_cell[j] = (out.m_jump[j] + out.m_jump[j + 1]) / (2.0 * in.dm[e]);
        out.state_minus.u[j] = in.u[e] - c * (out.pi_star[j + 1] - out.pi_star[j]) - dt * out.source_cell[j];
        out.state_minus.pi[j] = in.pi[e] - c * a_cell * a_cell * (out.u_star[j + 1] - out.u_star[j]);
    }
    detail::finish_acoustic_step(in, out);
    return out;
}

AcousticStepOutput explicit_acoustic_step(const FlowState& state, const Grid1D& grid, const InterfaceSpeeds& speeds,
                                          double dt, double g, const BoundaryPolicy& bc) {
    require_admissible(state);
    const auto in = prepare_acoustic_inputs(extend_with_ghosts(state.h, state.hu, grid.z, bc), grid.dx, g);
    return explicit_acoustic_step(in, speeds, dt);
}

double acoustic_cfl_dt(const FlowState& state, const Grid1D& grid, const InterfaceSpeeds& speeds) {
    double dt = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < state.size(); ++j) {
        dt = std::min(dt, state.h[j] * grid.dx / (2.0 * speeds.cell_speed(j)));
    }
    return dt;
}

}  // namespace swlp
