#pragma once

#include <cstddef>
#include <vector>

#include "swlp/acoustic_riemann.hpp"
#include "swlp/boundary.hpp"
#include "swlp/mesh_state.hpp"
#include "swlp/relaxation.hpp"

namespace swlp {

/// t^n data of the acoustic step on the ghosted layout (n + 2 cells, n + 1 interfaces).
/// pi is reset to equilibrium, g h^2 / 2.
struct AcousticInputs {
    double g = 9.81;
    double dx = 1.0;
    std::vector<double> h, tau, u, pi, z, dm;  // ghosted cells
    std::vector<double> dm_half;               // interfaces
    std::vector<double> m_jump;                // interfaces: g (h_L + h_R)/2 (z_R - z_L)
    std::vector<double> bracket;               // interfaces: {(g/tau) d_m z}_{j+1/2}

    std::size_t n_cells() const noexcept { return h.size() - 2; }
    std::size_t n_interfaces() const noexcept { return h.size() - 1; }
    /// Solver input at interface k (between ghosted cells k and k+1).
    RiemannInput riemann_input(std::size_t k, double a) const;
};

/// Throws PositivityError for a non-positive depth (ghosts included).
AcousticInputs prepare_acoustic_inputs(const GhostedState& ext, double dx, double g);

struct InterfaceFluxes {
    std::vector<double> u_star;
    std::vector<double> pi_star;
};

/// (u*, pi*) of the approximate Riemann solver evaluated on the t^n states.
InterfaceFluxes explicit_interface_fluxes(const AcousticInputs& in, const InterfaceSpeeds& speeds);

/// Result of the Lagrangian step, consumed unchanged by the transport step.
struct AcousticStepOutput {
    RelaxedState state_minus;          ///< cells at t^{n+1-}
    std::vector<double> u_star;        ///< interfaces
    std::vector<double> pi_star;       ///< interfaces
    std::vector<double> m_jump;        ///< interfaces, frozen at t^n
    std::vector<double> L;             ///< cells, 1 + dt/dx (u*_{j+1/2} - u*_{j-1/2})
    std::vector<double> source_cell;   ///< cells, {(g/tau) d_m z}_j at t^n
    RelaxedCell ghost_left;            ///< (u, pi) of the ghosts used by the interface fluxes
    RelaxedCell ghost_right;
    double dt = 0.0;

    /// (h, hu) at t^{n+1-}.
    FlowState conserved_minus(double time) const;
};

/// Godunov update of the relaxed acoustic system with t^n fluxes.
/// The pi update uses max(a_{j-1/2}, a_{j+1/2})^2 per cell.
/// Throws CflError if some L_j <= 0, StepFailure on non-finite output.
AcousticStepOutput explicit_acoustic_step(const AcousticInputs& in, const InterfaceSpeeds& speeds, double dt);
AcousticStepOutput explicit_acoustic_step(const FlowState& state, const Grid1D& grid, const InterfaceSpeeds& speeds,
                                          double dt, double g, const BoundaryPolicy& bc);

/// Largest dt with dt / (h_j dx) <= 1 / (2 a_j), a_j the larger adjacent interface speed.
double acoustic_cfl_dt(const FlowState& state, const Grid1D& grid, const InterfaceSpeeds& speeds);

namespace detail {
/// Shared tail of both acoustic steps: tau update, L_j and finiteness checks.
void finish_acoustic_step(const AcousticInputs& in, AcousticStepOutput& out);
}

}  // namespace swlp
