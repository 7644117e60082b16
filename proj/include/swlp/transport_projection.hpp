#pragma once

#include <span>
#include <vector>

#include "swlp/boundary.hpp"
#include "swlp/lagrangian_explicit.hpp"
#include "swlp/mesh_state.hpp"

namespace swlp {

struct TransportInput {
    FlowState state_minus;        ///< (h, hu) at t^{n+1-}
    std::vector<double> u_star;   ///< same interface velocities as the acoustic step
    std::vector<double> L;
};

TransportInput make_transport_input(const AcousticStepOutput& acoustic, double time);

/// Upwind trace convention: the left value when u* >= 0.
inline double upwind(double left, double right, double u_star) { return u_star >= 0.0 ? left : right; }

/// phi^{n+1} = phi^- L - dt/dx (u*_{j+1/2} phi^-_{j+1/2} - u*_{j-1/2} phi^-_{j-1/2}) for phi in {h, hu}.
/// Ghost traces come from `bc` applied to the t^{n+1-} state.
/// Throws CflError naming the worst cell when the transport CFL does not hold.
FlowState transport_step(const TransportInput& input, const Grid1D& grid, double dt, const BoundaryPolicy& bc);

/// 0.999 dx / max_j((u*_{j-1/2})^+ - (u*_{j+1/2})^-), or +infinity when no cell is constrained.
double transport_cfl_dt(std::span<const double> u_star, double dx);

}  // namespace swlp
