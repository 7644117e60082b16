#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace swlp {

struct BoundaryPolicy;

struct GridSpec {
    double x_min = 0.0;
    double x_max = 1.0;
    std::size_t n_cells = 1;
};

/// Uniform partition of [x_min, x_max] with cell-centred bathymetry.
struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    std::size_t n_cells = 0;
    double dx = 0.0;
    std::vector<double> cell_centers;
    std::vector<double> z;

    std::size_t size() const noexcept { return n_cells; }
};

/// Builds the grid and samples z at the cell centres (midpoint rule).
/// Throws ConfigError on an empty/inverted domain or a non-finite z value.
Grid1D sample_topography(const GridSpec& spec, const std::function<double(double)>& z_function);

/// Conserved variables (h, hu) at a given time.
struct FlowState {
    std::vector<double> h;
    std::vector<double> hu;
    double time = 0.0;

    FlowState() = default;
    FlowState(std::vector<double> depth, std::vector<double> discharge, double t = 0.0)
        : h(std::move(depth)), hu(std::move(discharge)), time(t) {}

    std::size_t size() const noexcept { return h.size(); }
};

/// Lagrangian/relaxation variables used inside the acoustic step.
struct RelaxedState {
    std::vector<double> tau;
    std::vector<double> u;
    std::vector<double> pi;
    std::vector<double> z;

    std::size_t size() const noexcept { return tau.size(); }
};

/// tau = 1/h, u = hu/h and the equilibrium pressure pi = g h^2 / 2.
/// Throws PositivityError naming the first cell with h <= 0.
RelaxedState primitives_from_conserved(const FlowState& state, std::span<const double> z, double g);

/// Inverse map (h, hu) = (1/tau, u/tau).
FlowState conserved_from_primitives(const RelaxedState& relaxed, double time = 0.0);

struct MassIncrements {
    std::vector<double> dm;       ///< dx * h_j, one per cell
    std::vector<double> dm_half;  ///< (dm_j + dm_{j+1}) / 2, one per interface (n_cells + 1)
};

/// Cell and interface mass increments; boundary interfaces use ghost cells
/// filled according to `bc`.
MassIncrements mass_increments(const FlowState& state, const Grid1D& grid, const BoundaryPolicy& bc);
MassIncrements mass_increments(const FlowState& state, const Grid1D& grid);

/// Throws PositivityError if some h_j <= 0 or is not finite, StepFailure if hu_j is not finite.
void require_admissible(const FlowState& state);

double total_mass(const FlowState& state, double dx);
double total_momentum(const FlowState& state, double dx);

}  // namespace swlp
