#include "swlp/mesh_state.hpp"

#include <cmath>

#include <fmt/format.h>

#include "swlp/boundary.hpp"
#include "swlp/errors.hpp"

namespace swlp {

Grid1D sample_topography(const GridSpec& spec, const std::function<double(double)>& z_function) {
    if (spec.n_cells == 0) throw ConfigError("grid needs at least one cell");
    if (!(spec.x_max > spec.x_min)) {
        throw ConfigError(fmt::format("empty domain [{}, {}]", spec.x_min, spec.x_max));
    }
    Grid1D grid;
    grid.x_min = spec.x_min;
    grid.x_max = spec.x_max;
    grid.n_cells = spec.n_cells;
    grid.dx = (spec.x_max - spec.x_min) / static_cast<double>(spec.n_cells);
    grid.cell_centers.resize(spec.n_cells);
    grid.z.resize(spec.n_cells);
    for (std::size_t j = 0; j < spec.n_cells; ++j) {
        const double x = spec.x_min + (static_cast<double>(j) + 0.5) * grid.dx;
        grid.cell_centers[j] = x;
        const double zj = z_function ? z_function(x) : 0.0;
        if (!std::isfinite(zj)) throw ConfigError(fmt::format("topography not finite at x = {}", x));
        grid.z[j] = zj;
    }
    return grid;
}

void require_admissible(const FlowState& state) {
    if (state.h.size() != state.hu.size()) throw StepFailure("h and hu have different lengths");
    for (std::size_t j = 0; j < state.h.size(); ++j) {
        if (!(state.h[j] > 0.0) || !std::isfinite(state.h[j])) {
            throw PositivityError(fmt::format("non-positive depth h = {} in cell {}", state.h[j], j), j);
        }
        if (!std::isfinite(state.hu[j])) throw StepFailure(fmt::format("non-finite discharge in cell {}", j));
    }
}

RelaxedState primitives_from_conserved(const FlowState& state, std::span<const double> z, double g) {
    require_admissible(state);
    const std::size_t n = state.size();
    RelaxedState r;
    r.tau.resize(n);
    r.u.resize(n);
    r.pi.resize(n);
    r.z.assign(z.begin(), z.end());
    for (std::size_t j = 0; j < n; ++j) {
        const double h = state.h[j];
        r.tau[j] = 1.0 / h;
        r.u[j] = state.hu[j] / h;
        r.pi[j] = 0.5 * g * h * h;
    }
    return r;
}

FlowState conserved_from_primitives(const RelaxedState& relaxed, double time) {
    FlowState s;
    s.time = time;
    s.h.resize(relaxed.size());
    s.hu.resize(relaxed.size());
    for (std::size_t j = 0; j < relaxed.size(); ++j) {
        s.h[j] = 1.0 / relaxed.tau[j];
        s.hu[j] = relaxed.u[j] / relaxed.tau[j];
    }
    return s;
}

MassIncrements mass_increments(const FlowState& state, const Grid1D& grid, const BoundaryPolicy& bc) {
    require_admissible(state);
    const auto ext = extend_with_ghosts(state.h, state.hu, grid.z, bc);
    const std::size_t n = state.size();
    MassIncrements m;
    m.dm.resize(n);
    for (std::size_t j = 0; j < n; ++j) m.dm[j] = grid.dx * state.h[j];
    m.dm_half.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) m.dm_half[k] = 0.5 * (grid.dx * ext.h[k] + grid.dx * ext.h[k + 1]);
    return m;
}

MassIncrements mass_increments(const FlowState& state, const Grid1D& grid) {
    return mass_increments(state, grid, BoundaryPolicy::neumann());
}

double total_mass(const FlowState& state, double dx) {
    double s = 0.0;
    for (double h : state.h) s += h;
    return s * dx;
}

double total_momentum(const FlowState& state, double dx) {
    double s = 0.0;
    for (double q : state.hu) s += q;
    return s * dx;
}

}  // namespace swlp
