#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "swlp/boundary.hpp"
#include "swlp/mesh_state.hpp"

namespace swlp {

/// Moving-water equilibrium hu = K1, u^2/2 + g (h + z) = K2.
struct EquilibriumSpec {
    enum class Branch { Subcritical, Supercritical };

    double K1 = 0.0;
    double K2 = 0.0;
    Branch branch = Branch::Subcritical;
};

/// (K1^2 / g)^(1/3).
double critical_depth(double K1, double g);

/// Depth solving K1^2/(2 h^2) + g (h + z) = K2 on the requested branch by
/// bracketed Newton iterations. Throws std::domain_error when the branch has no root.
double equilibrium_depth(const EquilibriumSpec& spec, double z, double g);

/// Initial/boundary data of one benchmark.
struct Scenario {
    std::string name;
    std::string description;
    GridSpec grid;
    std::function<double(double)> z_function;
    /// (h, hu) at position x over bottom z.
    std::function<std::pair<double, double>(double x, double z)> initial;
    BoundaryPolicy bc;
    double g = 9.81;
    double t_end = 0.0;
    double cfl_factor = 0.5;
    std::optional<double> dt_limit_factor;

    /// Grid with the scenario's resolution, or `n_cells` when given.
    Grid1D make_grid(std::optional<std::size_t> n_cells = {}) const;
    /// Throws PositivityError if some sampled depth is not positive.
    FlowState initial_state(const Grid1D& grid) const;
};

/// dam_break, perturbation, bump_fluvial, bump_transcritical_noshock,
/// bump_transcritical_shock, nonunique_riemann, lake_at_rest.
std::vector<std::string> scenario_names();

/// `g` replaces the scenario's gravity; equilibrium-based data is rebuilt with it.
/// Throws ConfigError for an unknown name.
Scenario build_scenario(std::string_view name, std::optional<double> g = {});

/// Regularised two-step bottom of the dam-break benchmark.
double dam_break_topography(double x);

}  // namespace swlp
