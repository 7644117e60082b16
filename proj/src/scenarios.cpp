#include "swlp/scenarios.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "swlp/errors.hpp"

namespace swlp {

double critical_depth(double K1, double g) { return std::cbrt(K1 * K1 / g); }

namespace {

double bernoulli_residual(double h, double K1, double K2, double z, double g) {
    return K1 * K1 / (2.0 * h * h) + g * (h + z) - K2;
}

// Newton on a convex, monotone bracket [lo, hi]; falls back to bisection when
// the iterate leaves the bracket.
double bracketed_newton(double lo, double hi, double start, double K1, double K2, double z, double g) {
    double f_lo = bernoulli_residual(lo, K1, K2, z, g);
    double h = start;
    for (int it = 0; it < 200; ++it) {
        const double f = bernoulli_residual(h, K1, K2, z, g);
        if (f == 0.0) return h;
        if ((f > 0.0) == (f_lo > 0.0)) {
            lo = h;
            f_lo = f;
        } else {
            hi = h;
        }
        const double df = g - K1 * K1 / (h * h * h);
        double next = h - f / df;
        if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
        if (std::abs(next - h) <= 2.0 * std::numeric_limits<double>::epsilon() * h) return next;
        h = next;
    }
    return h;
}

}  // namespace

double equilibrium_depth(const EquilibriumSpec& spec, double z, double g) {
    const double K1 = std::abs(spec.K1);
    const double head = spec.K2 - g * z;
    const bool sub = spec.branch == EquilibriumSpec::Branch::Subcritical;
    if (!(g > 0.0)) throw std::domain_error("equilibrium_depth: g must be positive");
    if (!(head > 0.0)) {
        throw std::domain_error(fmt::format("equilibrium_depth: K2 - g z = {} is not positive (z = {})", head, z));
    }
    if (K1 == 0.0) {
        if (!sub) throw std::domain_error("equilibrium_depth: no supercritical state at rest");
        return head / g;
    }
    const double hc = critical_depth(K1, g);
    const double f_c = bernoulli_residual(hc, K1, spec.K2, z, g);
    const double slack = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(spec.K2);
    if (f_c > slack) {
        throw std::domain_error(fmt::format(
            "equilibrium_depth: no real root, K2 = {} below the critical head {} at z = {} (K1 = {})", spec.K2,
            1.5 * std::cbrt(K1 * K1 * g * g) + g * z, z, K1));
    }
    if (f_c >= -slack) return hc;
    if (sub) {
        const double hi = head / g;
        return bracketed_newton(hc, hi, hi, K1, spec.K2, z, g);
    }
    const double lo = K1 / std::sqrt(2.0 * head);
    return bracketed_newton(lo, hc, lo, K1, spec.K2, z, g);
}

Grid1D Scenario::make_grid(std::optional<std::size_t> n_cells) const {
    GridSpec spec = grid;
    if (n_cells) spec.n_cells = *n_cells;
    return sample_topography(spec, z_function);
}

FlowState Scenario::initial_state(const Grid1D& g_) const {
    FlowState s;
    s.h.resize(g_.size());
    s.hu.resize(g_.size());
    for (std::size_t j = 0; j < g_.size(); ++j) {
        const auto [h, hu] = initial(g_.cell_centers[j], g_.z[j]);
        s.h[j] = h;
        s.hu[j] = hu;
    }
    require_admissible(s);
    return s;
}

double dam_break_topography(double x) {
    if (x > 487.5 && x <= 562.5) return 4.0 * std::exp(2.0 - 150.0 / (x - 487.5));
    if (x > 562.5 && x <= 637.5) return 8.0 - 4.0 * std::exp(2.0 - 150.0 / (637.5 - x));
    if (x > 637.5 && x <= 862.5) return 8.0;
    if (x > 862.5 && x <= 937.5) return 8.0 - 4.0 * std::exp(2.0 - 150.0 / (x - 862.5));
    if (x > 937.5 && x <= 1012.5) return 4.0 * std::exp(2.0 - 150.0 / (1012.5 - x));
    return 0.0;
}

namespace {

using std::numbers::pi;

double perturbation_topography(double x) {
    if (x > 1.4 && x < 1.6) return 2.0 + 0.25 * (std::cos(10.0 * pi * (x - 0.5)) + 1.0);
    return 2.0;
}

double bump_topography(double x) {
    if (x >= 1.9 && x <= 2.1) return 0.25 * (std::cos(10.0 * pi * (x - 1.0)) + 1.0);
    return 0.0;
}

double shock_topography(double x) {
    if (x > 8.0 && x < 12.0) return 3.0 - 0.005 * (x - 10.0) * (x - 10.0);
    return 2.8;
}

Scenario dam_break(double g) {
    Scenario s;
    s.name = "dam_break";
    s.description = "dam break over a regularised two-step bottom";
    s.grid = {0.0, 1500.0, 1500};
    s.z_function = dam_break_topography;
    s.initial = [](double x, double) { return std::pair{x <= 750.0 ? 20.0 : 15.0, 0.0}; };
    s.g = g;
    s.t_end = 50.0;
    return s;
}

Scenario perturbation(double g) {
    Scenario s;
    s.name = "perturbation";
    s.description = "small surface perturbation of a lake at rest";
    s.grid = {0.0, 2.0, 1000};
    s.z_function = perturbation_topography;
    s.initial = [](double x, double z) {
        const double dh = (x > 1.1 && x < 1.2) ? 0.001 : 0.0;
        return std::pair{3.0 - z + dh, 0.0};
    };
    s.g = g;
    s.t_end = 0.2;
    s.cfl_factor = 0.9;
    s.dt_limit_factor = 10.0;
    return s;
}

Scenario lake_at_rest(double g) {
    Scenario s;
    s.name = "lake_at_rest";
    s.description = "flat free surface over the perturbation bottom";
    s.grid = {0.0, 2.0, 500};
    s.z_function = perturbation_topography;
    s.initial = [](double, double z) { return std::pair{3.0 - z, 0.0}; };
    s.g = g;
    s.t_end = 0.2;
    return s;
}

Scenario bump(double g, std::string name, std::string description, EquilibriumSpec eq, double t_end) {
    Scenario s;
    s.name = std::move(name);
    s.description = std::move(description);
    s.grid = {0.0, 4.0, 1600};
    s.z_function = bump_topography;
    s.initial = [eq, g](double, double z) { return std::pair{equilibrium_depth(eq, z, g), 0.0}; };
    s.bc.left = BoundarySide::discharge(eq.K1);
    s.bc.right = BoundarySide::depth(equilibrium_depth(eq, bump_topography(4.0), g));
    s.g = g;
    s.t_end = t_end;
    s.cfl_factor = 0.5;
    return s;
}

Scenario transcritical_shock(double g) {
    Scenario s;
    s.name = "bump_transcritical_shock";
    s.description = "transcritical flow over a parabolic bump with a hydraulic jump";
    s.grid = {0.0, 25.0, 1600};
    s.z_function = shock_topography;
    s.initial = [](double, double z) { return std::pair{3.13 - z, 0.18}; };
    s.bc.left = BoundarySide::discharge(0.18);
    s.bc.right = BoundarySide::depth(0.33);
    s.g = g;
    s.t_end = 200.0;
    s.cfl_factor = 0.9;
    return s;
}

Scenario nonunique_riemann(double g) {
    Scenario s;
    s.name = "nonunique_riemann";
    s.description = "Riemann problem across a bottom step with several entropy solutions";
    s.grid = {0.0, 1.0, 300};
    s.z_function = [](double x) { return x <= 0.5 ? 1.5 : 1.1; };
    s.initial = [](double x, double) {
        const double h = x <= 0.5 ? 1.3 : 0.1;
        return std::pair{h, -2.0 * h};
    };
    s.g = g;
    s.t_end = 0.1;
    s.cfl_factor = 0.9;
    s.dt_limit_factor = 3.0;
    return s;
}

}  // namespace

std::vector<std::string> scenario_names() {
    return {"dam_break",
            "perturbation",
            "bump_fluvial",
            "bump_transcritical_noshock",
            "bump_transcritical_shock",
            "nonunique_riemann",
            "lake_at_rest"};
}

Scenario build_scenario(std::string_view name, std::optional<double> g_override) {
    if (g_override && !(*g_override > 0.0)) {
        throw ConfigError(fmt::format("g must be positive, got {}", *g_override));
    }
    const double g = g_override.value_or(9.81);
    try {
        if (name == "dam_break") return dam_break(g);
        if (name == "perturbation") return perturbation(g);
        if (name == "lake_at_rest") return lake_at_rest(g);
        if (name == "bump_fluvial") {
            return bump(g, "bump_fluvial", "subcritical flow over a bump, started at rest",
                        {1.0, 25.0, EquilibriumSpec::Branch::Subcritical}, 200.0);
        }
        if (name == "bump_transcritical_noshock") {
            const double K1 = 3.0;
            const double K2 = 1.5 * std::cbrt(K1 * K1 * g * g) + g / 2.0;
            return bump(g, "bump_transcritical_noshock", "transcritical flow over a bump without a shock",
                        {K1, K2, EquilibriumSpec::Branch::Subcritical}, 10.0);
        }
        if (name == "bump_transcritical_shock") return transcritical_shock(g);
        if (name == "nonunique_riemann") return nonunique_riemann(g_override.value_or(2.0));
    } catch (const std::domain_error& e) {
        throw ConfigError(fmt::format("scenario {}: {}", name, e.what()));
    }
    throw ConfigError(fmt::format("unknown scenario '{}'", name));
}

}  // namespace swlp
