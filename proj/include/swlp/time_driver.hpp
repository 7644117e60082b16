#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swlp/boundary.hpp"
#include "swlp/lagrangian_implicit.hpp"
#include "swlp/mesh_state.hpp"
#include "swlp/relaxation.hpp"

namespace swlp {

/// Explicit or implicit acoustic step, combined with a local or global relaxation speed.
enum class Scheme { ExExLoc, ExExGlob, ImExLoc, ImExGlob };

bool is_implicit(Scheme s) noexcept;
RelaxSpeedPolicy::Mode speed_mode(Scheme s) noexcept;
/// "exex-loc", "exex-glob", "imex-loc", "imex-glob".
std::string to_string(Scheme s);
/// Throws ConfigError for an unknown name.
Scheme parse_scheme(std::string_view name);
std::span<const Scheme> all_schemes() noexcept;

struct SchemeConfig {
    Scheme variant = Scheme::ExExLoc;
    double kappa = kDefaultKappa;
    double cfl_factor = 0.5;
    /// When set, implicit time steps are limited to factor times the explicit formula.
    std::optional<double> dt_limit_factor;
    double g = 9.81;
    double t_end = 0.0;
    BoundaryPolicy bc;
    std::size_t max_steps = 10'000'000;
    int max_halvings = 10;

    /// Throws ConfigError.
    void validate() const;
};

struct DtChoice {
    double dt = 0.0;
    double dt_explicit = 0.0;  ///< cfl dx / max(sqrt(g h), |u*|)
    double dt_implicit = std::numeric_limits<double>::infinity();  ///< cfl dx / max |u*|
    bool implicit_fallback = false;  ///< implicit formula degenerate (u* == 0), explicit one used
    bool acoustic_clamped = false;   ///< explicit variants: cut to the acoustic CFL bound
};

/// Practical time step from t^n data. `u_star` are the interface velocities of
/// a pre-pass over the t^n states. Explicit variants are also capped by
/// `acoustic_dt` (see acoustic_cfl_dt). The result is clamped by the transport
/// CFL and by t_end - state.time.
DtChoice practical_dt(const FlowState& state, std::span<const double> u_star, const Grid1D& grid,
                      const SchemeConfig& config, double acoustic_dt = std::numeric_limits<double>::infinity());

struct StepRecord {
    std::size_t step = 0;
    double t = 0.0;  ///< time at the end of the step
    double dt = 0.0;
    double dt_explicit_formula = 0.0;
    double dt_implicit_formula = 0.0;
    double total_mass = 0.0;
    double total_momentum = 0.0;
    double min_h = 0.0;
    double max_entropy_residual = std::numeric_limits<double>::quiet_NaN();
    std::size_t whitham_violations = 0;
    int halvings = 0;
    bool implicit_dt_fallback = false;
    // Time-integrated boundary fluxes (positive towards +x) and the topography
    // source contribution to sum(hu dx) over the step.
    double mass_flux_left = 0.0;
    double mass_flux_right = 0.0;
    double momentum_flux_left = 0.0;
    double momentum_flux_right = 0.0;
    double momentum_source = 0.0;
};

/// Everything a step produced, handed to observers. Audits may fill `record`.
struct StepData {
    const Grid1D& grid;
    const SchemeConfig& config;
    double dt;
    const FlowState& before;
    const GhostedState& before_ext;
    const InterfaceSpeeds& speeds;
    const AcousticInputs& acoustic_inputs;
    const AcousticStepOutput& acoustic;
    const FlowState& after;
    StepRecord& record;
};

class StepObserver {
public:
    virtual ~StepObserver() = default;
    virtual void on_start(const Grid1D& /*grid*/, const FlowState& /*state*/) {}
    virtual void on_step(StepData& /*data*/) {}
    virtual void on_snapshot(const Grid1D& /*grid*/, const FlowState& /*state*/) {}
};

struct StepResult {
    FlowState state;
    StepRecord record;
};

/// One Lagrange-projection step from `state`. `max_dt` further caps the
/// practical time step (used to land on snapshot times).
StepResult advance(const Grid1D& grid, const FlowState& state, const SchemeConfig& config,
                   std::span<StepObserver* const> observers = {},
                   double max_dt = std::numeric_limits<double>::infinity());

struct RunResult {
    FlowState final_state;
    std::vector<StepRecord> records;

    std::size_t steps() const noexcept { return records.size(); }
    double mean_dt() const noexcept;
};

/// Advances until config.t_end exactly. Observers receive every step and a
/// snapshot at each requested time (plus the final state).
/// Throws StepFailure once max_steps is exceeded.
RunResult run_to(const Grid1D& grid, FlowState state0, const SchemeConfig& config,
                 std::span<StepObserver* const> observers = {}, std::span<const double> snapshot_times = {});

}  // namespace swlp
