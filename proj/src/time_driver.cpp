#include "swlp/time_driver.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "swlp/errors.hpp"
#include "swlp/transport_projection.hpp"

namespace swlp {

namespace {
constexpr std::array<Scheme, 4> kSchemes{Scheme::ExExLoc, Scheme::ExExGlob, Scheme::ImExLoc, Scheme::ImExGlob};
}

bool is_implicit(Scheme s) noexcept { return s == Scheme::ImExLoc || s == Scheme::ImExGlob; }

RelaxSpeedPolicy::Mode speed_mode(Scheme s) noexcept {
    return (s == Scheme::ExExLoc || s == Scheme::ImExLoc) ? RelaxSpeedPolicy::Mode::Local
                                                          : RelaxSpeedPolicy::Mode::Global;
}

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::ExExLoc: return "exex-loc";
        case Scheme::ExExGlob: return "exex-glob";
        case Scheme::ImExLoc: return "imex-loc";
        case Scheme::ImExGlob: return "imex-glob";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name) {
    for (Scheme s : kSchemes) {
        if (to_string(s) == name) return s;
    }
    throw ConfigError(fmt::format("unknown scheme '{}' (expected exex-loc, exex-glob, imex-loc or imex-glob)", name));
}

std::span<const Scheme> all_schemes() noexcept { return kSchemes; }

void SchemeConfig::validate() const {
    if (!(cfl_factor > 0.0 && cfl_factor <= 1.0)) {
        throw ConfigError(fmt::format("cfl factor must lie in (0, 1], got {}", cfl_factor));
    }
    if (dt_limit_factor && !(*dt_limit_factor > 0.0)) {
        throw ConfigError(fmt::format("dt limit factor must be positive, got {}", *dt_limit_factor));
    }
    if (!(kappa >= 1.0) || !std::isfinite(kappa)) {
        throw ConfigError(fmt::format("kappa must be at least 1, got {}", kappa));
    }
    if (!(g > 0.0) || !std::isfinite(g)) throw ConfigError(fmt::format("g must be positive, got {}", g));
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
        throw ConfigError(fmt::format("t_end must be finite and non-negative, got {}", t_end));
    }
    if (max_halvings < 0) throw ConfigError("max_halvings must be non-negative");
    bc.validate();
}

DtChoice practical_dt(const FlowState& state, std::span<const double> u_star, const Grid1D& grid,
                      const SchemeConfig& config, double acoustic_dt) {
    double max_u = 0.0;
    for (double u : u_star) max_u = std::max(max_u, std::abs(u));
    double max_c = 0.0;
    for (double h : state.h) max_c = std::max(max_c, std::sqrt(config.g * h));

    DtChoice choice;
    choice.dt_explicit = config.cfl_factor * grid.dx / std::max(max_c, max_u);
    if (is_implicit(config.variant)) {
        if (max_u > 0.0) {
            choice.dt_implicit = config.cfl_factor * grid.dx / max_u;
            choice.dt = choice.dt_implicit;
        } else {
            choice.implicit_fallback = true;
            choice.dt = choice.dt_explicit;
        }
        if (config.dt_limit_factor) choice.dt = std::min(choice.dt, *config.dt_limit_factor * choice.dt_explicit);
    } else {
        choice.dt = choice.dt_explicit;
        // the explicit acoustic update is only stable below its own CFL bound
        if (acoustic_dt < choice.dt) {
            choice.dt = acoustic_dt;
            choice.acoustic_clamped = true;
        }
    }
    choice.dt = std::min(choice.dt, transport_cfl_dt(u_star, grid.dx));
    if (config.t_end > state.time) choice.dt = std::min(choice.dt, config.t_end - state.time);
    return choice;
}

namespace {

StepResult advance_capped(const Grid1D& grid, const FlowState& state, const SchemeConfig& config,
                          std::span<StepObserver* const> observers, double t_cap, std::size_t step_index) {
    require_admissible(state);
    const auto ext = extend_with_ghosts(state.h, state.hu, grid.z, config.bc);
    const RelaxSpeedPolicy policy{speed_mode(config.variant), config.kappa};
    const auto speeds = compute_interface_speeds(ext, policy, config.g);
    const auto inputs = prepare_acoustic_inputs(ext, grid.dx, config.g);
    const auto pre = explicit_interface_fluxes(inputs, speeds);

    const double acoustic_dt = is_implicit(config.variant) ? std::numeric_limits<double>::infinity()
                                                           : acoustic_cfl_dt(state, grid, speeds);
    const DtChoice choice = practical_dt(state, pre.u_star, grid, config, acoustic_dt);
    double dt = choice.dt;
    bool lands_on_cap = false;
    if (state.time + dt >= t_cap) {
        dt = t_cap - state.time;
        lands_on_cap = true;
    }
    if (!(dt > 0.0)) throw StepFailure(fmt::format("non-positive time step {} at t = {}", dt, state.time));

    const bool periodic = config.bc.is_periodic();
    const auto backend = speeds.is_uniform() ? ImplicitBackend::Characteristic : ImplicitBackend::Banded;

    int halvings = 0;
    for (;;) {
        try {
            const auto acoustic = is_implicit(config.variant)
                                      ? implicit_acoustic_step(inputs, speeds, dt, periodic, backend)
                                      : explicit_acoustic_step(inputs, speeds, dt);
            const double t_new = lands_on_cap && halvings == 0 ? t_cap : state.time + dt;
            const auto transport_in = make_transport_input(acoustic, t_new);
            FlowState next = transport_step(transport_in, grid, dt, config.bc);
            next.time = t_new;

            StepResult result{std::move(next), {}};
            StepRecord& rec = result.record;
            rec.step = step_index;
            rec.t = t_new;
            rec.dt = dt;
            rec.dt_explicit_formula = choice.dt_explicit;
            rec.dt_implicit_formula = choice.dt_implicit;
            rec.implicit_dt_fallback = choice.implicit_fallback;
            rec.halvings = halvings;
            rec.total_mass = total_mass(result.state, grid.dx);
            rec.total_momentum = total_momentum(result.state, grid.dx);
            rec.min_h = *std::min_element(result.state.h.begin(), result.state.h.end());

            const auto minus_ext =
                extend_with_ghosts(transport_in.state_minus.h, transport_in.state_minus.hu, grid.z, config.bc);
            const auto whitham = check_whitham(speeds, ext, minus_ext, config.g);
            rec.whitham_violations = whitham.violations_before + whitham.violations_after;

            // Boundary ledger of the overall conservative form.
            const std::size_t n = state.size();
            const auto trace_flux = [&](std::size_t k, const std::vector<double>& phi) {
                const double us = acoustic.u_star[k];
                return us * upwind(phi[k], phi[k + 1], us);
            };
            rec.mass_flux_left = dt * trace_flux(0, minus_ext.h);
            rec.mass_flux_right = dt * trace_flux(n, minus_ext.h);
            rec.momentum_flux_left = dt * (acoustic.pi_star[0] + trace_flux(0, minus_ext.hu));
            rec.momentum_flux_right = dt * (acoustic.pi_star[n] + trace_flux(n, minus_ext.hu));
            double src = 0.0;
            for (std::size_t j = 0; j < n; ++j) src += 0.5 * (acoustic.m_jump[j] + acoustic.m_jump[j + 1]);
            rec.momentum_source = -dt * src;

            StepData data{grid, config, dt, state, ext, speeds, inputs, acoustic, result.state, rec};
            for (StepObserver* obs : observers) obs->on_step(data);
            return result;
        } catch (const CflError& e) {
            if (halvings >= config.max_halvings) {
                throw StepFailure(fmt::format("step rejected after {} halvings: {}", halvings, e.what()));
            }
            ++halvings;
            dt *= 0.5;
        }
    }
}

}  // namespace

StepResult advance(const Grid1D& grid, const FlowState& state, const SchemeConfig& config,
                   std::span<StepObserver* const> observers, double max_dt) {
    double cap = state.time + max_dt;
    if (config.t_end > state.time) cap = std::min(cap, config.t_end);
    return advance_capped(grid, state, config, observers, cap, 1);
}

double RunResult::mean_dt() const noexcept {
    if (records.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& r : records) sum += r.dt;
    return sum / static_cast<double>(records.size());
}

RunResult run_to(const Grid1D& grid, FlowState state0, const SchemeConfig& config,
                 std::span<StepObserver* const> observers, std::span<const double> snapshot_times) {
    config.validate();
    require_admissible(state0);
    if (state0.size() != grid.size()) {
        throw ConfigError(fmt::format("state has {} cells, grid has {}", state0.size(), grid.size()));
    }
    std::vector<double> snaps;
    for (double t : snapshot_times) {
        if (t >= state0.time && t <= config.t_end) snaps.push_back(t);
    }
    std::sort(snaps.begin(), snaps.end());
    snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());

    for (StepObserver* obs : observers) obs->on_start(grid, state0);

    RunResult run;
    run.final_state = std::move(state0);
    auto next_snap = snaps.begin();
    bool final_emitted = false;
    const auto emit_due = [&] {
        while (next_snap != snaps.end() && *next_snap <= run.final_state.time) {
            for (StepObserver* obs : observers) obs->on_snapshot(grid, run.final_state);
            if (run.final_state.time >= config.t_end) final_emitted = true;
            ++next_snap;
        }
    };
    emit_due();
    while (run.final_state.time < config.t_end) {
        if (run.records.size() >= config.max_steps) {
            throw StepFailure(fmt::format("step limit {} reached at t = {}", config.max_steps, run.final_state.time));
        }
        double cap = config.t_end;
        if (next_snap != snaps.end()) cap = std::min(cap, *next_snap);
        auto step = advance_capped(grid, run.final_state, config, observers, cap, run.records.size() + 1);
        run.records.push_back(step.record);
        run.final_state = std::move(step.state);
        emit_due();
    }
    if (!final_emitted) {
        for (StepObserver* obs : observers) obs->on_snapshot(grid, run.final_state);
    }
    return run;
}

}  // namespace swlp
