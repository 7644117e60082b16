#include "swlp/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "swlp/errors.hpp"
#include "swlp/transport_projection.hpp"

namespace swlp {

double entropy(double h, double hu, double g) noexcept { return hu * hu / (2.0 * h) + 0.5 * g * h * h; }

double entropy_tolerance(const FlowState& state, double g) {
    double h_max = 0.0;
    double c_max = 0.0;
    for (std::size_t j = 0; j < state.size(); ++j) {
        const double h = state.h[j];
        h_max = std::max(h_max, h);
        c_max = std::max(c_max, std::sqrt(g * h) + std::abs(state.hu[j] / h));
    }
    return 1e-10 * g * h_max * h_max * c_max;
}

std::vector<double> bracket_free_velocity(const AcousticStepOutput& acoustic, const InterfaceSpeeds& speeds) {
    std::vector<double> u(acoustic.u_star.size());
    for (std::size_t k = 0; k < u.size(); ++k) u[k] = acoustic.u_star[k] + acoustic.m_jump[k] / (2.0 * speeds.a[k]);
    return u;
}

namespace {

double uniform_speed(const InterfaceSpeeds& speeds) {
    if (speeds.a.empty() || !speeds.is_uniform()) {
        throw AuditUnavailable("entropy audit needs a single relaxation speed (global mode)");
    }
    return speeds.a.front();
}

// Ghosted (u, pi) at t^{n+1-}, with the ghost values the acoustic fluxes used.
void ghosted_minus(const AcousticStepOutput& ac, std::vector<double>& u, std::vector<double>& pi) {
    const auto& s = ac.state_minus;
    u.clear();
    pi.clear();
    u.push_back(ac.ghost_left.u);
    pi.push_back(ac.ghost_left.pi);
    u.insert(u.end(), s.u.begin(), s.u.end());
    pi.insert(pi.end(), s.pi.begin(), s.pi.end());
    u.push_back(ac.ghost_right.u);
    pi.push_back(ac.ghost_right.pi);
}

}  // namespace

AuxEntropyQuantities aux_entropy_quantities(const StepData& step) {
    const double a = uniform_speed(step.speeds);
    const auto& ac = step.acoustic;
    const auto& in = step.acoustic_inputs;
    const std::size_t n = ac.state_minus.size();

    std::vector<double> u, pi;
    ghosted_minus(ac, u, pi);

    AuxEntropyQuantities aux;
    aux.a = a;
    aux.eta.resize(n);
    aux.I_before.resize(n);
    aux.I_after.resize(n);
    aux.energy.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double wp = pi[j + 1] + a * u[j + 1];
        const double wm = pi[j + 1] - a * u[j + 1];
        aux.eta[j] = 0.5 * (wm * wm + wp * wp);
        aux.I_before[j] = in.pi[j + 1] + a * a * in.tau[j + 1];
        aux.I_after[j] = ac.state_minus.pi[j] + a * a * ac.state_minus.tau[j];
        const double tau = ac.state_minus.tau[j];
        aux.energy[j] = 0.5 * ac.state_minus.u[j] * ac.state_minus.u[j] + in.g / (2.0 * tau);
    }
    aux.q.resize(n + 1);
    const auto ut = bracket_free_velocity(ac, step.speeds);
    aux.pi_u_tilde.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double wp = pi[k] + a * u[k];
        const double wm = pi[k + 1] - a * u[k + 1];
        aux.q[k] = (wp * wp - wm * wm) / (4.0 * a);
        aux.pi_u_tilde[k] = ac.pi_star[k] * ut[k];
    }
    return aux;
}

EntropyAudit entropy_audit(const StepData& step) {
    const double a = uniform_speed(step.speeds);
    const auto& ac = step.acoustic;
    const auto& grid = step.grid;
    const double g = step.config.g;
    const double dt = step.dt;
    const std::size_t n = step.before.size();

    EntropyAudit audit;
    audit.tolerance = entropy_tolerance(step.before, g);
    audit.entropy_before.resize(n);
    audit.entropy_after.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        audit.entropy_before[j] = entropy(step.before.h[j], step.before.hu[j], g);
        audit.entropy_after[j] = entropy(step.after.h[j], step.after.hu[j], g);
    }

    // Lagrangian entropy flux pi* u~* plus the upwind transport of U at t^{n+1-}.
    const FlowState minus = ac.conserved_minus(step.before.time);
    const auto ext = extend_with_ghosts(minus.h, minus.hu, grid.z, step.config.bc);
    const auto ut = bracket_free_velocity(ac, step.speeds);
    audit.flux.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double us = ac.u_star[k];
        const double U_up = us >= 0.0 ? entropy(ext.h[k], ext.hu[k], g) : entropy(ext.h[k + 1], ext.hu[k + 1], g);
        audit.flux[k] = ac.pi_star[k] * ut[k] + us * U_up;
    }

    audit.source.resize(n);
    audit.residual.resize(n);
    audit.max_residual = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        const double wp = ac.state_minus.pi[j] + a * ac.state_minus.u[j];
        const double wm = ac.state_minus.pi[j] - a * ac.state_minus.u[j];
        // m_jump already carries g (h_avg) dz
        audit.source[j] = (ac.m_jump[j] * wp - ac.m_jump[j + 1] * wm) / (2.0 * a * grid.dx * g);
        audit.residual[j] = (audit.entropy_after[j] - audit.entropy_before[j]) / dt +
                            (audit.flux[j + 1] - audit.flux[j]) / grid.dx + g * audit.source[j];
        if (audit.residual[j] > audit.max_residual) {
            audit.max_residual = audit.residual[j];
            audit.worst_cell = j;
        }
    }
    return audit;
}

WellBalancedResidual wellbalanced_residual(const FlowState& state, const Grid1D& grid) {
    WellBalancedResidual r;
    if (state.size() == 0) return r;
    double s_min = std::numeric_limits<double>::infinity();
    double s_max = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < state.size(); ++j) {
        r.max_abs_u = std::max(r.max_abs_u, std::abs(state.hu[j] / state.h[j]));
        const double s = state.h[j] + grid.z[j];
        s_min = std::min(s_min, s);
        s_max = std::max(s_max, s);
    }
    r.surface_variation = s_max - s_min;
    return r;
}

ConservationReport conservation_ledger(const FlowState& initial, double dx, std::span<const StepRecord> records) {
    ConservationReport rep;
    rep.mass_initial = total_mass(initial, dx);
    rep.momentum_initial = total_momentum(initial, dx);
    rep.mass_final = rep.mass_initial;
    rep.momentum_final = rep.momentum_initial;

    double p_scale = std::abs(rep.momentum_initial);
    for (const auto& r : records) p_scale = std::max(p_scale, std::abs(r.total_momentum));

    double m_prev = rep.mass_initial;
    double p_prev = rep.momentum_initial;
    for (const auto& r : records) {
        const double dm_in = r.mass_flux_left - r.mass_flux_right;
        const double dp_in = r.momentum_flux_left - r.momentum_flux_right;
        rep.net_mass_boundary += dm_in;
        rep.net_momentum_boundary += dp_in;
        rep.net_momentum_source += r.momentum_source;
        rep.max_mass_imbalance =
            std::max(rep.max_mass_imbalance, std::abs(r.total_mass - m_prev - dm_in) / rep.mass_initial);
        // pressure and source terms can dwarf the momentum itself (lake at rest)
        const double step_scale = std::max({p_scale, std::abs(r.momentum_flux_left), std::abs(r.momentum_flux_right),
                                            std::abs(r.momentum_source)});
        const double p_gap = std::abs(r.total_momentum - p_prev - dp_in - r.momentum_source);
        if (p_gap > 0.0) rep.max_momentum_imbalance = std::max(rep.max_momentum_imbalance, p_gap / step_scale);
        m_prev = r.total_mass;
        p_prev = r.total_momentum;
    }
    rep.mass_final = m_prev;
    rep.momentum_final = p_prev;
    rep.mass_drift = std::abs(rep.mass_final - rep.mass_initial) / rep.mass_initial;
    rep.momentum_drift = std::abs(rep.momentum_final - rep.momentum_initial) / (p_scale > 0.0 ? p_scale : 1.0);
    return rep;
}

void EntropyObserver::on_step(StepData& data) {
    const auto audit = entropy_audit(data);
    data.record.max_entropy_residual = audit.max_residual;
    ++steps_;
    max_residual_ = std::max(max_residual_, audit.max_residual);
    if (audit.tolerance > 0.0) max_ratio_ = std::max(max_ratio_, audit.max_residual / audit.tolerance);
    if (!audit.passes()) ++failures_;
}

void PositivityObserver::on_start(const Grid1D& /*grid*/, const FlowState& state) {
    for (double h : state.h) min_h_ = std::min(min_h_, h);
}

void PositivityObserver::on_step(StepData& data) {
    for (double h : data.after.h) min_h_ = std::min(min_h_, h);
}

}  // namespace swlp
