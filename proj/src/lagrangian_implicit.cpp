#include "swlp/lagrangian_implicit.hpp"

#include <stdexcept>

#include "block_tridiagonal.hpp"
#include "swlp/errors.hpp"

namespace swlp {

CharacteristicVars to_characteristic(std::span<const double> u, std::span<const double> pi, double a) {
    CharacteristicVars w;
    w.a = a;
    w.w_plus.resize(u.size());
    w.w_minus.resize(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        w.w_plus[j] = pi[j] + a * u[j];
        w.w_minus[j] = pi[j] - a * u[j];
    }
    return w;
}

void from_characteristic(const CharacteristicVars& w, std::vector<double>& u, std::vector<double>& pi) {
    const std::size_t n = w.w_plus.size();
    u.resize(n);
    pi.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        u[j] = (w.w_plus[j] - w.w_minus[j]) / (2.0 * w.a);
        pi[j] = (w.w_plus[j] + w.w_minus[j]) / 2.0;
    }
}

BidiagonalSystem assemble_bidiagonal(double a, std::span<const double> dm, double dt, BidiagonalSystem::Side side,
                                     std::span<const double> w_n, std::span<const double> m_jump, double ghost_w,
                                     bool periodic) {
    const std::size_t n = dm.size();
    BidiagonalSystem sys;
    sys.side = side;
    sys.cyclic = periodic;
    sys.diag.resize(n);
    sys.off.resize(n);
    sys.rhs.resize(n);
    const bool lower = side == BidiagonalSystem::Side::Lower;
    for (std::size_t j = 0; j < n; ++j) {
        const double c = a * dt / dm[j];
        sys.diag[j] = 1.0 + c;
        sys.off[j] = -c;
        // w_plus feels the jump at its upstream (left) interface, w_minus at its right one
        sys.rhs[j] = lower ? w_n[j] - c * m_jump[j] : w_n[j] + c * m_jump[j + 1];
    }
    if (!periodic) {
        const std::size_t edge = lower ? 0 : n - 1;
        sys.rhs[edge] -= sys.off[edge] * ghost_w;
        sys.off[edge] = 0.0;
    }
    return sys;
}

std::vector<double> solve_bidiagonal(const BidiagonalSystem& sys) {
    const std::size_t n = sys.diag.size();
    std::vector<double> alpha(n), beta(n, 0.0);
    // w_j = alpha_j + beta_j * X, X being the wrapped unknown (zero weight when not cyclic)
    auto sweep = [&](std::size_t j, std::size_t prev, bool first) {
        if (first) {
            alpha[j] = sys.rhs[j] / sys.diag[j];
            beta[j] = sys.cyclic ? -sys.off[j] / sys.diag[j] : 0.0;
        } else {
            alpha[j] = (sys.rhs[j] - sys.off[j] * alpha[prev]) / sys.diag[j];
            beta[j] = -sys.off[j] * beta[prev] / sys.diag[j];
        }
    };
    std::size_t last;
    if (sys.side == BidiagonalSystem::Side::Lower) {
        for (std::size_t j = 0; j < n; ++j) sweep(j, j - 1, j == 0);
        last = n - 1;
    } else {
        for (std::size_t j = n; j-- > 0;) sweep(j, j + 1, j == n - 1);
        last = 0;
    }
    std::vector<double> w(alpha);
    if (sys.cyclic) {
        const double x = alpha[last] / (1.0 - beta[last]);
        for (std::size_t j = 0; j < n; ++j) w[j] = alpha[j] + beta[j] * x;
    }
    return w;
}

namespace {

void solve_characteristic(const AcousticInputs& in, const InterfaceSpeeds& speeds, double dt, bool periodic,
                          std::vector<double>& u, std::vector<double>& pi) {
    if (!speeds.is_uniform()) {
        throw std::invalid_argument("characteristic implicit backend requires a uniform relaxation speed");
    }
    const std::size_t n = in.n_cells();
    const double a = speeds.a.front();
    const std::span<const double> dm(in.dm.data() + 1, n);
    auto w = to_characteristic(std::span<const double>(in.u.data() + 1, n),
                               std::span<const double>(in.pi.data() + 1, n), a);
    const double ghost_plus = in.pi.front() + a * in.u.front();
    const double ghost_minus = in.pi.back() - a * in.u.back();
    const auto lower = assemble_bidiagonal(a, dm, dt, BidiagonalSystem::Side::Lower, w.w_plus, in.m_jump,
                                           ghost_plus, periodic);
    const auto upper = assemble_bidiagonal(a, dm, dt, BidiagonalSystem::Side::Upper, w.w_minus, in.m_jump,
                                           ghost_minus, periodic);
    w.w_plus = solve_bidiagonal(lower);
    w.w_minus = solve_bidiagonal(upper);
    from_characteristic(w, u, pi);
}

void solve_banded(const AcousticInputs& in, const InterfaceSpeeds& speeds, double dt, bool periodic,
                  const std::vector<double>& source_cell, std::vector<double>& u, std::vector<double>& pi) {
    using detail::Mat2;
    using detail::Vec2;
    const std::size_t n = in.n_cells();
    detail::BlockTridiagonal sys;
    sys.lower.resize(n);
    sys.diag.resize(n);
    sys.upper.resize(n);
    std::vector<Vec2> rhs(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t e = j + 1;
        const double c = dt / in.dm[e];
        const double am = speeds.a[j];
        const double ap = speeds.a[j + 1];
        const double a_cell = speeds.cell_speed(j);
        const double ca2 = c * a_cell * a_cell;
        // unknowns (u_j, pi_j); first row is the velocity update, second the pressure update
        sys.diag[j] = {1.0 + c * (ap + am) / 2.0, 0.0, 0.0, 1.0 + ca2 * (1.0 / (2.0 * ap) + 1.0 / (2.0 * am))};
        sys.upper[j] = {-c * ap / 2.0, c / 2.0, ca2 / 2.0, -ca2 / (2.0 * ap)};
        sys.lower[j] = {-c * am / 2.0, -c / 2.0, -ca2 / 2.0, -ca2 / (2.0 * am)};
        rhs[j] = {in.u[e] - dt * source_cell[j],
                  in.pi[e] + ca2 * (in.m_jump[j + 1] / (2.0 * ap) - in.m_jump[j] / (2.0 * am))};
    }
    if (!periodic) {
        rhs[0] = rhs[0] - sys.lower[0] * Vec2{in.u.front(), in.pi.front()};
        rhs[n - 1] = rhs[n - 1] - sys.upper[n - 1] * Vec2{in.u.back(), in.pi.back()};
    }
    std::vector<Vec2> x;
    try {
        x = detail::solve_block_tridiagonal(sys, rhs, periodic);
    } catch (const std::runtime_error& e) {
        throw StepFailure(e.what());
    }
    u.resize(n);
    pi.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        u[j] = x[j].x;
        pi[j] = x[j].y;
    }
}

}  // namespace

AcousticStepOutput implicit_acoustic_step(const AcousticInputs& in, const InterfaceSpeeds& speeds, double dt,
                                          bool periodic, ImplicitBackend backend) {
    const std::size_t n = in.n_cells();
    AcousticStepOutput out;
    out.dt = dt;
    out.m_jump = in.m_jump;
    out.source_cell.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.source_cell[j] = (out.m_jump[j] + out.m_jump[j + 1]) / (2.0 * in.dm[j + 1]);
    }

    auto& s = out.state_minus;
    if (backend == ImplicitBackend::Characteristic) {
        solve_characteristic(in, speeds, dt, periodic, s.u, s.pi);
    } else {
        solve_banded(in, speeds, dt, periodic, out.source_cell, s.u, s.pi);
    }

    // Ghost (u, pi) at t^{n+1-}: boundary data frozen at t^n, or the wrapped solution.
    RelaxedCell left{in.tau.front(), in.u.front(), in.pi.front(), in.z.front()};
    RelaxedCell right{in.tau.back(), in.u.back(), in.pi.back(), in.z.back()};
    if (periodic) {
        left.u = s.u[n - 1];
        left.pi = s.pi[n - 1];
        right.u = s.u[0];
        right.pi = s.pi[0];
    }
    out.u_star.resize(n + 1);
    out.pi_star.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double ul = k == 0 ? left.u : s.u[k - 1];
        const double pl = k == 0 ? left.pi : s.pi[k - 1];
        const double ur = k == n ? right.u : s.u[k];
        const double pr = k == n ? right.pi : s.pi[k];
        out.u_star[k] = interface_velocity(ul, ur, pl, pr, speeds.a[k], in.m_jump[k]);
        out.pi_star[k] = interface_pressure(ul, ur, pl, pr, speeds.a[k]);
    }
    detail::finish_acoustic_step(in, out);
    out.ghost_left = left;
    out.ghost_right = right;
    return out;
}

AcousticStepOutput implicit_acoustic_step(const FlowState& state, const Grid1D& grid, const InterfaceSpeeds& speeds,
                                          double dt, double g, const BoundaryPolicy& bc, ImplicitBackend backend) {
    require_admissible(state);
    const auto in = prepare_acoustic_inputs(extend_with_ghosts(state.h, state.hu, grid.z, bc), grid.dx, g);
    return implicit_acoustic_step(in, speeds, dt, bc.is_periodic(), backend);
}

}  // namespace swlp
