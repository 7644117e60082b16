#include "swlp/transport_projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "swlp/errors.hpp"

namespace swlp {

TransportInput make_transport_input(const AcousticStepOutput& acoustic, double time) {
    return {acoustic.conserved_minus(time), acoustic.u_star, acoustic.L};
}

FlowState transport_step(const TransportInput& input, const Grid1D& grid, double dt, const BoundaryPolicy& bc) {
    const std::size_t n = input.state_minus.size();
    const double r = dt / grid.dx;

    // Coefficient of phi_j in the update; it must stay positive.
    double worst = std::numeric_limits<double>::infinity();
    std::size_t worst_cell = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const double outflow = std::max(input.u_star[j + 1], 0.0) - std::min(input.u_star[j], 0.0);
        const double coeff = input.L[j] - r * outflow;
        if (coeff < worst) {
            worst = coeff;
            worst_cell = j;
        }
    }
    if (worst < 0.0 || !std::isfinite(worst)) {
        throw CflError(fmt::format("transport CFL violated in cell {} (coefficient {}, dt = {})", worst_cell, worst, dt),
                       worst_cell);
    }

    const auto ext = extend_with_ghosts(input.state_minus.h, input.state_minus.hu, grid.z, bc);
    std::vector<double> fh(n + 1), fq(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double us = input.u_star[k];
        fh[k] = us * upwind(ext.h[k], ext.h[k + 1], us);
        fq[k] = us * upwind(ext.hu[k], ext.hu[k + 1], us);
    }

    FlowState next;
    next.time = input.state_minus.time;
    next.h.resize(n);
    next.hu.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        next.h[j] = input.state_minus.h[j] * input.L[j] - r * (fh[j + 1] - fh[j]);
        next.hu[j] = input.state_minus.hu[j] * input.L[j] - r * (fq[j + 1] - fq[j]);
        if (!std::isfinite(next.h[j]) || !std::isfinite(next.hu[j])) {
            throw StepFailure(fmt::format("transport produced non-finite values in cell {}", j));
        }
        if (!(next.h[j] > 0.0)) {
            throw PositivityError(fmt::format("transport produced h = {} in cell {}", next.h[j], j), j);
        }
    }
    return next;
}

double transport_cfl_dt(std::span<const double> u_star, double dx) {
    double rate = 0.0;
    for (std::size_t j = 0; j + 1 < u_star.size(); ++j) {
        rate = std::max(rate, std::max(u_star[j], 0.0) - std::min(u_star[j + 1], 0.0));
    }
    return rate > 0.0 ? 0.999 * dx / rate : std::numeric_limits<double>::infinity();
}

}  // namespace swlp
