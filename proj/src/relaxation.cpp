#include "swlp/relaxation.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace swlp {

double pressure(double h, double g) {
    if (!(h > 0.0)) throw std::domain_error(fmt::format("pressure: depth must be positive, got {}", h));
    return 0.5 * g * h * h;
}

double sound_speed(double h, double g) {
    if (!(h > 0.0)) throw std::domain_error(fmt::format("sound_speed: depth must be positive, got {}", h));
    return std::sqrt(g * h);
}

double lagrangian_sound_speed(double h, double g) { return h * sound_speed(h, g); }

bool InterfaceSpeeds::is_uniform() const noexcept {
    return std::adjacent_find(a.begin(), a.end(), std::not_equal_to<>()) == a.end();
}

InterfaceSpeeds compute_interface_speeds(const GhostedState& state, const RelaxSpeedPolicy& policy, double g) {
    const std::size_t cells = state.h.size();
    std::vector<double> hc(cells);
    for (std::size_t k = 0; k < cells; ++k) hc[k] = lagrangian_sound_speed(state.h[k], g);

    InterfaceSpeeds speeds;
    speeds.a.resize(cells - 1);
    if (policy.mode == RelaxSpeedPolicy::Mode::Global) {
        const double a = policy.kappa * *std::max_element(hc.begin(), hc.end());
        std::fill(speeds.a.begin(), speeds.a.end(), a);
    } else {
        for (std::size_t k = 0; k + 1 < cells; ++k) speeds.a[k] = policy.kappa * std::max(hc[k], hc[k + 1]);
    }
    return speeds;
}

InterfaceSpeeds compute_interface_speeds(const FlowState& state, const BoundaryPolicy& bc, std::span<const double> z,
                                         const RelaxSpeedPolicy& policy, double g) {
    return compute_interface_speeds(extend_with_ghosts(state.h, state.hu, z, bc), policy, g);
}

namespace {

std::size_t fill_margins(const InterfaceSpeeds& speeds, const GhostedState& s, double g, std::vector<double>& margin) {
    margin.resize(speeds.size());
    std::size_t violations = 0;
    for (std::size_t k = 0; k < speeds.size(); ++k) {
        const double hc = std::max(s.h[k] * std::sqrt(g * s.h[k]), s.h[k + 1] * std::sqrt(g * s.h[k + 1]));
        margin[k] = speeds.a[k] - hc;
        if (!(margin[k] > 0.0)) ++violations;
    }
    return violations;
}

}  // namespace

WhithamReport check_whitham(const InterfaceSpeeds& speeds, const GhostedState& before, const GhostedState& after,
                            double g) {
    WhithamReport report;
    report.violations_before = fill_margins(speeds, before, g, report.margin_before);
    report.violations_after = fill_margins(speeds, after, g, report.margin_after);
    return report;
}

}  // namespace swlp
