#pragma once

#include <cstddef>
#include <vector>

#include "swlp/boundary.hpp"
#include "swlp/mesh_state.hpp"

namespace swlp {

inline constexpr double kDefaultKappa = 1.01;

/// p(h) = g h^2 / 2. Throws std::domain_error for h <= 0.
double pressure(double h, double g);

/// c = sqrt(g h). Throws std::domain_error for h <= 0.
double sound_speed(double h, double g);

/// Lagrangian sound speed h c, the quantity the relaxation speed must dominate.
double lagrangian_sound_speed(double h, double g);

struct RelaxSpeedPolicy {
    enum class Mode { Local, Global };
    Mode mode = Mode::Local;
    double kappa = kDefaultKappa;
};

/// Relaxation speed a per interface; entry k sits between ghosted cells k and k+1.
struct InterfaceSpeeds {
    std::vector<double> a;

    std::size_t size() const noexcept { return a.size(); }
    bool is_uniform() const noexcept;
    /// max(a_{j-1/2}, a_{j+1/2}) for cell j, the speed used by the per-cell pi update.
    double cell_speed(std::size_t cell) const { return a[cell] > a[cell + 1] ? a[cell] : a[cell + 1]; }
};

/// Local: a = kappa * max of the two neighbouring h c.
/// Global: a = kappa * max over every (ghosted) cell, identical on all interfaces.
InterfaceSpeeds compute_interface_speeds(const GhostedState& state, const RelaxSpeedPolicy& policy, double g);
InterfaceSpeeds compute_interface_speeds(const FlowState& state, const BoundaryPolicy& bc,
                                         std::span<const double> z, const RelaxSpeedPolicy& policy, double g);

struct WhithamReport {
    std::vector<double> margin_before;  ///< a - max(h c) of neighbours at t^n
    std::vector<double> margin_after;   ///< same against the t^{n+1-} state
    std::size_t violations_before = 0;
    std::size_t violations_after = 0;

    bool holds() const noexcept { return violations_before == 0 && violations_after == 0; }
};

/// Post-step audit of a > h c over the span of the step. Diagnostic only.
WhithamReport check_whitham(const InterfaceSpeeds& speeds, const GhostedState& before,
                            const GhostedState& after, double g);

}  // namespace swlp
