#pragma once

#include <span>
#include <string>
#include <vector>

namespace swlp {

/// One side of the domain. Dirichlet variants impose one field and copy the other.
struct BoundarySide {
    enum class Kind { Neumann, DirichletDischarge, DirichletDepth, Periodic };

    Kind kind = Kind::Neumann;
    double value = 0.0;

    static BoundarySide neumann() { return {}; }
    static BoundarySide discharge(double q) { return {Kind::DirichletDischarge, q}; }
    static BoundarySide depth(double h) { return {Kind::DirichletDepth, h}; }
    static BoundarySide periodic() { return {Kind::Periodic, 0.0}; }
};

struct BoundaryPolicy {
    BoundarySide left;
    BoundarySide right;

    static BoundaryPolicy neumann() { return {}; }
    static BoundaryPolicy periodic() { return {BoundarySide::periodic(), BoundarySide::periodic()}; }

    bool is_periodic() const noexcept { return left.kind == BoundarySide::Kind::Periodic; }

    /// Throws ConfigError when only one side is periodic or a Dirichlet depth is not positive.
    void validate() const;
};

std::string to_string(const BoundarySide& side);

/// Cell fields with one ghost layer on each side: index 0 and n+1 are ghosts,
/// index j+1 is cell j.
struct GhostedState {
    std::vector<double> h;
    std::vector<double> hu;
    std::vector<double> z;

    std::size_t interior_size() const noexcept { return h.size() - 2; }
};

/// Fills the ghost layer. Neumann copies the adjacent cell; Dirichlet sets the
/// ghost so that the interface average equals the target (falling back to the
/// target itself if the mirrored depth would not be positive); periodic wraps.
/// Ghost topography is extrapolated with zero gradient except under periodicity.
GhostedState extend_with_ghosts(std::span<const double> h, std::span<const double> hu,
                                std::span<const double> z, const BoundaryPolicy& bc);

}  // namespace swlp
