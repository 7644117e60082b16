#include "swlp/boundary.hpp"

#include <fmt/format.h>

#include "swlp/errors.hpp"

namespace swlp {

void BoundaryPolicy::validate() const {
    using K = BoundarySide::Kind;
    if ((left.kind == K::Periodic) != (right.kind == K::Periodic)) {
        throw ConfigError("periodic boundaries must be set on both sides");
    }
    for (const auto* side : {&left, &right}) {
        if (side->kind == K::DirichletDepth && !(side->value > 0.0)) {
            throw ConfigError(fmt::format("Dirichlet depth must be positive, got {}", side->value));
        }
    }
}

std::string to_string(const BoundarySide& side) {
    switch (side.kind) {
        case BoundarySide::Kind::Neumann: return "neumann";
        case BoundarySide::Kind::DirichletDischarge: return fmt::format("discharge({})", side.value);
        case BoundarySide::Kind::DirichletDepth: return fmt::format("depth({})", side.value);
        case BoundarySide::Kind::Periodic: return "periodic";
    }
    return "?";
}

namespace {

struct Ghost {
    double h;
    double hu;
};

Ghost ghost_value(const BoundarySide& side, double h_in, double hu_in) {
    switch (side.kind) {
        case BoundarySide::Kind::DirichletDischarge:
            return {h_in, 2.0 * side.value - hu_in};
        case BoundarySide::Kind::DirichletDepth: {
            const double mirrored = 2.0 * side.value - h_in;
            return {mirrored > 0.0 ? mirrored : side.value, hu_in};
        }
        default:
            return {h_in, hu_in};
    }
}

}  // namespace

GhostedState extend_with_ghosts(std::span<const double> h, std::span<const double> hu, std::span<const double> z,
                                const BoundaryPolicy& bc) {
    const std::size_t n = h.size();
    GhostedState ext;
    ext.h.resize(n + 2);
    ext.hu.resize(n + 2);
    ext.z.resize(n + 2);
    for (std::size_t j = 0; j < n; ++j) {
        ext.h[j + 1] = h[j];
        ext.hu[j + 1] = hu[j];
        ext.z[j + 1] = z[j];
    }
    if (bc.is_periodic()) {
        ext.h[0] = h[n - 1];
        ext.hu[0] = hu[n - 1];
        ext.z[0] = z[n - 1];
        ext.h[n + 1] = h[0];
        ext.hu[n + 1] = hu[0];
        ext.z[n + 1] = z[0];
        return ext;
    }
    const Ghost left = ghost_value(bc.left, h[0], hu[0]);
    const Ghost right = ghost_value(bc.right, h[n - 1], hu[n - 1]);
    ext.h[0] = left.h;
    ext.hu[0] = left.hu;
    ext.z[0] = z[0];
    ext.h[n + 1] = right.h;
    ext.hu[n + 1] = right.hu;
    ext.z[n + 1] = z[n - 1];
    return ext;
}

}  // namespace swlp
