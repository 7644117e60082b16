#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "swlp/lagrangian_explicit.hpp"

namespace swlp {

/// Strong Riemann invariants of the relaxation system for a single speed a:
/// w_plus = pi + a u, w_minus = pi - a u.
struct CharacteristicVars {
    std::vector<double> w_plus;
    std::vector<double> w_minus;
    double a = 1.0;
};

CharacteristicVars to_characteristic(std::span<const double> u, std::span<const double> pi, double a);
void from_characteristic(const CharacteristicVars& w, std::vector<double>& u, std::vector<double>& pi);

/// (I +/- a dt A_{+/-}) w = rhs for one family.
/// Lower: diag_j w_j + off_j w_{j-1} = rhs_j (w_plus, forward substitution).
/// Upper: diag_j w_j + off_j w_{j+1} = rhs_j (w_minus, backward substitution).
/// `corner` couples the first (lower) or last (upper) row to the opposite end
/// under periodic boundaries; it is zero otherwise.
struct BidiagonalSystem {
    enum class Side { Lower, Upper };

    Side side = Side::Lower;
    std::vector<double> diag;
    std::vector<double> off;
    std::vector<double> rhs;
    bool cyclic = false;
};

/// Builds the characteristic system of one family.
///   w_n       : cell values at t^n (n entries)
///   m_jump    : interface topography jumps at t^n (n + 1 entries)
///   ghost_w   : known boundary value entering the first (lower) or last (upper) row;
///               ignored when `periodic`.
BidiagonalSystem assemble_bidiagonal(double a, std::span<const double> dm, double dt, BidiagonalSystem::Side side,
                                     std::span<const double> w_n, std::span<const double> m_jump, double ghost_w,
                                     bool periodic);

/// Forward or backward substitution; the cyclic case is closed with one extra sweep.
std::vector<double> solve_bidiagonal(const BidiagonalSystem& sys);

enum class ImplicitBackend {
    Characteristic,  ///< two bidiagonal solves, uniform a only
    Banded           ///< coupled (u, pi) block-tridiagonal solve, per-interface a
};

/// Time-implicit acoustic step. Interface fluxes are evaluated at t^{n+1-}
/// while the topography source stays at t^n.
/// Throws std::invalid_argument for the characteristic backend with non-uniform a,
/// CflError when some L_j <= 0 (the caller may retry with a smaller dt).
AcousticStepOutput implicit_acoustic_step(const AcousticInputs& in, const InterfaceSpeeds& speeds, double dt,
                                          bool periodic, ImplicitBackend backend);
AcousticStepOutput implicit_acoustic_step(const FlowState& state, const Grid1D& grid, const InterfaceSpeeds& speeds,
                                          double dt, double g, const BoundaryPolicy& bc, ImplicitBackend backend);

}  // namespace swlp
