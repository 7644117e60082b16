#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "support/dense_solve.hpp"
#include "support/implicit_oracle.hpp"
#include "support/fixtures.hpp"
#include "swlp/errors.hpp"
#include "swlp/lagrangian_implicit.hpp"

using namespace swlp;
using swlp_test::make_grid;

namespace {

using Side = BidiagonalSystem::Side;

struct Case {
    Grid1D grid;
    FlowState state;
    BoundaryPolicy bc;
};

Case random_case(std::mt19937_64& rng, std::size_t n, const BoundaryPolicy& bc) {
    std::uniform_real_distribution<double> Z(-0.3, 0.3);
    std::vector<double> zs(n);
    for (auto& z : zs) z = Z(rng);
    Case c;
    c.grid = make_grid(n, 0.0, 1.0);
    c.grid.z = zs;
    c.state = swlp_test::random_state(rng, n, 0.8, 2.0, 1.0);
    c.bc = bc;
    return c;
}

const BoundaryPolicy kPolicies[] = {
    BoundaryPolicy::neumann(),
    BoundaryPolicy::periodic(),
    BoundaryPolicy{BoundarySide::discharge(0.3), BoundarySide::depth(1.2)},
};

}  // namespace

TEST(Bidiagonal, ZeroStepIsIdentity) {
    const std::vector<double> dm{0.5, 1.0, 2.0}, w{1.0, 2.0, 3.0}, mj{0.1, 0.2, 0.3, 0.4};
    for (Side side : {Side::Lower, Side::Upper}) {
        const auto sys = assemble_bidiagonal(3.0, dm, 0.0, side, w, mj, 7.0, false);
        for (std::size_t j = 0; j < 3; ++j) {
            EXPECT_EQ(sys.diag[j], 1.0);
            EXPECT_EQ(sys.off[j], 0.0);
            EXPECT_EQ(sys.rhs[j], w[j]);
        }
        EXPECT_EQ(solve_bidiagonal(sys), w);
    }
}

TEST(Bidiagonal, SingleCell) {
    const std::vector<double> dm{2.0}, w{1.0}, mj{0.0, 0.0};
    const auto sys = assemble_bidiagonal(4.0, dm, 0.25, Side::Lower, w, mj, 1.0, false);
    EXPECT_DOUBLE_EQ(sys.diag[0], 1.0 + 4.0 * 0.25 / 2.0);
}

TEST(Bidiagonal, ConstantStateIsFixedPoint) {
    const std::vector<double> dm{0.5, 1.0, 2.0, 0.7}, w(4, 3.5), mj(5, 0.0);
    for (Side side : {Side::Lower, Side::Upper}) {
        for (bool periodic : {false, true}) {
            const auto sys = assemble_bidiagonal(2.0, dm, 0.9, side, w, mj, 3.5, periodic);
            // with the ghost moved to the rhs, row sums reproduce the rhs
            for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR((sys.diag[j] + sys.off[j]) * 3.5, sys.rhs[j], 1e-14);
            for (double v : solve_bidiagonal(sys)) EXPECT_NEAR(v, 3.5, 1e-14);
        }
    }
}

TEST(Bidiagonal, PositiveDiagonal) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> D(0.1, 3.0);
    std::vector<double> dm(12), w(12), mj(13, 0.0);
    for (auto& v : dm) v = D(rng);
    for (auto& v : w) v = D(rng);
    const auto sys = assemble_bidiagonal(5.0, dm, 100.0, Side::Upper, w, mj, 0.0, false);
    for (double d : sys.diag) EXPECT_GT(d, 1.0);
}

TEST(Bidiagonal, MatchesDenseSolve) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> D(0.05, 2.0), W(-5.0, 5.0), M(-1.0, 1.0), T(0.0, 5.0);
    for (std::size_t n = 1; n <= 20; ++n) {
        for (Side side : {Side::Lower, Side::Upper}) {
            for (bool periodic : {false, true}) {
                std::vector<double> dm(n), w(n), mj(n + 1);
                for (auto& v : dm) v = D(rng);
                for (auto& v : w) v = W(rng);
                for (auto& v : mj) v = M(rng);
                const auto sys = assemble_bidiagonal(D(rng) * 5.0, dm, T(rng), side, w, mj, W(rng), periodic);
                const auto x = solve_bidiagonal(sys);
                const auto ref = swlp_test::dense_solve(swlp_test::dense_of(sys), sys.rhs);
                for (std::size_t j = 0; j < n; ++j) {
                    EXPECT_NEAR(x[j], ref[j], 1e-12 * std::max(1.0, std::abs(ref[j])))
                        << "n=" << n << " periodic=" << periodic;
                }
            }
        }
    }
}

TEST(Characteristic, RoundTrip) {
    const std::vector<double> u{0.5, -1.0}, pi{3.0, 4.0};
    const auto w = to_characteristic(u, pi, 2.0);
    EXPECT_EQ(w.w_plus[0], 4.0);
    EXPECT_EQ(w.w_minus[1], 6.0);
    std::vector<double> u2, pi2;
    from_characteristic(w, u2, pi2);
    EXPECT_EQ(u2, u);
    EXPECT_EQ(pi2, pi);
}

TEST(ImplicitAcoustic, BothBackendsMatchDenseOracle) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> T(0.001, 0.2);
    for (std::size_t n = 1; n <= 20; n += (n < 4 ? 1 : 5)) {
        for (const auto& bc : kPolicies) {
            const auto c = random_case(rng, n, bc);
            const auto ext = extend_with_ghosts(c.state.h, c.state.hu, c.grid.z, bc);
            const auto in = prepare_acoustic_inputs(ext, c.grid.dx, 9.81);
            for (auto mode : {RelaxSpeedPolicy::Mode::Local, RelaxSpeedPolicy::Mode::Global}) {
                const auto sp = compute_interface_speeds(ext, {mode, 1.01}, 9.81);
                const double dt = T(rng);
                const auto ref = swlp_test::dense_implicit(in, sp, dt, bc.is_periodic());
                std::vector<ImplicitBackend> backends{ImplicitBackend::Banded};
                if (sp.is_uniform()) backends.push_back(ImplicitBackend::Characteristic);
                for (auto backend : backends) {
                    AcousticStepOutput out;
                    try {
                        out = implicit_acoustic_step(in, sp, dt, bc.is_periodic(), backend);
                    } catch (const CflError&) {
                        continue;  // the linear solve is fine; only the tau update was rejected
                    }
                    for (std::size_t j = 0; j < n; ++j) {
                        EXPECT_NEAR(out.state_minus.u[j], ref[2 * j], 1e-12 * std::max(1.0, std::abs(ref[2 * j])));
                        EXPECT_NEAR(out.state_minus.pi[j], ref[2 * j + 1], 1e-12 * std::abs(ref[2 * j + 1]));
                    }
                }
            }
        }
    }
}

TEST(ImplicitAcoustic, BandedEqualsCharacteristicForUniformSpeed) {
    std::mt19937_64 rng(22);
    for (const auto& bc : kPolicies) {
        const auto c = random_case(rng, 50, bc);
        const auto ext = extend_with_ghosts(c.state.h, c.state.hu, c.grid.z, bc);
        const auto in = prepare_acoustic_inputs(ext, c.grid.dx, 9.81);
        const auto sp = compute_interface_speeds(ext, {RelaxSpeedPolicy::Mode::Global, 1.01}, 9.81);
        const double dt = 2e-3;
        const auto a = implicit_acoustic_step(in, sp, dt, bc.is_periodic(), ImplicitBackend::Characteristic);
        const auto b = implicit_acoustic_step(in, sp, dt, bc.is_periodic(), ImplicitBackend::Banded);
        const double scale_pi = swlp_test::max_abs(a.state_minus.pi);
        EXPECT_LE(swlp_test::max_abs_diff(a.state_minus.u, b.state_minus.u), 1e-12 * std::max(1.0, swlp_test::max_abs(a.state_minus.u)));
        EXPECT_LE(swlp_test::max_abs_diff(a.state_minus.pi, b.state_minus.pi), 1e-12 * scale_pi);
        EXPECT_LE(swlp_test::max_abs_diff(a.u_star, b.u_star), 1e-12 * std::max(1.0, swlp_test::max_abs(a.u_star)));
    }
}

TEST(ImplicitAcoustic, CharacteristicBackendNeedsUniformSpeed) {
    std::mt19937_64 rng(23);
    const auto c = random_case(rng, 8, BoundaryPolicy::neumann());
    const auto ext = extend_with_ghosts(c.state.h, c.state.hu, c.grid.z, c.bc);
    const auto in = prepare_acoustic_inputs(ext, c.grid.dx, 9.81);
    const auto sp = compute_interface_speeds(ext, {RelaxSpeedPolicy::Mode::Local, 1.01}, 9.81);
    EXPECT_THROW(implicit_acoustic_step(in, sp, 1e-3, false, ImplicitBackend::Characteristic), std::invalid_argument);
}

TEST(ImplicitAcoustic, LakeAtRestAnyStep) {
    const auto grid = make_grid(80, 0.0, 1.0, [](double x) { return 0.5 * std::exp(-50.0 * (x - 0.5) * (x - 0.5)); });
    const auto s = swlp_test::lake_state(grid, 1.0);
    for (auto mode : {RelaxSpeedPolicy::Mode::Local, RelaxSpeedPolicy::Mode::Global}) {
        const auto sp = compute_interface_speeds(s, BoundaryPolicy::neumann(), grid.z, {mode, 1.01}, 9.81);
        for (double dt : {1e-3, 1.0, 1e3}) {
            const auto backend = sp.is_uniform() ? ImplicitBackend::Characteristic : ImplicitBackend::Banded;
            const auto out = implicit_acoustic_step(s, grid, sp, dt, 9.81, BoundaryPolicy::neumann(), backend);
            // round-off in u* is amplified by dt/dx in the volume update
            const double amp = 1.0 + dt / grid.dx;
            EXPECT_LE(swlp_test::max_abs(out.u_star), 1e-13);
            EXPECT_LE(swlp_test::max_abs_diff(out.conserved_minus(0.0).h, s.h), 1e-14 * amp);
        }
    }
}

TEST(ImplicitAcoustic, DyadicLakeAtRestIsBitExact) {
    auto grid = make_grid(4, 0.0, 4.0);
    grid.z = {0.0, 0.0, 1.0, 1.0};
    FlowState s({2.0, 2.0, 1.0, 1.0}, {0.0, 0.0, 0.0, 0.0});
    const auto sp = compute_interface_speeds(s, BoundaryPolicy::neumann(), grid.z, {RelaxSpeedPolicy::Mode::Global, 1.0}, 2.0);
    const auto out = implicit_acoustic_step(s, grid, sp, 0.75, 2.0, BoundaryPolicy::neumann(), ImplicitBackend::Characteristic);
    for (double u : out.u_star) EXPECT_EQ(u, 0.0);
    EXPECT_EQ(out.conserved_minus(0.0).h, s.h);
}

TEST(ImplicitAcoustic, UniformFlowFixedPoint) {
    const auto grid = make_grid(16);
    const auto s = swlp_test::uniform_state(16, 2.0, -0.3);
    for (const auto& bc : {BoundaryPolicy::neumann(), BoundaryPolicy::periodic()}) {
        const auto sp = compute_interface_speeds(s, bc, grid.z, {RelaxSpeedPolicy::Mode::Local, 1.01}, 9.81);
        const double dt = 5.0;
        const auto out = implicit_acoustic_step(s, grid, sp, dt, 9.81, bc, ImplicitBackend::Banded);
        const double amp = 1.0 + sp.a[0] * dt / (2.0 * grid.dx);  // a dt / dm
        for (std::size_t j = 0; j < 16; ++j) {
            EXPECT_NEAR(out.state_minus.u[j], -0.3, 1e-15 * amp);
            EXPECT_NEAR(out.L[j], 1.0, 1e-15 * amp);
        }
    }
}

TEST(ImplicitAcoustic, IInvariantWithUniformSpeed) {
    std::mt19937_64 rng(24);
    const auto c = random_case(rng, 30, BoundaryPolicy::periodic());
    const auto ext = extend_with_ghosts(c.state.h, c.state.hu, c.grid.z, c.bc);
    const auto in = prepare_acoustic_inputs(ext, c.grid.dx, 9.81);
    const auto sp = compute_interface_speeds(ext, {RelaxSpeedPolicy::Mode::Global, 1.01}, 9.81);
    const double a = sp.a[0];
    const auto out = implicit_acoustic_step(in, sp, 1e-3, true, ImplicitBackend::Characteristic);
    for (std::size_t j = 0; j < 30; ++j) {
        const double before = in.pi[j + 1] + a * a * in.tau[j + 1];
        EXPECT_NEAR(out.state_minus.pi[j] + a * a * out.state_minus.tau[j], before, 1e-12 * before);
    }
}

TEST(ImplicitAcoustic, AgreesWithExplicitToSecondOrderPerStep) {
    const auto grid = make_grid(100, 0.0, 1.0, [](double x) { return 0.1 * std::sin(2.0 * M_PI * x); });
    FlowState s;
    for (double x : grid.cell_centers) {
        const double h = 1.0 + 0.2 * std::cos(2.0 * M_PI * x);
        s.h.push_back(h);
        s.hu.push_back(h * 0.3 * std::sin(2.0 * M_PI * x));
    }
    const auto bc = BoundaryPolicy::periodic();
    const auto sp = compute_interface_speeds(s, bc, grid.z, {RelaxSpeedPolicy::Mode::Global, 1.01}, 9.81);
    const double dt0 = 0.25 * acoustic_cfl_dt(s, grid, sp);
    auto diff = [&](double dt) {
        const auto e = explicit_acoustic_step(s, grid, sp, dt, 9.81, bc);
        const auto i = implicit_acoustic_step(s, grid, sp, dt, 9.81, bc, ImplicitBackend::Characteristic);
        return std::max(swlp_test::max_abs_diff(e.state_minus.u, i.state_minus.u),
                        swlp_test::max_abs_diff(e.state_minus.tau, i.state_minus.tau));
    };
    const double ratio = diff(dt0) / diff(0.5 * dt0);
    EXPECT_GT(ratio, 3.5);
    EXPECT_LT(ratio, 4.5);
}

TEST(ImplicitAcoustic, RejectsCompressiveOverstep) {
    const auto grid = make_grid(10);
    FlowState s(std::vector<double>(10, 1.0), std::vector<double>(10, 0.0));
    for (std::size_t j = 0; j < 5; ++j) s.hu[j] = 5.0;
    for (std::size_t j = 5; j < 10; ++j) s.hu[j] = -5.0;
    const auto sp = compute_interface_speeds(s, BoundaryPolicy::neumann(), grid.z, {}, 9.81);
    EXPECT_THROW(implicit_acoustic_step(s, grid, sp, 10.0, 9.81, BoundaryPolicy::neumann(), ImplicitBackend::Banded),
                 CflError);
}
