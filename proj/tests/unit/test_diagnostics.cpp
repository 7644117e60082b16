#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "support/fixtures.hpp"
#include "swlp/diagnostics.hpp"
#include "swlp/errors.hpp"
#include "swlp/scenarios.hpp"

using namespace swlp;
using swlp_test::make_grid;

namespace {

struct Probe : StepObserver {
    std::function<void(StepData&)> fn;
    void on_step(StepData& d) override { fn(d); }
};

SchemeConfig config(Scheme v, BoundaryPolicy bc = BoundaryPolicy::neumann()) {
    SchemeConfig c;
    c.variant = v;
    c.t_end = 1e9;
    c.dt_limit_factor = 5.0;
    c.bc = bc;
    return c;
}

}  // namespace

TEST(Entropy, Value) { EXPECT_DOUBLE_EQ(entropy(2.0, 1.0, 9.81), 0.25 + 0.5 * 9.81 * 4.0); }

// At rest the estimate is not zero but its closed form: every flux and source
// term reduces to pi and m_jump, leaving -(M_{j-1/2}^2 + M_{j+1/2}^2) / (4 a dx) <= 0.
TEST(EntropyAudit, LakeAtRestResidualHasClosedForm) {
    const auto grid = make_grid(60, 0.0, 1.0, [](double x) { return 0.3 * std::exp(-40.0 * (x - 0.5) * (x - 0.5)); });
    const auto s = swlp_test::lake_state(grid, 1.0);
    for (Scheme v : {Scheme::ExExGlob, Scheme::ImExGlob}) {
        Probe p;
        double worst = 0.0, largest = 0.0, tol = 0.0;
        p.fn = [&](StepData& d) {
            const auto a = entropy_audit(d);
            const double speed = d.speeds.a[0];
            const auto& mj = d.acoustic.m_jump;
            for (std::size_t j = 0; j < a.residual.size(); ++j) {
                const double expected = -(mj[j] * mj[j] + mj[j + 1] * mj[j + 1]) / (4.0 * speed * grid.dx);
                worst = std::max(worst, std::abs(a.residual[j] - expected));
                largest = std::max(largest, std::abs(expected));
            }
            tol = a.tolerance;
            EXPECT_TRUE(a.passes());
        };
        StepObserver* list[] = {&p};
        advance(grid, s, config(v), list);
        EXPECT_GT(largest, 1e3 * tol);  // the closed form is far from round-off
        EXPECT_LE(worst, tol) << to_string(v);
    }
}

TEST(EntropyAudit, UniformFlowResidualVanishes) {
    const auto grid = make_grid(20);
    const auto s = swlp_test::uniform_state(20, 1.5, 0.7);
    Probe p;
    p.fn = [&](StepData& d) {
        const auto a = entropy_audit(d);
        for (double r : a.residual) EXPECT_NEAR(r, 0.0, 1e-11);
    };
    StepObserver* list[] = {&p};
    advance(grid, s, config(Scheme::ImExGlob, BoundaryPolicy::periodic()), list);
}

TEST(EntropyAudit, LocalSpeedIsUnavailable) {
    const auto grid = make_grid(10);
    FlowState s({1.0, 1.0, 2.0, 2.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0}, std::vector<double>(10, 0.1));
    EntropyObserver obs;
    StepObserver* list[] = {&obs};
    EXPECT_THROW(advance(grid, s, config(Scheme::ImExLoc), list), AuditUnavailable);
}

TEST(EntropyAudit, AuxiliaryIdentities) {
    std::mt19937_64 rng(41);
    const auto grid = make_grid(50, 0.0, 1.0, [](double x) { return 0.2 * std::sin(5.0 * x); });
    const auto s = swlp_test::random_state(rng, 50, 1.0, 1.5, 0.3);
    Probe p;
    p.fn = [&](StepData& d) {
        const auto aux = aux_entropy_quantities(d);
        const auto& m = d.acoustic.state_minus;
        for (std::size_t j = 0; j < m.size(); ++j) {
            const double eta = m.pi[j] * m.pi[j] + aux.a * aux.a * m.u[j] * m.u[j];
            EXPECT_NEAR(aux.eta[j], eta, 1e-12 * eta);
            EXPECT_NEAR(aux.I_after[j], aux.I_before[j], 1e-12 * aux.I_before[j]);
            EXPECT_NEAR(aux.energy[j], 0.5 * m.u[j] * m.u[j] + 0.5 * d.config.g / m.tau[j], 1e-14 * aux.energy[j]);
        }
        for (std::size_t k = 0; k < aux.q.size(); ++k) {
            EXPECT_NEAR(aux.q[k], aux.pi_u_tilde[k], 1e-11 * std::max(1.0, std::abs(aux.q[k])));
        }
        const auto ut = bracket_free_velocity(d.acoustic, d.speeds);
        for (std::size_t k = 0; k < ut.size(); ++k) {
            const double bracket_term = d.acoustic_inputs.dm_half[k] / (2.0 * aux.a) * d.acoustic_inputs.bracket[k];
            EXPECT_NEAR(ut[k] - d.acoustic.u_star[k], bracket_term, 1e-13);
        }
    };
    StepObserver* list[] = {&p};
    advance(grid, s, config(Scheme::ImExGlob), list);
}

TEST(EntropyAudit, ObserverOnShortDamBreak) {
    const auto sc = build_scenario("dam_break");
    const auto grid = sc.make_grid(300);
    EntropyObserver obs;
    StepObserver* list[] = {&obs};
    SchemeConfig c;
    c.variant = Scheme::ImExGlob;
    c.t_end = 20.0;
    const auto r = run_to(grid, sc.initial_state(grid), c, list);
    EXPECT_EQ(obs.steps_audited(), r.steps());
    EXPECT_EQ(obs.failures(), 0u);
    EXPECT_FALSE(std::isnan(r.records.front().max_entropy_residual));
}

TEST(WellBalancedResidual, DamBreakInitialData) {
    const auto sc = build_scenario("dam_break");
    const auto grid = sc.make_grid();
    const auto s = sc.initial_state(grid);
    const auto r = wellbalanced_residual(s, grid);
    EXPECT_EQ(r.max_abs_u, 0.0);
    double lo = 1e300, hi = -1e300;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        lo = std::min(lo, s.h[j] + grid.z[j]);
        hi = std::max(hi, s.h[j] + grid.z[j]);
    }
    EXPECT_EQ(r.surface_variation, hi - lo);
    EXPECT_EQ(hi, 28.0);  // h = 20 on the plateau z = 8
    EXPECT_EQ(lo, 15.0);
}

TEST(WellBalancedResidual, ExactLake) {
    const auto grid = make_grid(10, 0.0, 1.0, [](double x) { return x < 0.5 ? 0.0 : 1.0; });
    const auto r = wellbalanced_residual(swlp_test::lake_state(grid, 2.0), grid);
    EXPECT_EQ(r.max_abs_u, 0.0);
    EXPECT_EQ(r.surface_variation, 0.0);
}

TEST(ConservationLedger, PeriodicAndBump) {
    std::mt19937_64 rng(42);
    const auto grid = make_grid(64, 0.0, 1.0, [](double x) { return 0.1 * std::cos(2.0 * M_PI * x); });
    const auto s0 = swlp_test::random_state(rng, 64, 1.0, 2.0, 0.5);
    for (Scheme v : all_schemes()) {
        auto c = config(v, BoundaryPolicy::periodic());
        c.t_end = 0.05;
        const auto r = run_to(grid, s0, c);
        const auto rep = conservation_ledger(s0, grid.dx, r.records);
        EXPECT_LE(rep.mass_drift, 1e-13) << to_string(v);
        EXPECT_LE(rep.max_mass_imbalance, 1e-14);
        EXPECT_LE(rep.max_momentum_imbalance, 1e-12);
        EXPECT_EQ(rep.net_mass_boundary, 0.0);
        // with a bottom, momentum moves only through the source sum
        EXPECT_NEAR(rep.momentum_final - rep.momentum_initial, rep.net_momentum_source,
                    1e-12 * std::max(1.0, std::abs(rep.net_momentum_source)));
    }
}

TEST(ConservationLedger, FlatPeriodicMomentum) {
    std::mt19937_64 rng(43);
    const auto grid = make_grid(64);
    const auto s0 = swlp_test::random_state(rng, 64, 1.0, 2.0, 0.5);
    auto c = config(Scheme::ExExLoc, BoundaryPolicy::periodic());
    c.t_end = 0.05;
    const auto r = run_to(grid, s0, c);
    const auto rep = conservation_ledger(s0, grid.dx, r.records);
    EXPECT_LE(rep.momentum_drift, 1e-12);
}

TEST(PositivityObserver, TracksMinimum) {
    const auto sc = build_scenario("nonunique_riemann");
    const auto grid = sc.make_grid();
    PositivityObserver obs;
    StepObserver* list[] = {&obs};
    SchemeConfig c;
    c.g = sc.g;
    c.cfl_factor = sc.cfl_factor;
    c.t_end = 0.02;
    const auto r = run_to(grid, sc.initial_state(grid), c, list);
    double m = 0.1;
    for (const auto& rec : r.records) m = std::min(m, rec.min_h);
    EXPECT_EQ(obs.min_h(), m);
    EXPECT_GT(obs.min_h(), 0.0);
}
