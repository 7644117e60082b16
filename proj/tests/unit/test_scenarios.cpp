#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "support/bisection.hpp"
#include "swlp/errors.hpp"
#include "swlp/scenarios.hpp"

using namespace swlp;
using Branch = EquilibriumSpec::Branch;

TEST(Equilibrium, HydrostaticLimit) {
    EXPECT_DOUBLE_EQ(equilibrium_depth({0.0, 25.0, Branch::Subcritical}, 0.5, 9.81), 25.0 / 9.81 - 0.5);
    EXPECT_THROW(equilibrium_depth({0.0, 25.0, Branch::Supercritical}, 0.5, 9.81), std::domain_error);
}

TEST(Equilibrium, FluvialCaseMatchesBisection) {
    const double g = 9.81;
    const double h = equilibrium_depth({1.0, 25.0, Branch::Subcritical}, 0.0, g);
    const double hc = critical_depth(1.0, g);
    const double ref = swlp_test::bisect_depth(hc, 25.0 / g, 1.0, 25.0, 0.0, g);
    EXPECT_NEAR(h, ref, 1e-12 * ref);
    EXPECT_LE(std::abs(swlp_test::bernoulli(h, 1.0, 25.0, 0.0, g)), 1e-13 * 25.0);
}

TEST(Equilibrium, CriticalPoint) {
    const double g = 9.81, K1 = 3.0;
    const double K2 = 1.5 * std::cbrt(K1 * K1 * g * g) + g / 2.0;
    const double hc = critical_depth(K1, g);
    EXPECT_NEAR(hc, std::cbrt(K1 * K1 / g), 1e-15);
    EXPECT_NEAR(equilibrium_depth({K1, K2, Branch::Subcritical}, 0.5, g), hc, 1e-7 * hc);
    EXPECT_NEAR(equilibrium_depth({K1, K2, Branch::Supercritical}, 0.5, g), hc, 1e-7 * hc);
}

TEST(Equilibrium, BranchOrdering) {
    const double g = 9.81, K1 = 3.0;
    const double K2 = 1.5 * std::cbrt(K1 * K1 * g * g) + g / 2.0;
    const double hc = critical_depth(K1, g);
    const double sub = equilibrium_depth({K1, K2, Branch::Subcritical}, 0.1, g);
    const double sup = equilibrium_depth({K1, K2, Branch::Supercritical}, 0.1, g);
    EXPECT_GT(sub, hc);
    EXPECT_LT(sup, hc);
    EXPECT_LE(std::abs(swlp_test::bernoulli(sup, K1, K2, 0.1, g)), 1e-13 * K2);
}

TEST(Equilibrium, NoRootReportsDiscriminant) {
    try {
        equilibrium_depth({3.0, 5.0, Branch::Subcritical}, 0.0, 9.81);
        FAIL();
    } catch (const std::domain_error& e) {
        EXPECT_NE(std::string(e.what()).find("critical head"), std::string::npos);
    }
}

TEST(Scenarios, CatalogueBuildsAndIsPositive) {
    for (const auto& name : scenario_names()) {
        const auto sc = build_scenario(name);
        EXPECT_EQ(sc.name, name);
        const auto grid = sc.make_grid();
        EXPECT_NO_THROW(sc.initial_state(grid)) << name;
        EXPECT_NO_THROW(sc.bc.validate());
        EXPECT_GT(sc.t_end, 0.0);
    }
    EXPECT_THROW(build_scenario("tsunami"), ConfigError);
}

TEST(Scenarios, DamBreakData) {
    const auto sc = build_scenario("dam_break");
    EXPECT_EQ(sc.initial(100.0, 0.0).first, 20.0);
    EXPECT_EQ(sc.initial(1000.0, 0.0).first, 15.0);
    EXPECT_EQ(dam_break_topography(750.0), 8.0);
    EXPECT_EQ(dam_break_topography(100.0), 0.0);
    EXPECT_NEAR(dam_break_topography(562.5), 4.0, 1e-12);
    EXPECT_NEAR(dam_break_topography(562.5 + 1e-9), 4.0, 1e-6);  // continuous at the branch junction
    EXPECT_EQ(sc.grid.n_cells, 1500u);
}

TEST(Scenarios, NonUniqueRiemannData) {
    const auto sc = build_scenario("nonunique_riemann");
    EXPECT_EQ(sc.g, 2.0);
    EXPECT_EQ(sc.z_function(0.25), 1.5);
    const auto [h, hu] = sc.initial(0.25, 1.5);
    EXPECT_EQ(h, 1.3);
    EXPECT_DOUBLE_EQ(hu / h, -2.0);
    EXPECT_EQ(sc.dt_limit_factor.value(), 3.0);
}

TEST(Scenarios, BumpStartsAtRest) {
    const auto sc = build_scenario("bump_fluvial");
    const auto grid = sc.make_grid();
    const auto s = sc.initial_state(grid);
    for (double q : s.hu) EXPECT_EQ(q, 0.0);
    EXPECT_EQ(sc.bc.left.kind, BoundarySide::Kind::DirichletDischarge);
    EXPECT_EQ(sc.bc.left.value, 1.0);
    EXPECT_EQ(sc.bc.right.kind, BoundarySide::Kind::DirichletDepth);
    EXPECT_NEAR(grid.dx, 1.0 / 400.0, 1e-15);
}

TEST(Scenarios, ShockCaseData) {
    const auto sc = build_scenario("bump_transcritical_shock");
    const auto grid = sc.make_grid();
    EXPECT_DOUBLE_EQ(grid.dx, 1.0 / 64.0);
    EXPECT_DOUBLE_EQ(sc.z_function(10.0), 3.0);
    EXPECT_DOUBLE_EQ(sc.z_function(20.0), 2.8);
    EXPECT_EQ(sc.bc.right.value, 0.33);
}

TEST(Scenarios, GravityOverrideRebuildsEquilibria) {
    const auto a = build_scenario("bump_fluvial", 9.81);
    const auto b = build_scenario("bump_fluvial", 5.0);
    EXPECT_NE(a.bc.right.value, b.bc.right.value);
    EXPECT_EQ(b.g, 5.0);
    EXPECT_THROW(build_scenario("dam_break", -1.0), ConfigError);
}
