#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "swlp/errors.hpp"
#include "swlp/mesh_state.hpp"

using namespace swlp;

TEST(Grid, CellCentresAndSpacing) {
    const auto g = sample_topography({0.0, 2.0, 4}, [](double x) { return x * x; });
    EXPECT_DOUBLE_EQ(g.dx, 0.5);
    ASSERT_EQ(g.size(), 4u);
    EXPECT_DOUBLE_EQ(g.cell_centers.front(), 0.25);
    EXPECT_DOUBLE_EQ(g.cell_centers.back(), 1.75);
    EXPECT_DOUBLE_EQ(g.z[1], 0.75 * 0.75);
}

TEST(Grid, RejectsBadSpecs) {
    EXPECT_THROW(sample_topography({0.0, 1.0, 0}, {}), ConfigError);
    EXPECT_THROW(sample_topography({1.0, 1.0, 3}, {}), ConfigError);
    EXPECT_THROW(sample_topography({0.0, 1.0, 3}, [](double) { return std::nan(""); }), ConfigError);
}

TEST(Primitives, RoundTrip) {
    FlowState s({2.0, 0.5, 4.0}, {1.0, -0.25, 0.0}, 1.5);
    const std::vector<double> z{0.0, 0.1, 0.2};
    const auto r = primitives_from_conserved(s, z, 9.81);
    EXPECT_DOUBLE_EQ(r.tau[0], 0.5);
    EXPECT_DOUBLE_EQ(r.u[1], -0.5);
    EXPECT_DOUBLE_EQ(r.pi[2], 0.5 * 9.81 * 16.0);
    const auto back = conserved_from_primitives(r, s.time);
    EXPECT_EQ(back.h, s.h);
    EXPECT_EQ(back.hu, s.hu);
    EXPECT_EQ(back.time, 1.5);
}

TEST(Primitives, RejectsNonPositiveDepth) {
    FlowState s({1.0, 0.0, 1.0}, {0.0, 0.0, 0.0});
    try {
        primitives_from_conserved(s, std::vector<double>(3, 0.0), 9.81);
        FAIL();
    } catch (const PositivityError& e) {
        EXPECT_EQ(e.cell(), 1u);
    }
    FlowState bad({1.0}, {std::nan("")});
    EXPECT_THROW(require_admissible(bad), StepFailure);
}

TEST(MassIncrements, CellsAndInterfaces) {
    const auto g = swlp_test::make_grid(3, 0.0, 3.0);
    FlowState s({1.0, 2.0, 4.0}, {0.0, 0.0, 0.0});
    const auto m = mass_increments(s, g);
    EXPECT_EQ(m.dm, (std::vector<double>{1.0, 2.0, 4.0}));
    ASSERT_EQ(m.dm_half.size(), 4u);
    EXPECT_DOUBLE_EQ(m.dm_half[0], 1.0);  // Neumann ghost copies the cell
    EXPECT_DOUBLE_EQ(m.dm_half[1], 1.5);
    EXPECT_DOUBLE_EQ(m.dm_half[3], 4.0);
    const auto p = mass_increments(s, g, BoundaryPolicy::periodic());
    EXPECT_DOUBLE_EQ(p.dm_half[0], 2.5);
}

TEST(Totals, MassAndMomentum) {
    FlowState s({1.0, 2.0}, {0.5, -1.5});
    EXPECT_DOUBLE_EQ(total_mass(s, 0.5), 1.5);
    EXPECT_DOUBLE_EQ(total_momentum(s, 0.5), -0.5);
}
