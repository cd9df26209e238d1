#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sanav/global_planner.hpp"

using namespace sanav;

TEST(StepCost, ScalesWithCellCost) {
    EXPECT_DOUBLE_EQ(step_cost(0.1, 0), 0.1);
    EXPECT_DOUBLE_EQ(step_cost(0.1, 128), 0.15);
}

TEST(PlanGlobal, EmptyGridDiagonal) {
    OccupancyGrid g(10, 10, 0.1);
    const auto path = plan_global(g, g.cell_center(0, 0), g.cell_center(9, 9));
    EXPECT_NEAR(path.length, 9.0 * std::sqrt(2.0) * 0.1, 1e-6);
    EXPECT_EQ(path.waypoints.size(), 10u);
}

TEST(PlanGlobal, StraightCorridorGivesStraightLine) {
    OccupancyGrid g(30, 5, 0.1);
    for (int i = 0; i < 30; ++i) {
        g.set(i, 0, cost::lethal);
        g.set(i, 4, cost::lethal);
    }
    const auto path = plan_global(g, g.cell_center(1, 2), g.cell_center(28, 2));
    for (auto p : path.waypoints) EXPECT_NEAR(p.y, g.cell_center(0, 2).y, 1e-12);
    EXPECT_NEAR(path.length, 2.7, 1e-9);
}

TEST(PlanGlobal, MatchesDijkstraOnRandomGrids) {
    std::mt19937_64 rng(2024);
    std::bernoulli_distribution wall(0.2);
    std::uniform_int_distribution<int> cost_dist(0, 252);
    std::bernoulli_distribution costly(0.2);
    int compared = 0;
    for (int trial = 0; trial < 60; ++trial) {
        OccupancyGrid g(30, 30, 0.1);
        for (int j = 0; j < 30; ++j)
            for (int i = 0; i < 30; ++i) {
                if (wall(rng)) g.set(i, j, cost::lethal);
                else if (costly(rng)) g.set(i, j, static_cast<std::uint8_t>(cost_dist(rng)));
            }
        g.set(0, 0, 0);
        g.set(29, 29, 0);
        const double expected = oracle::dijkstra_cost(g, 0, 0, 29, 29);
        if (!std::isfinite(expected)) {
            EXPECT_THROW(plan_global(g, g.cell_center(0, 0), g.cell_center(29, 29)), Error);
            continue;
        }
        const auto path = plan_global(g, g.cell_center(0, 0), g.cell_center(29, 29));
        EXPECT_NEAR(path.cost, expected, 1e-9);
        ++compared;
    }
    EXPECT_GT(compared, 10);
}

TEST(PlanGlobal, ErrorsOnBadEndpoints) {
    OccupancyGrid g(10, 10, 0.1);
    g.set(5, 5, cost::lethal);
    EXPECT_THROW(plan_global(g, g.cell_center(0, 0), g.cell_center(5, 5)), Error);
    EXPECT_THROW(plan_global(g, {-1.0, 0.0}, g.cell_center(1, 1)), Error);
}

TEST(PlanGlobal, WalledOffGoalIsUnreachable) {
    OccupancyGrid g(10, 10, 0.1);
    for (int j = 0; j < 10; ++j) g.set(5, j, cost::lethal);
    EXPECT_THROW(plan_global(g, g.cell_center(0, 0), g.cell_center(9, 9)), Error);
}

TEST(MaybeReplan, RespectsPeriod) {
    OccupancyGrid g(10, 10, 0.1);
    const auto first = plan_global(g, g.cell_center(0, 0), g.cell_center(9, 0), 0.0);
    const auto same = maybe_replan(first, 1.9, 2.0, g, g.cell_center(0, 0), g.cell_center(9, 0));
    EXPECT_DOUBLE_EQ(same.computed_at, 0.0);
    const auto fresh = maybe_replan(first, 2.0, 2.0, g, g.cell_center(0, 0), g.cell_center(9, 0));
    EXPECT_DOUBLE_EQ(fresh.computed_at, 2.0);
    EXPECT_DOUBLE_EQ(fresh.cost, first.cost);
}
