#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sanav/global_planner.hpp"
#include "sanav/local_planner.hpp"

using namespace sanav;

namespace {

Scenario open_space(double size = 10.0) {
    Scenario s;
    s.name = "open";
    s.grid = OccupancyGrid(static_cast<int>(size / 0.05), static_cast<int>(size / 0.05), 0.05);
    s.start_pose = {{2.0, 5.0}, 0.0};
    s.final_goal = {8.0, 5.0};
    return s;
}

GlobalPath straight_path(Point2 a, Point2 b) {
    GlobalPath p;
    p.waypoints = {a, b};
    p.length = distance(a, b);
    return p;
}

// Closed-form endpoint of a constant (v, w) unicycle arc.
Pose2 arc_endpoint(Pose2 start, double v, double w, double t) {
    if (std::abs(w) < 1e-12)
        return {{start.position.x + v * t * std::cos(start.heading), start.position.y + v * t * std::sin(start.heading)},
                start.heading};
    const double th = start.heading + w * t;
    return {{start.position.x + v / w * (std::sin(th) - std::sin(start.heading)),
             start.position.y - v / w * (std::cos(th) - std::cos(start.heading))},
            th};
}

} // namespace

TEST(SampleVelocities, NonHolonomicGrid) {
    RobotSpec spec;
    spec.vx_min = 0.0;
    spec.vx_max = 0.5;
    spec.vtheta_min = -1.0;
    spec.vtheta_max = 1.0;
    spec.accel_lin = 100.0;
    spec.accel_ang = 100.0;
    const auto cmds = sample_velocities({}, spec, {3, 3, 3}, 0.1);
    ASSERT_EQ(cmds.size(), 9u);
    for (const auto& c : cmds) EXPECT_EQ(c.vy, 0.0);
    EXPECT_EQ(cmds.front().vx, 0.0);
    EXPECT_EQ(cmds.back().vx, 0.5);
}

TEST(SampleVelocities, HolonomicGrid) {
    RobotSpec spec;
    spec.holonomic = true;
    spec.vx_max = 0.5;
    spec.vy_limit = 0.1;
    spec.accel_lin = 100.0;
    spec.accel_ang = 100.0;
    const auto cmds = sample_velocities({}, spec, {3, 3, 3}, 0.1);
    ASSERT_EQ(cmds.size(), 27u);
    double lo = 1, hi = -1;
    for (const auto& c : cmds) {
        lo = std::min(lo, c.vy);
        hi = std::max(hi, c.vy);
    }
    EXPECT_DOUBLE_EQ(lo, -0.1);
    EXPECT_DOUBLE_EQ(hi, 0.1);
}

TEST(SampleVelocities, WindowClippedToLimits) {
    RobotSpec spec;
    spec.vx_max = 0.5;
    spec.accel_lin = 0.25;
    const auto cmds = sample_velocities({0.5, 0.0, 0.0}, spec, {5, 1, 3}, 0.1);
    double hi = 0, lo = 1;
    for (const auto& c : cmds) {
        hi = std::max(hi, c.vx);
        lo = std::min(lo, c.vx);
    }
    EXPECT_DOUBLE_EQ(hi, 0.5);
    EXPECT_NEAR(lo, 0.475, 1e-12);
}

TEST(SampleVelocities, ZeroIsAlwaysRepresentableWhenInWindow) {
    RobotSpec spec;
    const auto cmds = sample_velocities({0.0, 0.0, 0.05}, spec, {4, 1, 4}, 0.1);
    EXPECT_TRUE(std::any_of(cmds.begin(), cmds.end(), [](const auto& c) { return c.vtheta == 0.0; }));
}

TEST(ForwardSimulate, StraightLine) {
    const auto t = forward_simulate({{{0, 0}, 0}, {}}, {1, 0, 0}, 1.0, 0.1);
    ASSERT_EQ(t.poses.size(), 10u);
    EXPECT_NEAR(t.endpoint().position.x, 1.0, 1e-9);
    EXPECT_NEAR(t.endpoint().position.y, 0.0, 1e-9);
    EXPECT_NEAR(t.poses.back().t, 1.0, 1e-12);
    EXPECT_NEAR(t.terms.path_dist, 1.0, 1e-9);
}

TEST(ForwardSimulate, PureRotation) {
    const auto t = forward_simulate({{{1, 2}, 0}, {}}, {0, 0, std::numbers::pi / 2}, 1.0, 0.1);
    EXPECT_NEAR(t.endpoint().position.x, 1.0, 1e-12);
    EXPECT_NEAR(t.endpoint().position.y, 2.0, 1e-12);
    EXPECT_NEAR(t.endpoint().heading, std::numbers::pi / 2, 1e-9);
}

TEST(ForwardSimulate, FullCircleReturnsNearStart) {
    const auto t = forward_simulate({{{0, 0}, 0}, {}}, {1, 0, 1}, 2.0 * std::numbers::pi, 0.1);
    EXPECT_LT(t.endpoint().position.norm(), 0.05);
}

TEST(ForwardSimulate, ArcsConvergeToClosedForm) {
    for (double w : {-0.8, -0.3, 0.2, 0.9}) {
        const Pose2 start{{1, 1}, 0.4};
        const Pose2 exact = arc_endpoint(start, 0.5, w, 1.7);
        const auto coarse = forward_simulate({start, {}}, {0.5, 0, w}, 1.7, 0.1);
        const auto fine = forward_simulate({start, {}}, {0.5, 0, w}, 1.7, 0.001);
        const double e_coarse = distance(coarse.endpoint().position, exact.position);
        const double e_fine = distance(fine.endpoint().position, exact.position);
        EXPECT_LT(e_coarse, 0.05);
        EXPECT_LT(e_fine, 1e-3);
        EXPECT_LT(e_fine, e_coarse);
    }
}

TEST(LocalPlanner, ProgressesTowardGoalInOpenSpace) {
    const Scenario s = open_space();
    const OccupancyGrid costmap = inflate(s.grid, s.robot.footprint_radius, 1.0);
    LocalPlanner planner(s, costmap);
    const RobotState robot{s.start_pose, {}};
    const auto path = straight_path(s.start_pose.position, s.final_goal);
    for (auto kind : {PlannerKind::traditional, PlannerKind::paccet}) {
        const auto r = kind == PlannerKind::paccet ? planner.plan_step(robot, {}, path, s.final_goal, std::nullopt)
                                                   : planner.plan_step_traditional(robot, {}, path, s.final_goal);
        ASSERT_FALSE(r.stuck());
        EXPECT_GT(r.command->vx, 0.0);
        EXPECT_LT(distance(r.chosen().endpoint().position, s.final_goal), distance(s.start_pose.position, s.final_goal));
    }
}

TEST(LocalPlanner, KeepsMoreDistanceFromHumanThanBaseCostWinner) {
    Scenario s = open_space();
    s.humans.push_back({"h", {{3.6, 5.3}, std::numbers::pi}, {}});
    const OccupancyGrid costmap = inflate(s.grid, s.robot.footprint_radius, 1.0);
    LocalPlanner planner(s, costmap);
    std::vector<HumanState> humans{make_human_state(s.humans[0])};
    const RobotState robot{s.start_pose, {0.4, 0, 0}};
    const auto path = straight_path(s.start_pose.position, s.final_goal);
    const auto social = planner.plan_step(robot, humans, path, s.final_goal, std::nullopt);
    const auto base = planner.plan_step_traditional(robot, humans, path, s.final_goal);
    ASSERT_FALSE(social.stuck());
    ASSERT_FALSE(base.stuck());
    const auto tracks = human_tracks(humans, HumanPrediction::constant_velocity);
    EXPECT_GT(min_human_distance(social.chosen(), tracks[0]), min_human_distance(base.chosen(), tracks[0]));
    EXPECT_EQ(social.layout.size(), 2u);
}

TEST(LocalPlanner, StuckWhenEveryCommandHitsAWall) {
    Scenario s = open_space();
    s.robot.vx_min = 0.3; // no way to stop or turn away in time
    s.robot.vtheta_min = 0.0;
    s.robot.vtheta_max = 0.0;
    s.grid.fill_rect({2.45, 0.0, 3.0, 10.0});
    const OccupancyGrid costmap = inflate(s.grid, s.robot.footprint_radius, 1.0);
    LocalPlanner planner(s, costmap);
    const RobotState robot{s.start_pose, {0.3, 0, 0}};
    const auto path = straight_path(s.start_pose.position, s.final_goal);
    EXPECT_TRUE(planner.plan_step(robot, {}, path, s.final_goal, std::nullopt).stuck());
    EXPECT_TRUE(planner.plan_step_traditional(robot, {}, path, s.final_goal).stuck());
}

TEST(LocalPlanner, HumanDiscInvalidatesPoses) {
    const Scenario s = open_space();
    LocalPlanner planner(s, s.grid);
    const std::vector<HumanTrack> tracks{{"h", [](double) { return Point2{5, 5}; }}};
    EXPECT_FALSE(planner.pose_valid({5.35, 5}, 0.0, tracks));
    EXPECT_TRUE(planner.pose_valid({5.45, 5}, 0.0, tracks));
}

TEST(HumanTracks, PredictionModes) {
    HumanAgent a{"b", {{0, 0}, 0}, {{{10, 0}}, 1.0}};
    HumanAgent b{"a", {{1, 1}, 0}, {}};
    const std::vector<HumanState> hs{make_human_state(a), make_human_state(b)};
    const auto cv = human_tracks(hs, HumanPrediction::constant_velocity);
    ASSERT_EQ(cv.size(), 2u);
    EXPECT_EQ(cv[0].id, "a"); // sorted by id
    EXPECT_NEAR(cv[1].at(1.5).x, 1.5, 1e-12);
    const auto st = human_tracks(hs, HumanPrediction::static_position);
    EXPECT_NEAR(st[1].at(1.5).x, 0.0, 1e-12);
}
