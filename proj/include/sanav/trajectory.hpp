#ifndef SANAV_TRAJECTORY_HPP
#define SANAV_TRAJECTORY_HPP

#include <optional>
#include <vector>

#include "sanav/world.hpp"

namespace sanav {

struct VelocityCommand {
    double vx = 0.0;
    double vy = 0.0;
    double vtheta = 0.0;

    constexpr bool operator==(const VelocityCommand&) const = default;
    [[nodiscard]] bool is_zero() const { return vx == 0.0 && vy == 0.0 && vtheta == 0.0; }
};

struct RobotState {
    Pose2 pose;
    VelocityCommand velocity;
};

struct TimedPose {
    Pose2 pose;
    double t = 0.0; // seconds after the start of the rollout
};

// Terms of the weighted base navigation cost.
struct BaseCostTerms {
    double path_dist = 0.0;    // arc length of the rollout
    double goal_dist = 0.0;    // endpoint to active goal
    double heading_diff = 0.0; // endpoint cross-track from the global path
    double occ_cost = 0.0;     // max inflated cell cost along the rollout
};

struct CandidateTrajectory {
    VelocityCommand command;
    std::vector<TimedPose> poses;
    BaseCostTerms terms;
    double base_cost = 0.0;
    std::vector<double> objectives;
    std::optional<double> fitness;
    bool valid = true;

    [[nodiscard]] const Pose2& endpoint() const { return poses.back().pose; }
};

} // namespace sanav

#endif
