#ifndef SANAV_OBJECTIVES_HPP
#define SANAV_OBJECTIVES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sanav/trajectory.hpp"

namespace sanav {

inline double base_cost(const BaseCostTerms& t, const CostWeights& w) {
    return w.alpha * t.path_dist + w.beta * t.goal_dist + w.gamma * t.heading_diff + w.delta * t.occ_cost;
}

// exp(1/d), with d held at the gate beyond it (flat tail) and at clamp near zero.
inline double interpersonal_cost(double d, double gate = 1.5, double clamp = 0.01) {
    return std::exp(1.0 / std::max(std::min(d, gate), clamp));
}

// Same shape as interpersonal_cost, gated at the group radius plus gate.
inline double group_cost(double d_group, double group_radius, double gate = 1.5, double clamp = 0.01) {
    return std::exp(1.0 / std::max(std::min(d_group, group_radius + gate), clamp));
}

// Reward-like term: grows with distance to the social goal.
inline double social_goal_cost(double d_sg) { return std::exp(d_sg); }

// Which entries an objective vector holds, in order:
// [base, ID per human (by id), GD if a group is present, SGD if a social goal is active].
struct ObjectiveLayout {
    std::vector<std::string> human_ids;
    bool has_group = false;
    bool has_social_goal = false;

    [[nodiscard]] std::size_t size() const {
        return 1 + human_ids.size() + (has_group ? 1 : 0) + (has_social_goal ? 1 : 0);
    }
    bool operator==(const ObjectiveLayout&) const = default;
};

// Human position as a function of rollout time.
struct HumanTrack {
    std::string id;
    std::function<Point2(double)> at;
};

// Everything the objectives need about one planning tick.
struct ObjectiveContext {
    std::vector<HumanTrack> humans; // sorted by id
    std::optional<Circle> group;    // fitted O-formation circle
    std::optional<Point2> social_goal;
    double id_gate_m = 1.5;
    double clamp_m = 0.01;

    [[nodiscard]] ObjectiveLayout layout() const {
        ObjectiveLayout l;
        for (const auto& h : humans) l.human_ids.push_back(h.id);
        l.has_group = group.has_value();
        l.has_social_goal = social_goal.has_value();
        return l;
    }
};

// Smallest distance between any rollout pose and the human's position at the
// same rollout time.
inline double min_human_distance(const CandidateTrajectory& traj, const HumanTrack& human) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& tp : traj.poses) best = std::min(best, distance(tp.pose.position, human.at(tp.t)));
    return best;
}

inline std::vector<double> assemble_objectives(const CandidateTrajectory& traj, const ObjectiveContext& ctx) {
    std::vector<double> out;
    out.reserve(ctx.layout().size());
    out.push_back(traj.base_cost);
    for (const auto& h : ctx.humans)
        out.push_back(interpersonal_cost(min_human_distance(traj, h), ctx.id_gate_m, ctx.clamp_m));
    if (ctx.group) {
        double d = std::numeric_limits<double>::infinity();
        for (const auto& tp : traj.poses) d = std::min(d, distance(tp.pose.position, ctx.group->center));
        out.push_back(group_cost(d, ctx.group->radius, ctx.id_gate_m, ctx.clamp_m));
    }
    if (ctx.social_goal) out.push_back(social_goal_cost(distance(traj.endpoint().position, *ctx.social_goal)));
    return out;
}

} // namespace sanav

#endif
