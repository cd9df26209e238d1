#ifndef SANAV_LOCAL_PLANNER_HPP
#define SANAV_LOCAL_PLANNER_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sanav/global_planner.hpp"
#include "sanav/objectives.hpp"
#include "sanav/paccet.hpp"
#include "sanav/social_goal.hpp"
#include "sanav/trajectory.hpp"

namespace sanav {

enum class PlannerKind { traditional, paccet };

inline const char* to_string(PlannerKind k) { return k == PlannerKind::paccet ? "paccet" : "traditional"; }

namespace detail {
// n evenly spaced values over [lo, hi]. When the window straddles zero the
// sample nearest zero is snapped onto it so straight and stopped motions stay
// exactly representable.
inline std::vector<double> linspace_with_zero(double lo, double hi, int n) {
    std::vector<double> out;
    if (n <= 1 || hi <= lo) {
        out.push_back(std::clamp(0.0, lo, hi));
        return out;
    }
    for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
    if (lo < 0.0 && hi > 0.0) {
        auto nearest = std::min_element(out.begin(), out.end(),
                                         [](double a, double b) { return std::abs(a) < std::abs(b); });
        *nearest = 0.0;
    }
    return out;
}
} // namespace detail

// Uniform grid over the velocity window reachable within one control period.
// Non-holonomic robots get a single v_y = 0 sample.
inline std::vector<VelocityCommand> sample_velocities(const VelocityCommand& current, const RobotSpec& spec,
                                                      SampleCounts counts, double control_dt) {
    if (counts.vx < 1 || counts.vy < 1 || counts.vtheta < 1) throw Error("sample_velocities: counts must be >= 1");
    const double dv = spec.accel_lin * control_dt;
    const double dw = spec.accel_ang * control_dt;
    const double vx_lo = std::max(spec.vx_min, current.vx - dv);
    const double vx_hi = std::min(spec.vx_max, current.vx + dv);
    const double w_lo = std::max(spec.vtheta_min, current.vtheta - dw);
    const double w_hi = std::min(spec.vtheta_max, current.vtheta + dw);

    const auto vxs = detail::linspace_with_zero(vx_lo, std::max(vx_lo, vx_hi), counts.vx);
    const auto ws = detail::linspace_with_zero(w_lo, std::max(w_lo, w_hi), counts.vtheta);
    std::vector<double> vys{0.0};
    if (spec.holonomic) {
        const double vy_lo = std::max(-spec.vy_limit, current.vy - dv);
        const double vy_hi = std::min(spec.vy_limit, current.vy + dv);
        vys = detail::linspace_with_zero(vy_lo, std::max(vy_lo, vy_hi), counts.vy);
    }
    std::vector<VelocityCommand> out;
    out.reserve(vxs.size() * vys.size() * ws.size());
    for (double vx : vxs)
        for (double vy : vys)
            for (double w : ws) out.push_back({vx, vy, w});
    return out;
}

// Constant-command rollout. Each substep turns first, then translates along
// the new heading. Poses start one substep in and end exactly at the horizon.
inline CandidateTrajectory forward_simulate(const RobotState& state, const VelocityCommand& cmd, double horizon,
                                            double dt) {
    if (!(dt > 0.0) || horizon < dt) throw Error("forward_simulate: need horizon >= dt > 0");
    CandidateTrajectory traj;
    traj.command = cmd;
    const int steps = static_cast<int>(std::ceil(horizon / dt - 1e-9));
    traj.poses.reserve(static_cast<std::size_t>(steps));
    Pose2 p = state.pose;
    double t = 0.0;
    for (int k = 0; k < steps; ++k) {
        const double h = (k + 1 == steps) ? horizon - t : dt;
        p.heading = wrap_angle(p.heading + cmd.vtheta * h);
        const double c = std::cos(p.heading), s = std::sin(p.heading);
        const Point2 step{(cmd.vx * c - cmd.vy * s) * h, (cmd.vx * s + cmd.vy * c) * h};
        traj.terms.path_dist += step.norm();
        p.position = p.position + step;
        t += h;
        traj.poses.push_back({p, t});
    }
    return traj;
}

struct PlanResult {
    std::optional<VelocityCommand> command; // empty when the planner is stuck
    std::optional<std::size_t> best;        // index into candidates
    std::vector<CandidateTrajectory> candidates; // valid candidates, in sampling order
    std::size_t sampled = 0;
    ObjectiveLayout layout;

    [[nodiscard]] bool stuck() const { return !command.has_value(); }
    [[nodiscard]] const CandidateTrajectory& chosen() const { return candidates.at(*best); }
};

// Humans as seen by the planner: a position for every rollout time.
inline std::vector<HumanTrack> human_tracks(std::span<const HumanState> humans, HumanPrediction prediction) {
    std::vector<HumanTrack> tracks;
    for (const auto& h : humans) {
        const Point2 p = h.pose.position;
        const Point2 v = prediction == HumanPrediction::constant_velocity ? h.velocity : Point2{};
        tracks.push_back({h.id, [p, v](double t) { return p + v * t; }});
    }
    std::sort(tracks.begin(), tracks.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return tracks;
}

// Fitted circle of the first O-formation group with enough live members.
inline std::optional<Circle> formation_circle(const Scenario& scenario, std::span<const HumanState> humans) {
    for (const auto& g : scenario.groups) {
        if (g.formation != Formation::o_formation) continue;
        const auto members = group_members(g, humans);
        if (members.size() < 3) {
            if (members.size() == 2) {
                const Point2 mid = (members[0].position + members[1].position) * 0.5;
                const double r = 0.5 * distance(members[0].position, members[1].position);
                if (r > 0.0) return Circle(mid, r);
            }
            continue;
        }
        std::vector<Point2> pts;
        for (const auto& m : members) pts.push_back(m.position);
        return fit_circle(pts);
    }
    return std::nullopt;
}

// Samples, rolls out, filters and ranks candidate commands for one tick.
class LocalPlanner {
public:
    // costmap is the inflated grid; both references must outlive the planner.
    LocalPlanner(const Scenario& scenario, const OccupancyGrid& costmap) : scenario_(scenario), costmap_(costmap) {}

    // Multi-objective selection over [base, ID per human, GD, SGD].
    [[nodiscard]] PlanResult plan_step(const RobotState& robot, std::span<const HumanState> humans,
                                       const GlobalPath& global_path, Point2 active_goal,
                                       std::optional<Point2> social_goal) const {
        const auto tracks = human_tracks(humans, scenario_.planner.human_prediction);
        PlanResult result = generate(robot, tracks, global_path, active_goal);
        if (result.candidates.empty()) return result;

        ObjectiveContext ctx;
        ctx.humans = tracks;
        ctx.group = formation_circle(scenario_, humans);
        ctx.social_goal = social_goal;
        ctx.id_gate_m = scenario_.planner.id_gate_m;
        ctx.clamp_m = scenario_.planner.clamp_m;
        result.layout = ctx.layout();

        std::vector<paccet::ObjectiveVector> objectives;
        std::vector<double> base;
        objectives.reserve(result.candidates.size());
        for (auto& c : result.candidates) {
            c.objectives = assemble_objectives(c, ctx);
            objectives.push_back(c.objectives);
            base.push_back(c.base_cost);
        }
        const auto ranking = paccet::rank(objectives, base);
        for (std::size_t i = 0; i < result.candidates.size(); ++i) result.candidates[i].fitness = ranking.fitness[i];
        result.best = ranking.order.front();
        result.command = result.candidates[*result.best].command;
        return result;
    }

    // Baseline: the same pipeline ranked by the scalar base cost alone.
    [[nodiscard]] PlanResult plan_step_traditional(const RobotState& robot, std::span<const HumanState> humans,
                                                   const GlobalPath& global_path, Point2 active_goal) const {
        const auto tracks = human_tracks(humans, scenario_.planner.human_prediction);
        PlanResult result = generate(robot, tracks, global_path, active_goal);
        if (result.candidates.empty()) return result;
        std::size_t best = 0;
        for (std::size_t i = 0; i < result.candidates.size(); ++i) {
            auto& c = result.candidates[i];
            c.objectives = {c.base_cost};
            c.fitness = c.base_cost;
            if (c.base_cost < result.candidates[best].base_cost) best = i;
        }
        result.best = best;
        result.command = result.candidates[best].command;
        return result;
    }

    // Rollout pose is invalid if the footprint touches a lethal cell or comes
    // within footprint + margin of a (predicted) human.
    [[nodiscard]] bool pose_valid(Point2 p, double t, std::span<const HumanTrack> tracks) const {
        if (footprint_collides(scenario_.grid, p, scenario_.robot.footprint_radius)) return false;
        const double disc = scenario_.robot.footprint_radius + scenario_.planner.human_disc_margin_m;
        for (const auto& h : tracks)
            if (distance(p, h.at(t)) < disc) return false;
        return true;
    }

private:
    [[nodiscard]] PlanResult generate(const RobotState& robot, std::span<const HumanTrack> tracks,
                                      const GlobalPath& global_path, Point2 active_goal) const {
        const auto& cfg = scenario_.planner;
        PlanResult result;
        const auto commands = sample_velocities(robot.velocity, scenario_.robot, cfg.samples, cfg.dt_s);
        result.sampled = commands.size();
        for (const auto& cmd : commands) {
            CandidateTrajectory traj = forward_simulate(robot, cmd, cfg.horizon_s, cfg.dt_s);
            traj.valid = std::all_of(traj.poses.begin(), traj.poses.end(),
                                     [&](const TimedPose& tp) { return pose_valid(tp.pose.position, tp.t, tracks); });
            if (!traj.valid) continue;
            double occ = 0.0;
            for (const auto& tp : traj.poses) occ = std::max(occ, static_cast<double>(occupancy_at(costmap_, tp.pose.position)));
            traj.terms.occ_cost = occ;
            traj.terms.goal_dist = distance(traj.endpoint().position, active_goal);
            traj.terms.heading_diff = distance_to_polyline(traj.endpoint().position, global_path.waypoints);
            traj.base_cost = base_cost(traj.terms, cfg.weights);
            result.candidates.push_back(std::move(traj));
        }
        return result;
    }

    const Scenario& scenario_;
    const OccupancyGrid& costmap_;
};

} // namespace sanav

#endif
