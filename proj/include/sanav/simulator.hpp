#ifndef SANAV_SIMULATOR_HPP
#define SANAV_SIMULATOR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sanav/global_planner.hpp"
#include "sanav/local_planner.hpp"
#include "sanav/scenario_io.hpp"
#include "sanav/social_goal.hpp"

namespace sanav {

enum class Outcome { running, reached_goal, stuck, timeout, guard_stop };

inline const char* to_string(Outcome o) {
    switch (o) {
    case Outcome::reached_goal: return "reached_goal";
    case Outcome::stuck: return "stuck";
    case Outcome::timeout: return "timeout";
    case Outcome::guard_stop: return "guard_stop";
    default: return "running";
    }
}

struct TickRecord {
    double t = 0.0;
    RobotState robot;
    std::vector<Point2> humans; // in EpisodeLog::human_ids order
    VelocityCommand command;    // command executed during the tick that ended at t
    std::optional<double> best_fitness;
    std::optional<Point2> social_goal;
    bool vetoed = false;
};

struct EpisodeLog {
    std::string scenario_name;
    std::string scenario_hash;
    PlannerKind planner = PlannerKind::paccet;
    Outcome outcome = Outcome::running;
    double dt = 0.1;
    Point2 start;
    Point2 final_goal;
    std::optional<Point2> social_goal; // last social goal the episode used
    std::vector<Point2> initial_global_path;
    std::vector<std::string> human_ids;
    std::vector<TickRecord> ticks;

    [[nodiscard]] std::size_t guard_vetoes() const {
        std::size_t n = 0;
        for (const auto& t : ticks) n += t.vetoed ? 1 : 0;
        return n;
    }
};

// True when executing a command would bring the robot's next pose strictly
// closer than guard_radius to a human or to a lethal cell.
inline bool collision_guard(Point2 next_position, const OccupancyGrid& grid, std::span<const Point2> humans,
                            double guard_radius) {
    for (const auto& h : humans)
        if (distance(next_position, h) < guard_radius) return true;
    return distance_to_lethal(grid, next_position, guard_radius) < guard_radius;
}

// One robot-and-humans world advanced in fixed ticks.
class Simulator {
public:
    Simulator(Scenario scenario, PlannerKind kind)
        : scenario_(std::move(scenario)),
          kind_(kind),
          costmap_(inflate(scenario_.grid, scenario_.robot.footprint_radius, scenario_.planner.inflation_decay_m)),
          planner_(scenario_, costmap_) {
        validate(scenario_);
        for (const auto& h : scenario_.humans) humans_.push_back(make_human_state(h));
        for (const auto& g : scenario_.groups) next_service_.push_back(g.service_interval_s);
        robot_.pose = scenario_.start_pose;

        log_.scenario_name = scenario_.name;
        log_.scenario_hash = io::scenario_hash(scenario_);
        log_.planner = kind_;
        log_.dt = scenario_.planner.dt_s;
        log_.start = scenario_.start_pose.position;
        log_.final_goal = scenario_.final_goal;
        for (const auto& h : humans_) log_.human_ids.push_back(h.id);

        const auto goal = active_goal();
        log_.social_goal = goal.social ? std::optional<Point2>(goal.social->position) : std::nullopt;
        try {
            path_ = plan_global(costmap_, robot_.pose.position, goal.position, 0.0);
            path_goal_ = goal.position;
            log_.initial_global_path = path_->waypoints;
        } catch (const Error&) {
            path_.reset();
        }
        TickRecord first;
        first.robot = robot_;
        first.humans = human_positions();
        first.social_goal = log_.social_goal;
        log_.ticks.push_back(first);
        check_goal(goal);
    }

    // The planner holds references into this object.
    Simulator(const Simulator&) = delete;
    Simulator& operator=(const Simulator&) = delete;

    [[nodiscard]] bool done() const { return log_.outcome != Outcome::running; }
    [[nodiscard]] const EpisodeLog& log() const { return log_; }
    [[nodiscard]] const OccupancyGrid& costmap() const { return costmap_; }
    [[nodiscard]] const std::vector<HumanState>& humans() const { return humans_; }
    [[nodiscard]] const RobotState& robot() const { return robot_; }

    // Advances the world by one tick and returns its record.
    const TickRecord& step() {
        const double dt = scenario_.planner.dt_s;
        ++tick_;
        const double now = static_cast<double>(tick_) * dt;

        for (auto& h : humans_) advance_human(h, dt);
        serve_queues(now);

        const auto goal = active_goal();
        if (!path_ || !path_goal_ || distance(*path_goal_, goal.position) > 1e-9 ||
            now - path_->computed_at >= scenario_.planner.replan_period_s) {
            try {
                path_ = plan_global(costmap_, robot_.pose.position, goal.position, now);
                path_goal_ = goal.position;
            } catch (const Error&) {
                path_.reset();
            }
        }

        TickRecord rec;
        rec.t = now;
        rec.social_goal = goal.social ? std::optional<Point2>(goal.social->position) : std::nullopt;
        if (goal.social) log_.social_goal = goal.social->position;

        std::optional<VelocityCommand> cmd;
        if (path_) {
            PlanResult plan = kind_ == PlannerKind::paccet
                                  ? planner_.plan_step(robot_, humans_, *path_, goal.position,
                                                       goal.social ? std::optional<Point2>(goal.social->position)
                                                                   : std::nullopt)
                                  : planner_.plan_step_traditional(robot_, humans_, *path_, goal.position);
            cmd = plan.command;
            if (plan.best) rec.best_fitness = plan.chosen().fitness;
        }
        stuck_ticks_ = cmd ? 0 : stuck_ticks_ + 1;

        VelocityCommand applied = cmd.value_or(VelocityCommand{});
        if (!applied.is_zero()) {
            const Point2 next = forward_simulate(robot_, applied, dt, dt).endpoint().position;
            const auto hp = human_positions();
            if (collision_guard(next, scenario_.grid, hp, scenario_.planner.guard_radius_m)) {
                applied = VelocityCommand{};
                rec.vetoed = true;
            }
        }
        veto_ticks_ = rec.vetoed ? veto_ticks_ + 1 : 0;

        robot_.pose = forward_simulate(robot_, applied, dt, dt).endpoint();
        robot_.velocity = applied;

        rec.robot = robot_;
        rec.humans = human_positions();
        rec.command = applied;
        log_.ticks.push_back(std::move(rec));

        check_goal(goal);
        if (!done()) {
            if (stuck_ticks_ >= scenario_.planner.stuck_limit) log_.outcome = Outcome::stuck;
            else if (veto_ticks_ >= scenario_.planner.stuck_limit) log_.outcome = Outcome::guard_stop;
            else if (now >= scenario_.planner.timeout_s - 1e-9) log_.outcome = Outcome::timeout;
        }
        return log_.ticks.back();
    }

    EpisodeLog run() {
        while (!done()) step();
        return log_;
    }

private:
    struct ActiveGoal {
        Point2 position;
        bool terminal = true;
        std::optional<SocialGoal> social;
    };

    // Traditional navigation always heads for the final goal. The multi-objective
    // planner heads for the social goal when one exists; a non-terminal
    // (waypoint) social goal is dropped once reached.
    [[nodiscard]] ActiveGoal active_goal() const {
        if (kind_ == PlannerKind::traditional) return {scenario_.final_goal, true, std::nullopt};
        auto sg = select_social_goal(scenario_, humans_);
        if (!sg) return {scenario_.final_goal, true, std::nullopt};
        if (!sg->terminal && waypoint_reached_) return {scenario_.final_goal, true, std::nullopt};
        return {sg->position, sg->terminal, sg};
    }

    void check_goal(const ActiveGoal& goal) {
        if (distance(robot_.pose.position, goal.position) > scenario_.planner.goal_tolerance_m) return;
        if (goal.terminal) log_.outcome = Outcome::reached_goal;
        else waypoint_reached_ = true;
    }

    [[nodiscard]] std::vector<Point2> human_positions() const {
        std::vector<Point2> out;
        out.reserve(humans_.size());
        for (const auto& h : humans_) out.push_back(h.pose.position);
        return out;
    }

    HumanState* find(const std::string& id) {
        for (auto& h : humans_)
            if (h.id == id) return &h;
        return nullptr;
    }

    // Optional queue service: every service_interval_s the head person walks
    // to the exit point and everyone else steps forward one place.
    void serve_queues(double now) {
        for (std::size_t gi = 0; gi < scenario_.groups.size(); ++gi) {
            auto& g = scenario_.groups[gi];
            if (g.formation != Formation::queue || g.service_interval_s <= 0.0 || g.member_ids.empty()) continue;
            if (now + 1e-9 < next_service_[gi]) continue;
            next_service_[gi] += g.service_interval_s;

            std::vector<Point2> slots;
            for (const auto& id : g.member_ids) slots.push_back(find(id)->pose.position);
            HumanState* head = find(g.member_ids.front());
            const Point2 exit = g.exit_point.value_or(head->pose.position + Point2{0.0, 3.0});
            retarget(*head, exit);
            for (std::size_t k = 1; k < g.member_ids.size(); ++k) retarget(*find(g.member_ids[k]), slots[k - 1]);
            g.member_ids.erase(g.member_ids.begin());
        }
    }

    static void retarget(HumanState& h, Point2 target) {
        constexpr double walking_speed = 1.0;
        h.route = {h.pose.position, target};
        h.travelled = 0.0;
        if (h.speed <= 0.0) h.speed = walking_speed;
        const auto [p, dir] = polyline_at(h.route, 0.0);
        h.velocity = dir * h.speed;
    }

    Scenario scenario_;
    PlannerKind kind_;
    OccupancyGrid costmap_;
    LocalPlanner planner_;
    std::vector<HumanState> humans_;
    std::vector<double> next_service_;
    RobotState robot_;
    std::optional<GlobalPath> path_;
    std::optional<Point2> path_goal_;
    EpisodeLog log_;
    std::int64_t tick_ = 0;
    int stuck_ticks_ = 0;
    int veto_ticks_ = 0;
    bool waypoint_reached_ = false;
};

inline EpisodeLog run_episode(const Scenario& scenario, PlannerKind kind) {
    Simulator sim(scenario, kind);
    return sim.run();
}

} // namespace sanav

#endif
