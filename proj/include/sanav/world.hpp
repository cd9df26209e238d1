#ifndef SANAV_WORLD_HPP
#define SANAV_WORLD_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sanav/geometry.hpp"

namespace sanav {

struct Pose2 {
    Point2 position;
    double heading = 0.0;

    constexpr bool operator==(const Pose2&) const = default;
};

namespace cost {
inline constexpr std::uint8_t free_space = 0;
inline constexpr std::uint8_t lethal_threshold = 253;
inline constexpr std::uint8_t inscribed = 254;
inline constexpr std::uint8_t lethal = 255;
} // namespace cost

// Axis-aligned filled obstacle, in world meters.
struct Rect {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    constexpr bool operator==(const Rect&) const = default;
};

// Row-major cost grid. Cell (i, j) covers [origin + i*res, origin + (i+1)*res)
// along x and the same along y; queries outside the grid are lethal.
class OccupancyGrid {
public:
    OccupancyGrid() = default;
    OccupancyGrid(int width, int height, double resolution, Point2 origin = {})
        : width_(width), height_(height), resolution_(resolution), origin_(origin),
          cells_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), cost::free_space) {
        if (!(resolution > 0.0)) throw Error("grid.resolution must be positive");
        if (width <= 0 || height <= 0) throw Error("grid dimensions must be positive");
    }

    [[nodiscard]] int width() const { return width_; }
    [[nodiscard]] int height() const { return height_; }
    [[nodiscard]] double resolution() const { return resolution_; }
    [[nodiscard]] Point2 origin() const { return origin_; }
    [[nodiscard]] const std::vector<std::uint8_t>& cells() const { return cells_; }

    [[nodiscard]] bool in_bounds(int i, int j) const { return i >= 0 && j >= 0 && i < width_ && j < height_; }

    [[nodiscard]] std::uint8_t at(int i, int j) const {
        return in_bounds(i, j) ? cells_[index(i, j)] : cost::lethal;
    }
    void set(int i, int j, std::uint8_t c) {
        if (in_bounds(i, j)) cells_[index(i, j)] = c;
    }

    [[nodiscard]] std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(i);
    }

    // Cell containing p (floor); may be out of bounds.
    [[nodiscard]] std::pair<int, int> cell_of(Point2 p) const {
        return {static_cast<int>(std::floor((p.x - origin_.x) / resolution_)),
                static_cast<int>(std::floor((p.y - origin_.y) / resolution_))};
    }

    [[nodiscard]] Point2 cell_center(int i, int j) const {
        return {origin_.x + (i + 0.5) * resolution_, origin_.y + (j + 0.5) * resolution_};
    }

    [[nodiscard]] static bool is_lethal(std::uint8_t c) { return c >= cost::lethal_threshold; }

    void fill_rect(const Rect& r, std::uint8_t c = cost::lethal) {
        // Cells whose centers fall inside the rectangle.
        const auto [i0, j0] = cell_of({std::min(r.x0, r.x1), std::min(r.y0, r.y1)});
        const auto [i1, j1] = cell_of({std::max(r.x0, r.x1), std::max(r.y0, r.y1)});
        for (int j = std::max(j0, 0); j <= std::min(j1, height_ - 1); ++j) {
            for (int i = std::max(i0, 0); i <= std::min(i1, width_ - 1); ++i) {
                const Point2 c0 = cell_center(i, j);
                if (c0.x >= std::min(r.x0, r.x1) && c0.x <= std::max(r.x0, r.x1) &&
                    c0.y >= std::min(r.y0, r.y1) && c0.y <= std::max(r.y0, r.y1))
                    cells_[index(i, j)] = c;
            }
        }
    }

    bool operator==(const OccupancyGrid&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    double resolution_ = 0.05;
    Point2 origin_{};
    std::vector<std::uint8_t> cells_;
};

// Nearest-cell lookup; lethal outside the grid.
inline std::uint8_t occupancy_at(const OccupancyGrid& grid, Point2 p) {
    const auto [i, j] = grid.cell_of(p);
    return grid.at(i, j);
}

// True iff any cell whose center lies within radius of pose is lethal (cost >=
// 253). Cells beyond the grid edge count as lethal.
inline bool footprint_collides(const OccupancyGrid& grid, Point2 pose, double radius) {
    const double res = grid.resolution();
    const auto [ci, cj] = grid.cell_of(pose);
    const int reach = static_cast<int>(std::ceil(radius / res)) + 1;
    const double r2 = radius * radius;
    for (int j = cj - reach; j <= cj + reach; ++j) {
        for (int i = ci - reach; i <= ci + reach; ++i) {
            const Point2 c = grid.cell_center(i, j);
            const double dx = c.x - pose.x, dy = c.y - pose.y;
            if (dx * dx + dy * dy <= r2 && OccupancyGrid::is_lethal(grid.at(i, j))) return true;
        }
    }
    return false;
}

// Distance from p to the closest point of any lethal cell within max_range;
// returns max_range when none is closer. Out-of-bounds cells are lethal.
inline double distance_to_lethal(const OccupancyGrid& grid, Point2 p, double max_range) {
    const double res = grid.resolution();
    const auto [ci, cj] = grid.cell_of(p);
    const int reach = static_cast<int>(std::ceil(max_range / res)) + 1;
    double best = max_range;
    for (int j = cj - reach; j <= cj + reach; ++j) {
        for (int i = ci - reach; i <= ci + reach; ++i) {
            if (!OccupancyGrid::is_lethal(grid.at(i, j))) continue;
            const Point2 c = grid.cell_center(i, j);
            const double dx = std::max(std::abs(p.x - c.x) - 0.5 * res, 0.0);
            const double dy = std::max(std::abs(p.y - c.y) - 0.5 * res, 0.0);
            best = std::min(best, std::hypot(dx, dy));
        }
    }
    return best;
}

// Costmap inflation: cells within inscribed_radius of a lethal cell become
// 254, then cost decays linearly to 0 at decay_radius. Distances are measured
// between cell centers.
inline OccupancyGrid inflate(const OccupancyGrid& raw, double inscribed_radius, double decay_radius) {
    OccupancyGrid out = raw;
    const double res = raw.resolution();
    const int reach = static_cast<int>(std::ceil(decay_radius / res));
    auto inflated_cost = [&](double d) -> std::uint8_t {
        if (d <= inscribed_radius) return cost::inscribed;
        if (d >= decay_radius) return cost::free_space;
        const double frac = (decay_radius - d) / (decay_radius - inscribed_radius);
        return static_cast<std::uint8_t>(std::floor(cost::inscribed * frac));
    };
    for (int j = 0; j < raw.height(); ++j) {
        for (int i = 0; i < raw.width(); ++i) {
            if (!OccupancyGrid::is_lethal(raw.at(i, j))) continue;
            // Interior lethal cells add nothing their boundary neighbors do not.
            bool boundary = false;
            for (int dj = -1; dj <= 1 && !boundary; ++dj)
                for (int di = -1; di <= 1 && !boundary; ++di)
                    if (raw.in_bounds(i + di, j + dj) && !OccupancyGrid::is_lethal(raw.at(i + di, j + dj))) boundary = true;
            if (!boundary) continue;
            for (int dj = -reach; dj <= reach; ++dj) {
                for (int di = -reach; di <= reach; ++di) {
                    const int ni = i + di, nj = j + dj;
                    if (!raw.in_bounds(ni, nj) || OccupancyGrid::is_lethal(raw.at(ni, nj))) continue;
                    const std::uint8_t c = inflated_cost(res * std::hypot(di, dj));
                    if (c > out.at(ni, nj)) out.set(ni, nj, c);
                }
            }
        }
    }
    // The grid edge behaves like a wall.
    for (int j = 0; j < raw.height(); ++j) {
        for (int i = 0; i < raw.width(); ++i) {
            if (OccupancyGrid::is_lethal(raw.at(i, j))) continue;
            const int edge = std::min({i + 1, j + 1, raw.width() - i, raw.height() - j});
            if (edge > reach) continue;
            const std::uint8_t c = inflated_cost(res * edge);
            if (c > out.at(i, j)) out.set(i, j, c);
        }
    }
    return out;
}

// Constant-speed polyline walker. Stationary when the waypoint list is empty
// or speed is zero.
struct HumanMotion {
    std::vector<Point2> waypoints;
    double speed = 0.0;

    bool operator==(const HumanMotion&) const = default;
    [[nodiscard]] bool stationary() const { return waypoints.empty() || speed <= 0.0; }
};

struct HumanAgent {
    std::string id;
    Pose2 pose;
    HumanMotion motion;

    bool operator==(const HumanAgent&) const = default;
};

// Live human state inside the simulator.
struct HumanState {
    std::string id;
    Pose2 pose;
    Point2 velocity; // world frame, m/s
    double travelled = 0.0;
    std::vector<Point2> route; // start followed by waypoints
    double speed = 0.0;

    [[nodiscard]] Point2 predict(double dt) const { return pose.position + velocity * dt; }
};

// Point at arc length s along a polyline, clamped to its end; also reports
// the unit direction of the segment in use (zero once the end is reached).
inline std::pair<Point2, Point2> polyline_at(const std::vector<Point2>& route, double s) {
    if (route.empty()) return {{}, {}};
    double remaining = std::max(0.0, s);
    for (std::size_t i = 1; i < route.size(); ++i) {
        const Point2 seg = route[i] - route[i - 1];
        const double len = seg.norm();
        if (len <= 0.0) continue;
        if (remaining < len) return {route[i - 1] + seg * (remaining / len), seg * (1.0 / len)};
        remaining -= len;
    }
    return {route.back(), {}};
}

inline HumanState make_human_state(const HumanAgent& h) {
    HumanState s;
    s.id = h.id;
    s.pose = h.pose;
    s.speed = h.motion.stationary() ? 0.0 : h.motion.speed;
    s.route.push_back(h.pose.position);
    if (!h.motion.stationary())
        s.route.insert(s.route.end(), h.motion.waypoints.begin(), h.motion.waypoints.end());
    const auto [p, dir] = polyline_at(s.route, 0.0);
    s.velocity = dir * s.speed;
    if (s.speed > 0.0 && dir.norm() > 0.0) s.pose.heading = std::atan2(dir.y, dir.x);
    return s;
}

// Moves a human speed*dt further along its route.
inline void advance_human(HumanState& h, double dt) {
    if (h.speed <= 0.0) return;
    h.travelled += h.speed * dt;
    const auto [p, dir] = polyline_at(h.route, h.travelled);
    h.pose.position = p;
    h.velocity = dir * h.speed;
    if (dir.norm() > 0.0) h.pose.heading = std::atan2(dir.y, dir.x);
}

enum class Formation { o_formation, queue };

struct GroupSpec {
    std::string id;
    std::vector<std::string> member_ids; // queue: ordered from the head
    Formation formation = Formation::o_formation;
    std::optional<Point2> queue_head_goal; // the desk
    double queue_standoff_m = 1.2;
    // Queue advancement: every interval the head walks to exit_point and the
    // rest step forward into the vacated places. Zero disables it.
    double service_interval_s = 0.0;
    std::optional<Point2> exit_point;

    bool operator==(const GroupSpec&) const = default;
};

struct RobotSpec {
    double footprint_radius = 0.3;
    bool holonomic = false;
    double vx_min = 0.0, vx_max = 0.55;
    double vy_limit = 0.1;
    double vtheta_min = -1.0, vtheta_max = 1.0;
    double accel_lin = 2.5;
    double accel_ang = 3.2;

    bool operator==(const RobotSpec&) const = default;
};

struct CostWeights {
    double alpha = 1.0;  // path distance
    double beta = 2.0;   // goal distance
    double gamma = 1.0;  // global-path cross-track
    double delta = 0.02; // occupancy

    bool operator==(const CostWeights&) const = default;
};

enum class HumanPrediction { constant_velocity, static_position };

struct SampleCounts {
    int vx = 10;
    int vy = 3;
    int vtheta = 20;

    bool operator==(const SampleCounts&) const = default;
};

struct PlannerConfig {
    double horizon_s = 1.7;
    double dt_s = 0.1;
    SampleCounts samples;
    CostWeights weights;
    double id_gate_m = 1.5;
    double clamp_m = 0.01;
    double replan_period_s = 2.0;
    double goal_tolerance_m = 0.25;
    double guard_radius_m = 0.45;
    double human_disc_margin_m = 0.1;
    double inflation_decay_m = 1.0;
    double timeout_s = 120.0;
    int stuck_limit = 50;
    HumanPrediction human_prediction = HumanPrediction::constant_velocity;

    bool operator==(const PlannerConfig&) const = default;
};

struct HandSocialGoal {
    Point2 position;
    bool terminal = false;

    bool operator==(const HandSocialGoal&) const = default;
};

// How a grid was described in the scenario file, kept so files round-trip.
struct GridSpec {
    double width_m = 0.0;
    double height_m = 0.0;
    double resolution = 0.05;
    Point2 origin;
    std::vector<Rect> rectangles;

    bool operator==(const GridSpec&) const = default;
};

struct Scenario {
    std::string name;
    OccupancyGrid grid;
    std::optional<GridSpec> grid_spec; // absent for inline cell arrays
    std::vector<HumanAgent> humans;
    std::vector<GroupSpec> groups;
    Pose2 start_pose;
    Point2 final_goal;
    std::optional<HandSocialGoal> hand_social_goal;
    std::vector<Polygon> activity_spaces;
    RobotSpec robot;
    PlannerConfig planner;

    [[nodiscard]] const HumanAgent* find_human(const std::string& id) const {
        for (const auto& h : humans)
            if (h.id == id) return &h;
        return nullptr;
    }
};

inline bool operator==(const Polygon& a, const Polygon& b) { return a.vertices == b.vertices; }

inline bool operator==(const Scenario& a, const Scenario& b) {
    return a.name == b.name && a.grid == b.grid && a.grid_spec == b.grid_spec && a.humans == b.humans &&
           a.groups == b.groups && a.start_pose == b.start_pose && a.final_goal == b.final_goal &&
           a.hand_social_goal == b.hand_social_goal && a.activity_spaces == b.activity_spaces &&
           a.robot == b.robot && a.planner == b.planner;
}

// Throws Error naming the offending field when an invariant does not hold.
inline void validate(const Scenario& s) {
    if (!(s.robot.footprint_radius > 0.0)) throw Error("robot.footprint_radius must be positive");
    if (s.robot.vx_max < s.robot.vx_min) throw Error("robot.limits.vx: max below min");
    if (s.robot.vtheta_max < s.robot.vtheta_min) throw Error("robot.limits.vtheta: max below min");
    if (s.robot.vy_limit < 0.0) throw Error("robot.limits.vy must be non-negative");
    if (!(s.robot.accel_lin > 0.0) || !(s.robot.accel_ang > 0.0)) throw Error("robot.limits.accel must be positive");
    if (!(s.planner.dt_s > 0.0) || s.planner.horizon_s < s.planner.dt_s) throw Error("planner.horizon_s must be >= dt_s > 0");
    if (s.planner.samples.vx < 1 || s.planner.samples.vy < 1 || s.planner.samples.vtheta < 1)
        throw Error("planner.samples counts must be >= 1");
    const auto& w = s.planner.weights;
    for (double v : {w.alpha, w.beta, w.gamma, w.delta})
        if (!(v >= 0.0) || !std::isfinite(v)) throw Error("planner.weights must be finite and >= 0");
    if (s.planner.guard_radius_m <= s.robot.footprint_radius)
        throw Error("planner.guard_radius_m must exceed robot.footprint_radius");
    if (!s.start_pose.position.finite() || !s.final_goal.finite()) throw Error("start_pose/final_goal must be finite");
    if (OccupancyGrid::is_lethal(occupancy_at(s.grid, s.start_pose.position)))
        throw Error("start_pose in lethal cell");
    if (OccupancyGrid::is_lethal(occupancy_at(s.grid, s.final_goal))) throw Error("final_goal in lethal cell");
    if (s.hand_social_goal && OccupancyGrid::is_lethal(occupancy_at(s.grid, s.hand_social_goal->position)))
        throw Error("hand_social_goal in lethal cell");
    for (const auto& poly : s.activity_spaces)
        if (poly.vertices.size() < 3) throw Error("activity_spaces: polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < s.humans.size(); ++i) {
        const auto& h = s.humans[i];
        if (h.id.empty()) throw Error("humans[" + std::to_string(i) + "].id must be non-empty");
        if (h.motion.speed < 0.0) throw Error("humans[" + h.id + "].speed must be >= 0");
        for (std::size_t k = 0; k < i; ++k)
            if (s.humans[k].id == h.id) throw Error("humans: duplicate id " + h.id);
    }
    for (const auto& g : s.groups) {
        if (g.member_ids.size() < 2) throw Error("groups[" + g.id + "].members: need at least 2");
        for (const auto& m : g.member_ids)
            if (!s.find_human(m)) throw Error("groups[" + g.id + "].members: unknown human " + m);
        if (g.formation == Formation::queue && !g.queue_head_goal)
            throw Error("groups[" + g.id + "].queue_head_goal required for queue formation");
        if (g.queue_standoff_m <= 0.0) throw Error("groups[" + g.id + "].standoff_m must be positive");
    }
}

// Builds a grid of the given extent with every rectangle filled lethal.
inline OccupancyGrid grid_from_spec(const GridSpec& spec) {
    const int w = static_cast<int>(std::lround(spec.width_m / spec.resolution));
    const int h = static_cast<int>(std::lround(spec.height_m / spec.resolution));
    OccupancyGrid g(w, h, spec.resolution, spec.origin);
    for (const auto& r : spec.rectangles) g.fill_rect(r);
    return g;
}

} // namespace sanav

#endif
