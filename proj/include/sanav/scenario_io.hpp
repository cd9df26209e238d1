#ifndef SANAV_SCENARIO_IO_HPP
#define SANAV_SCENARIO_IO_HPP

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "sanav/world.hpp"

// Scenario files: JSON with top-level keys
//   grid, humans, groups, start_pose, final_goal, hand_social_goal?,
//   activity_spaces?, robot, planner
// See docs/scenario_schema.md for the field-by-field reference.
namespace sanav::io {

using nlohmann::json;

namespace detail {

// Field access that names the offending path in every error.
inline const json& require(const json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) throw Error("missing field " + path + key);
    return j.at(key);
}

template <typename T>
T get_as(const json& j, const std::string& path) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw Error("invalid value for " + path);
    }
}

template <typename T>
T value_or(const json& j, const char* key, T fallback, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return get_as<T>(j.at(key), path + key);
}

inline Point2 point(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) throw Error("invalid point for " + path + " (expected [x, y])");
    const Point2 p{get_as<double>(j[0], path), get_as<double>(j[1], path)};
    if (!p.finite()) throw Error("non-finite point for " + path);
    return p;
}

inline Pose2 pose(const json& j, const std::string& path) {
    if (!j.is_array() || (j.size() != 2 && j.size() != 3)) throw Error("invalid pose for " + path + " (expected [x, y, theta])");
    Pose2 p{{get_as<double>(j[0], path), get_as<double>(j[1], path)}, 0.0};
    if (j.size() == 3) p.heading = get_as<double>(j[2], path);
    return p;
}

inline json point_json(Point2 p) { return json::array({p.x, p.y}); }
inline json pose_json(const Pose2& p) { return json::array({p.position.x, p.position.y, p.heading}); }

inline std::pair<double, double> range(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) throw Error("invalid range for " + path + " (expected [lo, hi])");
    return {get_as<double>(j[0], path), get_as<double>(j[1], path)};
}

} // namespace detail

inline const char* to_string(Formation f) { return f == Formation::queue ? "queue" : "o_formation"; }
inline const char* to_string(HumanPrediction p) {
    return p == HumanPrediction::constant_velocity ? "constant_velocity" : "static";
}

inline RobotSpec parse_robot(const json& j, RobotSpec r = {}) {
    using namespace detail;
    r.footprint_radius = value_or(j, "footprint_radius", r.footprint_radius, "robot.");
    r.holonomic = value_or(j, "holonomic", r.holonomic, "robot.");
    if (j.is_object() && j.contains("limits")) {
        const json& l = j.at("limits");
        if (l.contains("vx")) std::tie(r.vx_min, r.vx_max) = range(l.at("vx"), "robot.limits.vx");
        if (l.contains("vtheta")) std::tie(r.vtheta_min, r.vtheta_max) = range(l.at("vtheta"), "robot.limits.vtheta");
        r.vy_limit = value_or(l, "vy", r.vy_limit, "robot.limits.");
        if (l.contains("accel")) std::tie(r.accel_lin, r.accel_ang) = range(l.at("accel"), "robot.limits.accel");
    }
    return r;
}

inline PlannerConfig parse_planner(const json& j) {
    using namespace detail;
    PlannerConfig p;
    const std::string pre = "planner.";
    p.horizon_s = value_or(j, "horizon_s", p.horizon_s, pre);
    p.dt_s = value_or(j, "dt_s", p.dt_s, pre);
    if (j.is_object() && j.contains("samples")) {
        const json& s = j.at("samples");
        p.samples.vx = value_or(s, "vx", p.samples.vx, pre + "samples.");
        p.samples.vy = value_or(s, "vy", p.samples.vy, pre + "samples.");
        p.samples.vtheta = value_or(s, "vtheta", p.samples.vtheta, pre + "samples.");
    }
    if (j.is_object() && j.contains("weights")) {
        const json& w = j.at("weights");
        p.weights.alpha = value_or(w, "alpha", p.weights.alpha, pre + "weights.");
        p.weights.beta = value_or(w, "beta", p.weights.beta, pre + "weights.");
        p.weights.gamma = value_or(w, "gamma", p.weights.gamma, pre + "weights.");
        p.weights.delta = value_or(w, "delta", p.weights.delta, pre + "weights.");
    }
    p.id_gate_m = value_or(j, "id_gate_m", p.id_gate_m, pre);
    p.clamp_m = value_or(j, "clamp_m", p.clamp_m, pre);
    p.replan_period_s = value_or(j, "replan_period_s", p.replan_period_s, pre);
    p.goal_tolerance_m = value_or(j, "goal_tolerance_m", p.goal_tolerance_m, pre);
    p.guard_radius_m = value_or(j, "guard_radius_m", p.guard_radius_m, pre);
    p.human_disc_margin_m = value_or(j, "human_disc_margin_m", p.human_disc_margin_m, pre);
    p.inflation_decay_m = value_or(j, "inflation_decay_m", p.inflation_decay_m, pre);
    p.timeout_s = value_or(j, "timeout_s", p.timeout_s, pre);
    p.stuck_limit = value_or(j, "stuck_limit", p.stuck_limit, pre);
    const auto pred = value_or<std::string>(j, "human_prediction", to_string(p.human_prediction), pre);
    if (pred == "constant_velocity") p.human_prediction = HumanPrediction::constant_velocity;
    else if (pred == "static") p.human_prediction = HumanPrediction::static_position;
    else throw Error("invalid value for planner.human_prediction: " + pred);
    return p;
}

inline Scenario scenario_from_json(const json& j) {
    using namespace detail;
    if (!j.is_object()) throw Error("scenario must be a JSON object");
    Scenario s;
    s.name = value_or<std::string>(j, "name", "", "");

    const json& g = require(j, "grid", "");
    if (g.contains("cells")) {
        const int w = get_as<int>(require(g, "width", "grid."), "grid.width");
        const int h = get_as<int>(require(g, "height", "grid."), "grid.height");
        const double res = get_as<double>(require(g, "resolution", "grid."), "grid.resolution");
        const Point2 origin = g.contains("origin") ? point(g.at("origin"), "grid.origin") : Point2{};
        const auto cells = get_as<std::vector<int>>(g.at("cells"), "grid.cells");
        if (cells.size() != static_cast<std::size_t>(w) * static_cast<std::size_t>(h))
            throw Error("grid.cells: expected width*height entries");
        s.grid = OccupancyGrid(w, h, res, origin);
        for (int jj = 0; jj < h; ++jj)
            for (int ii = 0; ii < w; ++ii) {
                const int c = cells[static_cast<std::size_t>(jj) * static_cast<std::size_t>(w) + static_cast<std::size_t>(ii)];
                if (c < 0 || c > 255) throw Error("grid.cells: cost outside 0..255");
                s.grid.set(ii, jj, static_cast<std::uint8_t>(c));
            }
    } else {
        GridSpec spec;
        spec.width_m = get_as<double>(require(g, "width_m", "grid."), "grid.width_m");
        spec.height_m = get_as<double>(require(g, "height_m", "grid."), "grid.height_m");
        spec.resolution = value_or(g, "resolution", spec.resolution, "grid.");
        if (!(spec.resolution > 0.0)) throw Error("grid.resolution must be positive");
        if (g.contains("origin")) spec.origin = point(g.at("origin"), "grid.origin");
        if (g.contains("rectangles")) {
            for (const auto& r : g.at("rectangles")) {
                if (!r.is_array() || r.size() != 4) throw Error("grid.rectangles: expected [x0, y0, x1, y1]");
                spec.rectangles.push_back({get_as<double>(r[0], "grid.rectangles"), get_as<double>(r[1], "grid.rectangles"),
                                           get_as<double>(r[2], "grid.rectangles"), get_as<double>(r[3], "grid.rectangles")});
            }
        }
        s.grid = grid_from_spec(spec);
        s.grid_spec = spec;
    }

    if (j.contains("humans")) {
        for (std::size_t i = 0; i < j.at("humans").size(); ++i) {
            const json& h = j.at("humans")[i];
            const std::string path = "humans[" + std::to_string(i) + "].";
            HumanAgent a;
            a.id = get_as<std::string>(require(h, "id", path), path + "id");
            a.pose = pose(require(h, "pose", path), path + "pose");
            a.motion.speed = value_or(h, "speed", 0.0, path);
            if (h.contains("waypoints"))
                for (const auto& w : h.at("waypoints")) a.motion.waypoints.push_back(point(w, path + "waypoints"));
            s.humans.push_back(std::move(a));
        }
    }
    if (j.contains("groups")) {
        for (std::size_t i = 0; i < j.at("groups").size(); ++i) {
            const json& gj = j.at("groups")[i];
            const std::string path = "groups[" + std::to_string(i) + "].";
            GroupSpec gs;
            gs.id = value_or<std::string>(gj, "id", "g" + std::to_string(i), path);
            gs.member_ids = get_as<std::vector<std::string>>(require(gj, "members", path), path + "members");
            const auto f = get_as<std::string>(require(gj, "formation", path), path + "formation");
            if (f == "queue") gs.formation = Formation::queue;
            else if (f == "o_formation") gs.formation = Formation::o_formation;
            else throw Error("invalid value for " + path + "formation: " + f);
            if (gj.contains("queue_head_goal")) gs.queue_head_goal = point(gj.at("queue_head_goal"), path + "queue_head_goal");
            gs.queue_standoff_m = value_or(gj, "standoff_m", gs.queue_standoff_m, path);
            gs.service_interval_s = value_or(gj, "service_interval_s", gs.service_interval_s, path);
            if (gj.contains("exit_point")) gs.exit_point = point(gj.at("exit_point"), path + "exit_point");
            s.groups.push_back(std::move(gs));
        }
    }
    s.start_pose = pose(require(j, "start_pose", ""), "start_pose");
    s.final_goal = point(require(j, "final_goal", ""), "final_goal");
    if (j.contains("hand_social_goal") && !j.at("hand_social_goal").is_null()) {
        const json& h = j.at("hand_social_goal");
        HandSocialGoal hg;
        if (h.is_array()) {
            hg.position = point(h, "hand_social_goal");
        } else {
            hg.position = point(require(h, "position", "hand_social_goal."), "hand_social_goal.position");
            hg.terminal = value_or(h, "terminal", false, "hand_social_goal.");
        }
        s.hand_social_goal = hg;
    }
    if (j.contains("activity_spaces")) {
        for (const auto& poly : j.at("activity_spaces")) {
            Polygon p;
            for (const auto& v : poly) p.vertices.push_back(point(v, "activity_spaces"));
            s.activity_spaces.push_back(std::move(p));
        }
    }
    if (j.contains("robot")) s.robot = parse_robot(j.at("robot"));
    if (j.contains("planner")) {
        s.planner = parse_planner(j.at("planner"));
        // Velocity limits may also be given with the planner tunables.
        if (j.at("planner").contains("limits")) s.robot = parse_robot(json{{"limits", j.at("planner").at("limits")}}, s.robot);
    }
    validate(s);
    return s;
}

inline json scenario_to_json(const Scenario& s) {
    using namespace detail;
    json j;
    j["name"] = s.name;
    if (s.grid_spec) {
        json rects = json::array();
        for (const auto& r : s.grid_spec->rectangles) rects.push_back({r.x0, r.y0, r.x1, r.y1});
        j["grid"] = {{"width_m", s.grid_spec->width_m},
                     {"height_m", s.grid_spec->height_m},
                     {"resolution", s.grid_spec->resolution},
                     {"origin", point_json(s.grid_spec->origin)},
                     {"rectangles", rects}};
    } else {
        std::vector<int> cells(s.grid.cells().begin(), s.grid.cells().end());
        j["grid"] = {{"width", s.grid.width()},
                     {"height", s.grid.height()},
                     {"resolution", s.grid.resolution()},
                     {"origin", point_json(s.grid.origin())},
                     {"cells", cells}};
    }
    j["humans"] = json::array();
    for (const auto& h : s.humans) {
        json w = json::array();
        for (auto p : h.motion.waypoints) w.push_back(point_json(p));
        j["humans"].push_back({{"id", h.id}, {"pose", pose_json(h.pose)}, {"speed", h.motion.speed}, {"waypoints", w}});
    }
    j["groups"] = json::array();
    for (const auto& g : s.groups) {
        json gj = {{"id", g.id}, {"members", g.member_ids}, {"formation", to_string(g.formation)},
                   {"standoff_m", g.queue_standoff_m}, {"service_interval_s", g.service_interval_s}};
        if (g.queue_head_goal) gj["queue_head_goal"] = point_json(*g.queue_head_goal);
        if (g.exit_point) gj["exit_point"] = point_json(*g.exit_point);
        j["groups"].push_back(gj);
    }
    j["start_pose"] = pose_json(s.start_pose);
    j["final_goal"] = point_json(s.final_goal);
    if (s.hand_social_goal)
        j["hand_social_goal"] = {{"position", point_json(s.hand_social_goal->position)},
                                 {"terminal", s.hand_social_goal->terminal}};
    j["activity_spaces"] = json::array();
    for (const auto& poly : s.activity_spaces) {
        json pj = json::array();
        for (auto v : poly.vertices) pj.push_back(point_json(v));
        j["activity_spaces"].push_back(pj);
    }
    const auto& r = s.robot;
    j["robot"] = {{"footprint_radius", r.footprint_radius},
                  {"holonomic", r.holonomic},
                  {"limits",
                   {{"vx", {r.vx_min, r.vx_max}},
                    {"vy", r.vy_limit},
                    {"vtheta", {r.vtheta_min, r.vtheta_max}},
                    {"accel", {r.accel_lin, r.accel_ang}}}}};
    const auto& p = s.planner;
    j["planner"] = {{"horizon_s", p.horizon_s},
                    {"dt_s", p.dt_s},
                    {"samples", {{"vx", p.samples.vx}, {"vy", p.samples.vy}, {"vtheta", p.samples.vtheta}}},
                    {"weights",
                     {{"alpha", p.weights.alpha}, {"beta", p.weights.beta}, {"gamma", p.weights.gamma}, {"delta", p.weights.delta}}},
                    {"id_gate_m", p.id_gate_m},
                    {"clamp_m", p.clamp_m},
                    {"replan_period_s", p.replan_period_s},
                    {"goal_tolerance_m", p.goal_tolerance_m},
                    {"guard_radius_m", p.guard_radius_m},
                    {"human_disc_margin_m", p.human_disc_margin_m},
                    {"inflation_decay_m", p.inflation_decay_m},
                    {"timeout_s", p.timeout_s},
                    {"stuck_limit", p.stuck_limit},
                    {"human_prediction", to_string(p.human_prediction)}};
    return j;
}

// Sets a dotted path (e.g. "planner.weights.alpha") inside a JSON document.
// The value is parsed as JSON when possible and kept as a string otherwise.
inline void apply_override(json& doc, const std::string& dotted, const std::string& value) {
    json* node = &doc;
    std::stringstream ss(dotted);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    if (parts.empty() || dotted.empty()) throw Error("override: empty key");
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        if (!node->is_object()) throw Error("override: " + dotted + " does not name an object path");
        node = &(*node)[parts[i]];
        if (node->is_null()) *node = json::object();
    }
    if (!node->is_object()) throw Error("override: " + dotted + " does not name an object path");
    json parsed = json::parse(value, nullptr, false);
    (*node)[parts.back()] = parsed.is_discarded() ? json(value) : parsed;
}

inline json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw Error("parse error in " + path.string());
    return j;
}

inline Scenario load_scenario(const std::filesystem::path& path) {
    const json j = read_json_file(path);
    try {
        return scenario_from_json(j);
    } catch (const Error& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

inline void save_scenario(const Scenario& s, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << scenario_to_json(s).dump(2) << '\n';
}

// FNV-1a 64-bit digest of the scenario's canonical JSON, as 16 hex digits.
inline std::string scenario_hash(const Scenario& s) {
    const std::string text = scenario_to_json(s).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace sanav::io

#endif
