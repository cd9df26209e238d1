#ifndef SANAV_SUITE_HPP
#define SANAV_SUITE_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sanav/world.hpp"

// The bundled staging set: four hallway encounters, two art-gallery
// stagings, three queue layouts and three conversational groups.
namespace sanav::suite {

namespace detail {

inline Scenario finish(Scenario s, std::optional<GridSpec> spec = std::nullopt) {
    if (spec) s.grid_spec = std::move(spec);
    s.grid = grid_from_spec(*s.grid_spec);
    validate(s);
    return s;
}

inline Point2 polar(Point2 c, double r, double deg) {
    const double a = deg * std::numbers::pi / 180.0;
    return {c.x + r * std::cos(a), c.y + r * std::sin(a)};
}

// Rigid transform used to restage the queue layouts.
struct Placement {
    Point2 origin;
    double heading_deg = 0.0;

    [[nodiscard]] Point2 operator()(Point2 local) const {
        const double a = heading_deg * std::numbers::pi / 180.0;
        return {origin.x + local.x * std::cos(a) - local.y * std::sin(a),
                origin.y + local.x * std::sin(a) + local.y * std::cos(a)};
    }
    [[nodiscard]] double angle(double local_rad) const {
        return wrap_angle(local_rad + heading_deg * std::numbers::pi / 180.0);
    }
};

inline GridSpec open_room(double size) {
    GridSpec g;
    g.width_m = size;
    g.height_m = size;
    g.resolution = 0.05;
    return g;
}

} // namespace detail

// Straight 3 m wide corridor; the robot drives 5 m along its centerline.
struct HallwayLayout {
    double length_m = 10.5;
    double wall_m = 0.2;
    double inner_width_m = 3.0;
    double start_x = 1.5;
    double run_m = 5.0;
    double human_offset_m = 1.1; // lateral offset of the human from the robot's line
    double walker_speed = 1.0;   // oncoming walkers
    double slow_walker_speed = 0.15;
    double slow_walker_lead_m = 2.0; // head start of the same-direction walker

    [[nodiscard]] double centerline() const { return wall_m + 0.5 * inner_width_m; }
};

inline Scenario hallway_base(const std::string& name, const HallwayLayout& h = {}) {
    Scenario s;
    s.name = name;
    GridSpec g;
    g.width_m = h.length_m;
    g.height_m = 2.0 * h.wall_m + h.inner_width_m;
    g.resolution = 0.05;
    g.rectangles.push_back({0.0, 0.0, h.length_m, h.wall_m});
    g.rectangles.push_back({0.0, h.wall_m + h.inner_width_m, h.length_m, g.height_m});
    s.start_pose = {{h.start_x, h.centerline()}, 0.0};
    s.final_goal = {h.start_x + h.run_m, h.centerline()};
    s.grid_spec = g;
    return s;
}

// A person standing on the robot's path, offset to its left.
inline Scenario hallway_stationary(const HallwayLayout& h = {}) {
    Scenario s = hallway_base("hallway_stationary", h);
    s.humans.push_back({"h1", {{h.start_x + 0.5 * h.run_m, h.centerline() + h.human_offset_m}, std::numbers::pi}, {}});
    return detail::finish(std::move(s));
}

// A slower walker ahead of the robot, heading the same way.
inline Scenario hallway_same_direction(const HallwayLayout& h = {}) {
    Scenario s = hallway_base("hallway_same_direction", h);
    const double y = h.centerline() + h.human_offset_m;
    s.humans.push_back({"h1", {{h.start_x + h.slow_walker_lead_m, y}, 0.0}, {{{h.length_m - 0.5, y}}, h.slow_walker_speed}});
    return detail::finish(std::move(s));
}

// Oncoming walker keeping to its own right; the two meet halfway.
inline Scenario hallway_opposite_appropriate(const HallwayLayout& h = {}) {
    Scenario s = hallway_base("hallway_opposite_appropriate", h);
    const double y = h.centerline() + h.human_offset_m;
    s.humans.push_back({"h1", {{h.length_m - 1.0, y}, std::numbers::pi}, {{{0.5, y}}, h.walker_speed}});
    return detail::finish(std::move(s));
}

// Oncoming walker on the wrong side of the corridor.
inline Scenario hallway_opposite_inappropriate(const HallwayLayout& h = {}) {
    Scenario s = hallway_base("hallway_opposite_inappropriate", h);
    const double y = h.centerline() - h.human_offset_m;
    s.humans.push_back({"h1", {{h.length_m - 1.0, y}, std::numbers::pi}, {{{0.5, y}}, h.walker_speed}});
    return detail::finish(std::move(s));
}

// Robot presents an artwork on the north wall to a visitor standing in front
// of it. The task goal sits behind the visitor; the presenting spot is beside.
inline Scenario art_gallery_present() {
    Scenario s;
    s.name = "art_gallery_present";
    GridSpec g = detail::open_room(8.0);
    g.rectangles.push_back({3.5, 7.6, 4.5, 8.0}); // artwork on the wall
    s.humans.push_back({"visitor", {{4.0, 6.0}, std::numbers::pi / 2}, {}});
    s.start_pose = {{4.0, 1.5}, std::numbers::pi / 2};
    s.final_goal = {4.8, 6.7};
    s.hand_social_goal = HandSocialGoal{{5.3, 6.4}, true};
    return detail::finish(std::move(s), g);
}

// A visitor looks at an artwork from a distance; the space between them is an
// activity space the robot should skirt on its way across the room.
inline Scenario art_gallery_activity_space() {
    Scenario s;
    s.name = "art_gallery_activity_space";
    GridSpec g = detail::open_room(8.0);
    g.rectangles.push_back({3.5, 7.6, 4.5, 8.0});
    s.humans.push_back({"visitor", {{4.0, 3.6}, std::numbers::pi / 2}, {}});
    s.activity_spaces.push_back(Polygon{{{3.4, 3.9}, {4.6, 3.9}, {4.6, 7.6}, {3.4, 7.6}}});
    s.start_pose = {{1.0, 5.5}, 0.0};
    s.final_goal = {7.0, 5.5};
    s.hand_social_goal = HandSocialGoal{{4.0, 1.8}, false};
    return detail::finish(std::move(s), g);
}

// Three people queue in front of a desk. In local coordinates the desk is at
// the origin and the line runs along -y; the placement moves the whole layout.
inline Scenario queue_layout(const std::string& name, detail::Placement place, Point2 robot_start_local) {
    Scenario s;
    s.name = name;
    GridSpec g = detail::open_room(12.0);
    const Point2 desk = place({0.0, 0.0});
    g.rectangles.push_back({desk.x - 0.3, desk.y - 0.3, desk.x + 0.3, desk.y + 0.3});
    const char* ids[] = {"q1", "q2", "q3"};
    GroupSpec group;
    group.id = "queue";
    group.formation = Formation::queue;
    for (int k = 0; k < 3; ++k) {
        const Point2 p = place({0.0, -0.9 - 1.0 * k});
        s.humans.push_back({ids[k], {p, place.angle(std::numbers::pi / 2)}, {}});
        group.member_ids.push_back(ids[k]);
    }
    group.queue_head_goal = desk;
    s.groups.push_back(group);
    s.start_pose = {place(robot_start_local), place.angle(std::numbers::pi / 2)};
    s.final_goal = place({0.8, -0.9}); // beside the person being served
    return detail::finish(std::move(s), g);
}

inline Scenario queue_front_desk() { return queue_layout("queue_front_desk", {{6.0, 9.0}, 0.0}, {3.0, -6.5}); }
inline Scenario queue_moved() { return queue_layout("queue_moved", {{4.0, 8.0}, 0.0}, {2.5, -6.0}); }
inline Scenario queue_rotated() { return queue_layout("queue_rotated", {{8.5, 7.0}, -60.0}, {2.5, -6.0}); }

// Conversational group on a circle around center; the task goal is the center.
inline Scenario o_formation_layout(const std::string& name, double radius, std::vector<double> angles_deg,
                                   Point2 start) {
    Scenario s;
    s.name = name;
    GridSpec g = detail::open_room(12.0);
    const Point2 center{6.0, 6.5};
    GroupSpec group;
    group.id = "group";
    group.formation = Formation::o_formation;
    for (std::size_t k = 0; k < angles_deg.size(); ++k) {
        const std::string id = "p" + std::to_string(k + 1);
        const Point2 p = detail::polar(center, radius, angles_deg[k]);
        const Point2 in = center - p;
        s.humans.push_back({id, {p, std::atan2(in.y, in.x)}, {}});
        group.member_ids.push_back(id);
    }
    s.groups.push_back(group);
    s.start_pose = {start, std::numbers::pi / 2};
    s.final_goal = center;
    return detail::finish(std::move(s), g);
}

inline Scenario o_formation_join() { return o_formation_layout("o_formation_join", 1.2, {20.0, 130.0, 220.0}, {6.0, 1.5}); }
inline Scenario o_formation_open_spot() {
    return o_formation_layout("o_formation_open_spot", 1.2, {-40.0, 60.0, 150.0}, {6.0, 1.5});
}
// Everyone but the speaker squeezes together facing them.
inline Scenario o_formation_leading() {
    return o_formation_layout("o_formation_leading", 1.4, {60.0, 90.0, 120.0, 270.0}, {2.0, 2.0});
}

inline std::vector<Scenario> all() {
    return {hallway_stationary(),       hallway_same_direction(), hallway_opposite_appropriate(),
            hallway_opposite_inappropriate(), art_gallery_present(), art_gallery_activity_space(),
            queue_front_desk(),         queue_moved(),            queue_rotated(),
            o_formation_join(),         o_formation_open_spot(),  o_formation_leading()};
}

} // namespace sanav::suite

#endif
