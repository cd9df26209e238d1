#ifndef SANAV_SOCIAL_GOAL_HPP
#define SANAV_SOCIAL_GOAL_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <span>
#include <optional>
#include <string>
#include <vector>

#include "sanav/geometry.hpp"
#include "sanav/world.hpp"

namespace sanav {

enum class SocialGoalKind { queue_tail, o_formation, hand_specified };

struct SocialGoal {
    Point2 position;
    SocialGoalKind kind = SocialGoalKind::hand_specified;
    std::optional<std::string> source_group;
    bool terminal = true; // the episode ends here rather than passing through
};

struct Member {
    std::string id;
    Point2 position;
};

// End-of-line goal: a point on the queue's fitted line, standoff meters behind
// the member farthest from the desk.
inline SocialGoal queue_social_goal(std::span<const Point2> members, Point2 desk, double standoff) {
    if (members.size() < 2) throw Error("queue_social_goal: need at least 2 members");
    if (!(standoff > 0.0)) throw Error("queue_social_goal: standoff must be positive");
    const Line2 line = fit_line(members);
    const Point2 dir = line.direction();
    const double desk_t = dot(desk, dir);
    std::size_t last = 0;
    double farthest = -1.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const double along = std::abs(dot(members[i], dir) - desk_t);
        if (along > farthest) {
            farthest = along;
            last = i;
        }
    }
    const auto roots = line_circle_intersection(line, Circle(members[last], standoff));
    if (roots.empty()) throw DegenerateGeometry("queue_social_goal: line misses the standoff circle");
    const Point2 best = *std::max_element(roots.begin(), roots.end(), [&](Point2 a, Point2 b) {
        return distance(a, desk) < distance(b, desk);
    });
    return SocialGoal{best, SocialGoalKind::queue_tail, std::nullopt, true};
}

namespace detail {
inline double min_distance_to(Point2 p, std::span<const Member> members) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& m : members) best = std::min(best, distance(p, m.position));
    return best;
}
} // namespace detail

// Widest angular gap between neighbors on the fitted circle, and the
// approach angle (half that gap).
struct WidestGap {
    std::size_t anchor = 0; // index of the member the gap starts at (counter-clockwise)
    double gap = 0.0;
    double theta_a = 0.0;
};

inline WidestGap widest_gap(const Circle& circle, std::span<const Member> members) {
    std::vector<std::size_t> order(members.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> angle(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        const Point2 d = members[i].position - circle.center;
        angle[i] = std::atan2(d.y, d.x);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (angle[a] != angle[b]) return angle[a] < angle[b];
        return members[a].id < members[b].id;
    });
    WidestGap best;
    best.gap = -1.0;
    constexpr double tie = 1e-9;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const std::size_t from = order[k];
        const std::size_t to = order[(k + 1) % order.size()];
        // The gap measured as a center angle; consistent with pair_angle on
        // the chord for gaps up to pi.
        double gap = angle[to] - angle[from];
        if (k + 1 == order.size()) gap += 2.0 * std::numbers::pi;
        const bool wider = gap > best.gap + tie;
        const bool tied = std::abs(gap - best.gap) <= tie && members[from].id < members[best.anchor].id;
        if (wider || tied) {
            best.gap = gap;
            best.anchor = from;
        }
    }
    best.theta_a = 0.5 * best.gap;
    return best;
}

// Joining goal for a conversational circle: the vacant spot in the widest gap.
inline SocialGoal o_formation_social_goal(std::span<const Member> members) {
    if (members.size() < 2) throw Error("o_formation_social_goal: need at least 2 members");
    if (members.size() == 2) {
        // Third corner of an equilateral triangle, on the left of lower-id -> higher-id.
        const bool ordered = members[0].id < members[1].id;
        const Point2 a = ordered ? members[0].position : members[1].position;
        const Point2 b = ordered ? members[1].position : members[0].position;
        const Point2 ab = b - a;
        const double sep = ab.norm();
        if (sep < GeometryTolerances::coincident) throw DegenerateGeometry("o_formation_social_goal: coincident members");
        const Point2 normal{-ab.y / sep, ab.x / sep};
        const Point2 goal = (a + b) * 0.5 + normal * (sep * std::sqrt(3.0) / 2.0);
        return SocialGoal{goal, SocialGoalKind::o_formation, std::nullopt, true};
    }
    std::vector<Point2> pts;
    for (const auto& m : members) pts.push_back(m.position);
    const Circle circle = fit_circle(pts);
    const WidestGap gap = widest_gap(circle, members);
    const Point2 anchor = members[gap.anchor].position;
    // Chord from the anchor for the approach angle, both sides equal to R.
    const double r = chord_for_angle(circle.radius, gap.theta_a);
    // Place the anchor on the fitted circle so the two circles intersect even
    // when a least-squares fit leaves it slightly off.
    const Point2 radial = anchor - circle.center;
    const Point2 anchor_on_circle = circle.center + radial * (circle.radius / radial.norm());
    auto roots = circle_circle_intersection(circle, Circle(anchor_on_circle, r));
    if (roots.empty()) throw DegenerateGeometry("o_formation_social_goal: circles do not intersect");
    const Point2 best = *std::max_element(roots.begin(), roots.end(), [&](Point2 a, Point2 b) {
        return detail::min_distance_to(a, members) < detail::min_distance_to(b, members);
    });
    return SocialGoal{best, SocialGoalKind::o_formation, std::nullopt, true};
}

// Live positions of a group's members, in the group's member order.
inline std::vector<Member> group_members(const GroupSpec& group, std::span<const HumanState> humans) {
    std::vector<Member> out;
    for (const auto& id : group.member_ids) {
        for (const auto& h : humans)
            if (h.id == id) out.push_back({id, h.pose.position});
    }
    return out;
}

// Social goal for the scenario's current state, if any: the hand-specified
// goal first, then the first group's formation goal.
inline std::optional<SocialGoal> select_social_goal(const Scenario& scenario, std::span<const HumanState> humans) {
    if (scenario.hand_social_goal)
        return SocialGoal{scenario.hand_social_goal->position, SocialGoalKind::hand_specified, std::nullopt,
                          scenario.hand_social_goal->terminal};
    for (const auto& g : scenario.groups) {
        const auto members = group_members(g, humans);
        if (members.size() < 2) continue;
        SocialGoal goal;
        if (g.formation == Formation::queue) {
            std::vector<Point2> pts;
            for (const auto& m : members) pts.push_back(m.position);
            goal = queue_social_goal(pts, *g.queue_head_goal, g.queue_standoff_m);
        } else {
            goal = o_formation_social_goal(members);
        }
        goal.source_group = g.id;
        return goal;
    }
    return std::nullopt;
}

} // namespace sanav

#endif
