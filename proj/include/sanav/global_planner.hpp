#ifndef SANAV_GLOBAL_PLANNER_HPP
#define SANAV_GLOBAL_PLANNER_HPP

#include <cmath>
#include <limits>
#include <queue>
#include <tuple>
#include <vector>

#include "sanav/world.hpp"

namespace sanav {

struct GlobalPath {
    std::vector<Point2> waypoints; // cell centers, start to goal
    double length = 0.0;           // geometric length in meters
    double cost = 0.0;             // cost-weighted length A* minimized
    double computed_at = 0.0;      // simulation seconds
};

// Cost of stepping into a cell: step length scaled by (1 + cell_cost / 256).
inline double step_cost(double step_length_m, std::uint8_t cell_cost) {
    return step_length_m * (1.0 + static_cast<double>(cell_cost) / 256.0);
}

namespace detail {
inline constexpr int neighbor_di[8] = {1, -1, 0, 0, 1, 1, -1, -1};
inline constexpr int neighbor_dj[8] = {0, 0, 1, -1, 1, -1, 1, -1};
} // namespace detail

// 8-connected A* over a (typically inflated) costmap with a Euclidean
// heuristic. Cells at or above the lethal threshold are impassable; the start
// cell is always allowed so a robot grazing an inflated zone can leave it.
inline GlobalPath plan_global(const OccupancyGrid& costmap, Point2 start, Point2 goal, double now = 0.0) {
    const auto [si, sj] = costmap.cell_of(start);
    const auto [gi, gj] = costmap.cell_of(goal);
    if (!costmap.in_bounds(si, sj)) throw Error("plan_global: start outside the grid");
    if (!costmap.in_bounds(gi, gj) || OccupancyGrid::is_lethal(costmap.at(gi, gj)))
        throw Error("plan_global: goal in lethal cell");

    const double res = costmap.resolution();
    const std::size_t n = costmap.cells().size();
    std::vector<double> g(n, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> parent(n, n);
    std::vector<char> closed(n, 0);
    const std::size_t start_idx = costmap.index(si, sj);
    const std::size_t goal_idx = costmap.index(gi, gj);
    auto heuristic = [&](int i, int j) { return res * std::hypot(i - gi, j - gj); };

    // (f, g, index) keeps pops deterministic.
    using Entry = std::tuple<double, double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    g[start_idx] = 0.0;
    open.emplace(heuristic(si, sj), 0.0, start_idx);
    const int w = costmap.width();
    while (!open.empty()) {
        const auto [f, gc, idx] = open.top();
        open.pop();
        if (closed[idx]) continue;
        closed[idx] = 1;
        if (idx == goal_idx) break;
        const int i = static_cast<int>(idx % static_cast<std::size_t>(w));
        const int j = static_cast<int>(idx / static_cast<std::size_t>(w));
        for (int k = 0; k < 8; ++k) {
            const int ni = i + detail::neighbor_di[k], nj = j + detail::neighbor_dj[k];
            if (!costmap.in_bounds(ni, nj)) continue;
            const std::uint8_t c = costmap.at(ni, nj);
            if (OccupancyGrid::is_lethal(c)) continue;
            const std::size_t nidx = costmap.index(ni, nj);
            if (closed[nidx]) continue;
            const double ng = gc + step_cost(k < 4 ? res : res * std::numbers::sqrt2, c);
            if (ng < g[nidx]) {
                g[nidx] = ng;
                parent[nidx] = idx;
                open.emplace(ng + heuristic(ni, nj), ng, nidx);
            }
        }
    }
    if (!closed[goal_idx]) throw Error("plan_global: no path exists");

    GlobalPath path;
    path.cost = g[goal_idx];
    path.computed_at = now;
    for (std::size_t idx = goal_idx; idx != n; idx = parent[idx]) {
        const int i = static_cast<int>(idx % static_cast<std::size_t>(w));
        const int j = static_cast<int>(idx / static_cast<std::size_t>(w));
        path.waypoints.push_back(costmap.cell_center(i, j));
        if (idx == start_idx) break;
    }
    std::reverse(path.waypoints.begin(), path.waypoints.end());
    for (std::size_t k = 1; k < path.waypoints.size(); ++k)
        path.length += distance(path.waypoints[k - 1], path.waypoints[k]);
    return path;
}

// Returns a fresh plan once the current one is at least period seconds old.
inline GlobalPath maybe_replan(const GlobalPath& path, double now, double period, const OccupancyGrid& costmap,
                               Point2 start, Point2 goal) {
    if (now - path.computed_at < period) return path;
    return plan_global(costmap, start, goal, now);
}

} // namespace sanav

#endif
