// Runs every acceptance criterion and prints one PASS/FAIL line for each.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "oracles.hpp"
#include "sanav/sanav.hpp"

using namespace sanav;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        if (!detail.empty()) detail += "; ";
        detail += (ok ? "" : "FAILED ") + what;
    }
};

std::string num(std::optional<double> v) {
    if (!v) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", *v);
    return buf;
}

Point2 final_position(const EpisodeLog& log) { return log.ticks.back().robot.pose.position; }

double final_min_member_distance(const EpisodeLog& log) { return metrics::nearest_human_distance(log.ticks.back()); }

Verdict hallway_ordering() {
    Verdict v;
    const Scenario s = suite::hallway_opposite_appropriate();
    for (auto kind : {PlannerKind::traditional, PlannerKind::paccet}) {
        const auto t0 = std::chrono::steady_clock::now();
        run_episode(s, kind);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        v.require(secs < 30.0, std::string(to_string(kind)) + " runtime " + num(secs) + " s < 30");
    }
    const auto dp = metrics::lateral_distance(run_episode(s, PlannerKind::paccet));
    const auto dt = metrics::lateral_distance(run_episode(s, PlannerKind::traditional));
    v.require(dp && *dp >= 1.2, "D_l paccet " + num(dp) + " >= 1.2");
    v.require(dt && *dt < 1.2, "D_l traditional " + num(dt) + " < 1.2");
    v.require(dp && dt && *dp > *dt, "paccet > traditional");
    return v;
}

std::vector<Scenario> hallways() {
    return {suite::hallway_stationary(), suite::hallway_same_direction(), suite::hallway_opposite_appropriate(),
            suite::hallway_opposite_inappropriate()};
}

Verdict hallway_intrusions() {
    Verdict v;
    for (const auto& s : hallways()) {
        const int np = metrics::proxemic_intrusions(run_episode(s, PlannerKind::paccet));
        const int nt = metrics::proxemic_intrusions(run_episode(s, PlannerKind::traditional));
        v.require(np == 0 && nt >= 1, s.name + " N paccet " + std::to_string(np) + " / traditional " + std::to_string(nt));
    }
    return v;
}

Verdict efficiency_bound() {
    Verdict v;
    const Scenario s = suite::hallway_opposite_appropriate();
    const auto p = run_episode(s, PlannerKind::paccet), t = run_episode(s, PlannerKind::traditional);
    const auto dp = metrics::total_distance(p), dt = metrics::total_distance(t);
    const auto tp = metrics::time_to_goal(p), tt = metrics::time_to_goal(t);
    v.require(dp && dt && *dp <= 1.15 * *dt, "D_t " + num(dp) + " <= 1.15 x " + num(dt));
    v.require(tp && tt && *tp <= 1.25 * *tt, "t " + num(tp) + " <= 1.25 x " + num(tt));
    return v;
}

Verdict deviation_metric() {
    Verdict v;
    const Scenario s = suite::hallway_opposite_appropriate();
    const auto dp = metrics::deviation_distance(run_episode(s, PlannerKind::paccet));
    const auto dt = metrics::deviation_distance(run_episode(s, PlannerKind::traditional));
    v.require(!dt, "D_d traditional " + num(dt) + " absent");
    v.require(dp && *dp >= 1.0 && *dp <= 2.0, "D_d paccet " + num(dp) + " in [1, 2]");
    return v;
}

Verdict dominance_property() {
    Verdict v;
    std::mt19937_64 rng(20240501);
    std::uniform_int_distribution<std::size_t> n_dist(2, 200), d_dist(2, 5);
    int sets = 0, top_bad = 0, nd_bad = 0, dom_bad = 0;
    for (; sets < 1000; ++sets) {
        const auto cand = oracle::random_objectives(rng, n_dist(rng), d_dist(rng));
        const auto r = paccet::rank(cand, {});
        if (!oracle::non_dominated(cand, r.order.front())) ++top_bad;
        const auto archive = paccet::pareto_filter(cand);
        for (std::size_t i = 0; i < cand.size(); ++i) {
            if (oracle::non_dominated(cand, i)) {
                if (r.fitness[i] > 1.0 + 1e-3) ++nd_bad;
                continue;
            }
            const auto norm = paccet::normalize(archive, cand[i]);
            if (std::all_of(norm.begin(), norm.end(), [](double x) { return x > 0.0; }) && r.fitness[i] < 1.0 - 1e-3)
                ++dom_bad;
        }
    }
    v.require(top_bad == 0, std::to_string(sets) + " sets, top-ranked dominated in " + std::to_string(top_bad));
    v.require(nd_bad == 0, "non-dominated fitness > 1+1e-3 in " + std::to_string(nd_bad));
    v.require(dom_bad == 0, "dominated fitness < 1-1e-3 in " + std::to_string(dom_bad));
    return v;
}

Verdict affine_invariance() {
    Verdict v;
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<std::size_t> n_dist(2, 120), d_dist(2, 5);
    std::uniform_real_distribution<double> scale(0.01, 100.0), shift(-50.0, 50.0);
    int order_changes = 0;
    double worst = 0.0;
    for (int set = 0; set < 200; ++set) {
        const auto cand = oracle::random_objectives(rng, n_dist(rng), d_dist(rng));
        const std::size_t dim = cand.front().size();
        std::vector<double> a(dim), b(dim);
        for (std::size_t k = 0; k < dim; ++k) {
            a[k] = scale(rng);
            b[k] = shift(rng);
        }
        auto moved = cand;
        for (auto& c : moved)
            for (std::size_t k = 0; k < dim; ++k) c[k] = a[k] * c[k] + b[k];
        const auto r0 = paccet::rank(cand, {}), r1 = paccet::rank(moved, {});
        if (r0.order != r1.order) ++order_changes;
        for (std::size_t i = 0; i < cand.size(); ++i) worst = std::max(worst, std::abs(r0.fitness[i] - r1.fitness[i]));
    }
    v.require(order_changes == 0, "200 sets, order changed in " + std::to_string(order_changes));
    char buf[64];
    std::snprintf(buf, sizeof buf, "max fitness difference %.2e <= 1e-9", worst);
    v.require(worst <= 1e-9, buf);
    return v;
}

Verdict single_objective() {
    Verdict v;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pos(1.0, 9.0), head(-3.14, 3.14), vx(0.0, 0.55), w(-1.0, 1.0);
    int ticks = 0, mismatches = 0;
    while (ticks < 150) {
        Scenario s;
        GridSpec g;
        g.width_m = g.height_m = 10.0;
        g.rectangles.push_back({pos(rng), pos(rng), pos(rng), pos(rng)});
        s.grid_spec = g;
        s.grid = grid_from_spec(g);
        s.start_pose = {{pos(rng), pos(rng)}, head(rng)};
        s.final_goal = {pos(rng), pos(rng)};
        try {
            validate(s);
        } catch (const Error&) {
            continue;
        }
        const OccupancyGrid costmap = inflate(s.grid, s.robot.footprint_radius, 1.0);
        GlobalPath path;
        try {
            path = plan_global(costmap, s.start_pose.position, s.final_goal);
        } catch (const Error&) {
            continue;
        }
        LocalPlanner planner(s, costmap);
        const RobotState robot{s.start_pose, {vx(rng), 0.0, w(rng)}};
        const auto p = planner.plan_step(robot, {}, path, s.final_goal, std::nullopt);
        const auto t = planner.plan_step_traditional(robot, {}, path, s.final_goal);
        if (p.stuck() || t.stuck()) continue;
        ++ticks;
        double argmin = p.candidates.front().base_cost;
        for (const auto& c : p.candidates) argmin = std::min(argmin, c.base_cost);
        if (p.chosen().base_cost != argmin || t.chosen().base_cost != argmin || !(*p.command == *t.command))
            ++mismatches;
    }
    v.require(mismatches == 0, std::to_string(ticks) + " random ticks, mismatches " + std::to_string(mismatches));
    return v;
}

Verdict geometry_oracles() {
    Verdict v;
    const auto cc = circle_circle_intersection(Circle({0, 0}, 1), Circle({1, 0}, 1));
    const double h = std::sqrt(3.0) / 2;
    const bool cc_ok = cc.size() == 2 && std::abs(cc[0].x - 0.5) < 1e-9 && std::abs(cc[1].x - 0.5) < 1e-9 &&
                       std::abs(std::abs(cc[0].y) - h) < 1e-9 && std::abs(cc[0].y + cc[1].y) < 1e-9;
    v.require(cc_ok, "circle-circle {(0.5, +-sqrt3/2)}");
    const auto lc = line_circle_intersection(Line2::sloped(0, 0), Circle({2, 0}, 1));
    const bool lc_ok = lc.size() == 2 && std::abs(std::min(lc[0].x, lc[1].x) - 1) < 1e-9 &&
                       std::abs(std::max(lc[0].x, lc[1].x) - 3) < 1e-9 && std::abs(lc[0].y) < 1e-9 &&
                       std::abs(lc[1].y) < 1e-9;
    v.require(lc_ok, "line-circle {(1,0),(3,0)}");
    v.require(std::abs(pair_angle(1.0, std::sqrt(3.0)) - 2.0 * std::numbers::pi / 3.0) < 1e-9, "pair_angle 120 deg");

    std::mt19937_64 rng(31);
    std::bernoulli_distribution wall(0.2);
    int grids = 0, bad = 0;
    while (grids < 50) {
        OccupancyGrid g(30, 30, 0.1);
        for (int j = 0; j < 30; ++j)
            for (int i = 0; i < 30; ++i)
                if (wall(rng)) g.set(i, j, cost::lethal);
        g.set(0, 0, 0);
        g.set(29, 29, 0);
        const double expected = oracle::dijkstra_cost(g, 0, 0, 29, 29);
        if (!std::isfinite(expected)) continue;
        ++grids;
        const auto path = plan_global(g, g.cell_center(0, 0), g.cell_center(29, 29));
        if (std::abs(path.cost - expected) > 1e-9) ++bad;
    }
    v.require(bad == 0, "A* = Dijkstra on " + std::to_string(grids) + " grids, mismatches " + std::to_string(bad));
    return v;
}

Verdict queue_scenarios() {
    Verdict v;
    for (const auto& s : {suite::queue_front_desk(), suite::queue_moved(), suite::queue_rotated()}) {
        const auto& g = s.groups.front();
        std::vector<Point2> members;
        for (const auto& id : g.member_ids) members.push_back(s.find_human(id)->pose.position);
        const Point2 tail = queue_social_goal(members, *g.queue_head_goal, g.queue_standoff_m).position;
        const auto p = run_episode(s, PlannerKind::paccet), t = run_episode(s, PlannerKind::traditional);
        const double dp = distance(final_position(p), tail), dt = distance(final_position(t), s.final_goal);
        const int np = metrics::proxemic_intrusions(p), nt = metrics::proxemic_intrusions(t);
        v.require(dp <= 0.3 && np == 0, s.name + " paccet to tail " + num(dp) + ", N " + std::to_string(np));
        v.require(dt <= 0.5 && nt >= 1, s.name + " traditional to desk goal " + num(dt) + ", N " + std::to_string(nt));
    }
    return v;
}

Verdict o_formation_scenarios() {
    Verdict v;
    for (const auto& s : {suite::o_formation_join(), suite::o_formation_open_spot(), suite::o_formation_leading()}) {
        std::vector<Point2> members;
        for (const auto& h : s.humans) members.push_back(h.pose.position);
        const Circle c = fit_circle(members);
        const auto p = run_episode(s, PlannerKind::paccet), t = run_episode(s, PlannerKind::traditional);
        const double rp = distance(final_position(p), c.center), rt = distance(final_position(t), c.center);
        const double mp = final_min_member_distance(p), mt = final_min_member_distance(t);
        v.require(std::abs(rp - c.radius) <= 0.3, s.name + " paccet " + num(rp) + " from center, R " + num(c.radius));
        v.require(mp >= mt, s.name + " member clearance " + num(mp) + " >= " + num(mt));
        v.require(rt <= 0.5, s.name + " traditional " + num(rt) + " from center");
    }
    return v;
}

Verdict activity_space() {
    Verdict v;
    const Scenario s = suite::art_gallery_activity_space();
    const auto inside = [&](const EpisodeLog& log) {
        int n = 0;
        for (const auto& t : log.ticks)
            for (const auto& poly : s.activity_spaces) n += poly.contains(t.robot.pose.position);
        return n;
    };
    const auto p = run_episode(s, PlannerKind::paccet), t = run_episode(s, PlannerKind::traditional);
    const int ip = inside(p), it = inside(t);
    v.require(ip == 0, "paccet poses inside " + std::to_string(ip));
    v.require(it >= 1, "traditional poses inside " + std::to_string(it));
    v.require(p.outcome == Outcome::reached_goal, std::string("paccet outcome ") + to_string(p.outcome));
    return v;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Verdict determinism() {
    Verdict v;
    const auto root = fs::temp_directory_path() / "sanav_acceptance";
    fs::remove_all(root);
    for (const char* run : {"a", "b"}) {
        const std::string cmd = std::string(SANAV_CLI_PATH) + " suite --out " + (root / run).string() + " > /dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        v.require(WIFEXITED(status) && WEXITSTATUS(status) == 0, std::string("suite run ") + run + " exit 0");
    }
    int files = 0, differing = 0;
    for (const auto& e : fs::directory_iterator(root / "a" / "logs")) {
        ++files;
        if (slurp(e.path()) != slurp(root / "b" / "logs" / e.path().filename())) ++differing;
    }
    v.require(files == 48, std::to_string(files) + " log files (24 episodes)");
    v.require(differing == 0, "byte differences in " + std::to_string(differing));
    return v;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"hallway lateral-distance ordering", hallway_ordering},
        {"hallway proxemic intrusions", hallway_intrusions},
        {"hallway efficiency cost bound", efficiency_bound},
        {"hallway deviation distance", deviation_metric},
        {"PaCcET dominance property", dominance_property},
        {"affine invariance", affine_invariance},
        {"single-objective degeneration", single_objective},
        {"geometry oracles", geometry_oracles},
        {"queue scenarios", queue_scenarios},
        {"O-formation scenarios", o_formation_scenarios},
        {"activity space", activity_space},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        failed += v.pass ? 0 : 1;
        std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
