#ifndef SANAV_METRICS_HPP
#define SANAV_METRICS_HPP

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sanav/simulator.hpp"

namespace sanav::metrics {

inline constexpr double personal_space_m = 1.2;
inline constexpr double deviation_threshold_m = 0.1;

inline std::optional<std::size_t> human_index(const EpisodeLog& log, const std::string& id) {
    for (std::size_t i = 0; i < log.human_ids.size(); ++i)
        if (log.human_ids[i] == id) return i;
    return std::nullopt;
}

inline double path_length(const EpisodeLog& log) {
    double d = 0.0;
    for (std::size_t k = 1; k < log.ticks.size(); ++k)
        d += distance(log.ticks[k - 1].robot.pose.position, log.ticks[k].robot.pose.position);
    return d;
}

inline std::optional<double> total_distance(const EpisodeLog& log) {
    if (log.outcome != Outcome::reached_goal) return std::nullopt;
    return path_length(log);
}

inline std::optional<double> time_to_goal(const EpisodeLog& log) {
    if (log.outcome != Outcome::reached_goal || log.ticks.empty()) return std::nullopt;
    return log.ticks.back().t;
}

// Separation at the moment the robot draws level with the human, measured
// along the start-to-goal axis. Between ticks both positions are linearly
// interpolated to the crossing instant. Minimum over all crossings.
inline std::optional<double> lateral_distance(const EpisodeLog& log, const std::string& human_id) {
    const auto hi = human_index(log, human_id);
    if (!hi) return std::nullopt;
    const Point2 axis = log.final_goal - log.start;
    if (axis.norm() <= 0.0) return std::nullopt;
    const Point2 u = axis * (1.0 / axis.norm());
    auto lead = [&](std::size_t k) {
        return dot(log.ticks[k].robot.pose.position - log.ticks[k].humans[*hi], u);
    };
    std::optional<double> best;
    for (std::size_t k = 1; k < log.ticks.size(); ++k) {
        const double a = lead(k - 1), b = lead(k);
        const bool crosses = (a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0);
        if (!crosses) continue;
        const double f = a / (a - b);
        const Point2 r = log.ticks[k - 1].robot.pose.position +
                         (log.ticks[k].robot.pose.position - log.ticks[k - 1].robot.pose.position) * f;
        const Point2 h = log.ticks[k - 1].humans[*hi] + (log.ticks[k].humans[*hi] - log.ticks[k - 1].humans[*hi]) * f;
        const double d = distance(r, h);
        best = best ? std::min(*best, d) : d;
    }
    return best;
}

// Smallest lateral distance over all humans the robot passed.
inline std::optional<double> lateral_distance(const EpisodeLog& log) {
    std::optional<double> best;
    for (const auto& id : log.human_ids)
        if (auto d = lateral_distance(log, id)) best = best ? std::min(*best, *d) : *d;
    return best;
}

inline double nearest_human_distance(const TickRecord& tick) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& h : tick.humans) d = std::min(d, distance(tick.robot.pose.position, h));
    return d;
}

// Maximal runs of consecutive ticks during which some human is closer than
// the personal-space bound.
inline int proxemic_intrusions(const EpisodeLog& log, double threshold = personal_space_m) {
    int runs = 0;
    bool inside = false;
    for (const auto& tick : log.ticks) {
        const bool now = nearest_human_distance(tick) < threshold;
        if (now && !inside) ++runs;
        inside = now;
    }
    return runs;
}

// First tick whose cross-track distance from the initial global path exceeds
// the threshold.
inline std::optional<std::size_t> first_deviation_tick(const EpisodeLog& log,
                                                       double threshold = deviation_threshold_m) {
    if (log.initial_global_path.empty()) return std::nullopt;
    for (std::size_t k = 0; k < log.ticks.size(); ++k)
        if (distance_to_polyline(log.ticks[k].robot.pose.position, log.initial_global_path) > threshold) return k;
    return std::nullopt;
}

inline std::optional<double> deviation_distance(const EpisodeLog& log, const std::string& human_id) {
    const auto hi = human_index(log, human_id);
    const auto k = first_deviation_tick(log);
    if (!hi || !k) return std::nullopt;
    return distance(log.ticks[*k].robot.pose.position, log.ticks[*k].humans[*hi]);
}

// Deviation distance to whichever human is nearest at the deviation tick.
inline std::optional<double> deviation_distance(const EpisodeLog& log) {
    const auto k = first_deviation_tick(log);
    if (!k || log.human_ids.empty()) return std::nullopt;
    return nearest_human_distance(log.ticks[*k]);
}

struct MetricReport {
    std::string scenario;
    std::string planner;
    std::size_t runs = 1;
    std::size_t reached = 0;
    std::optional<double> total_distance;
    std::optional<double> time_to_goal;
    std::optional<double> lateral_distance;
    double proxemic_intrusions = 0.0;
    std::optional<double> deviation_distance;
};

inline MetricReport report(const EpisodeLog& log) {
    MetricReport r;
    r.scenario = log.scenario_name;
    r.planner = to_string(log.planner);
    r.reached = log.outcome == Outcome::reached_goal ? 1 : 0;
    r.total_distance = total_distance(log);
    r.time_to_goal = time_to_goal(log);
    r.lateral_distance = lateral_distance(log);
    r.proxemic_intrusions = proxemic_intrusions(log);
    r.deviation_distance = deviation_distance(log);
    return r;
}

namespace detail {
inline std::optional<double> mean(const std::vector<std::optional<double>>& xs) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& x : xs)
        if (x) {
            sum += *x;
            ++n;
        }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
}
} // namespace detail

// One averaged row per (scenario, planner), in first-appearance order.
// A metric averages over the runs where it is defined.
inline std::vector<MetricReport> compare_report(const std::vector<EpisodeLog>& logs) {
    std::vector<std::pair<std::string, std::string>> keys;
    std::map<std::pair<std::string, std::string>, std::vector<MetricReport>> groups;
    for (const auto& log : logs) {
        auto r = report(log);
        const auto key = std::make_pair(r.scenario, r.planner);
        if (!groups.contains(key)) keys.push_back(key);
        groups[key].push_back(std::move(r));
    }
    std::vector<MetricReport> out;
    for (const auto& key : keys) {
        const auto& rs = groups[key];
        MetricReport m;
        m.scenario = key.first;
        m.planner = key.second;
        m.runs = rs.size();
        std::vector<std::optional<double>> td, tg, ld, dd;
        double n = 0.0;
        for (const auto& r : rs) {
            m.reached += r.reached;
            td.push_back(r.total_distance);
            tg.push_back(r.time_to_goal);
            ld.push_back(r.lateral_distance);
            dd.push_back(r.deviation_distance);
            n += r.proxemic_intrusions;
        }
        m.total_distance = detail::mean(td);
        m.time_to_goal = detail::mean(tg);
        m.lateral_distance = detail::mean(ld);
        m.deviation_distance = detail::mean(dd);
        m.proxemic_intrusions = n / static_cast<double>(rs.size());
        out.push_back(std::move(m));
    }
    return out;
}

inline nlohmann::json to_json(const std::vector<MetricReport>& rows) {
    auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows)
        j.push_back({{"scenario", r.scenario},
                     {"planner", r.planner},
                     {"runs", r.runs},
                     {"reached", r.reached},
                     {"total_distance_m", opt(r.total_distance)},
                     {"time_to_goal_s", opt(r.time_to_goal)},
                     {"lateral_distance_m", opt(r.lateral_distance)},
                     {"proxemic_intrusions", r.proxemic_intrusions},
                     {"deviation_distance_m", opt(r.deviation_distance)}});
    return j;
}

// Aligned text table; undefined metrics print as "n/a".
inline std::string format_table(const std::vector<MetricReport>& rows) {
    auto cell = [](const std::optional<double>& v, const char* unit) {
        if (!v) return std::string("n/a");
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f%s", *v, unit);
        return std::string(buf);
    };
    std::vector<std::vector<std::string>> table;
    table.push_back({"scenario", "planner", "runs", "D_t", "t", "D_l", "N", "D_d"});
    for (const auto& r : rows) {
        char n[32];
        std::snprintf(n, sizeof n, "%g", r.proxemic_intrusions);
        table.push_back({r.scenario, r.planner, std::to_string(r.reached) + "/" + std::to_string(r.runs),
                         cell(r.total_distance, "m"), cell(r.time_to_goal, "s"), cell(r.lateral_distance, "m"), n,
                         cell(r.deviation_distance, "m")});
    }
    std::vector<std::size_t> width(table.front().size(), 0);
    for (const auto& row : table)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::string out;
    for (const auto& row : table) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += row[c];
            if (c + 1 < row.size()) out += std::string(width[c] - row[c].size() + 2, ' ');
        }
        out += '\n';
    }
    return out;
}

} // namespace sanav::metrics

#endif
