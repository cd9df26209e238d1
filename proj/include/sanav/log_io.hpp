#ifndef SANAV_LOG_IO_HPP
#define SANAV_LOG_IO_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sanav/simulator.hpp"

// Episode logs on disk: <stem>.csv with one row per tick and <stem>.json with
// everything else. Numbers are written with fixed precision so identical runs
// produce identical bytes.
namespace sanav::io {

namespace detail {

inline std::string fixed(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v == 0.0 ? 0.0 : v); // no "-0.000000"
    return buf;
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline double parse_number(const std::string& s, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error("malformed log: bad number '" + s + "' in " + where);
    }
}

} // namespace detail

inline std::vector<std::string> csv_header(const EpisodeLog& log) {
    std::vector<std::string> h = {"t",       "x",        "y",        "theta",         "vx",
                                  "vy",      "vtheta",   "fitness",  "social_goal_x", "social_goal_y",
                                  "vetoed"};
    for (const auto& id : log.human_ids) {
        h.push_back(id + "_x");
        h.push_back(id + "_y");
    }
    return h;
}

inline std::string to_csv(const EpisodeLog& log) {
    using detail::fixed;
    std::string out;
    const auto header = csv_header(log);
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
    out += '\n';
    for (const auto& t : log.ticks) {
        out += fixed(t.t) + ',' + fixed(t.robot.pose.position.x) + ',' + fixed(t.robot.pose.position.y) + ',' +
               fixed(t.robot.pose.heading) + ',' + fixed(t.command.vx) + ',' + fixed(t.command.vy) + ',' +
               fixed(t.command.vtheta) + ',' + (t.best_fitness ? fixed(*t.best_fitness) : "") + ',' +
               (t.social_goal ? fixed(t.social_goal->x) : "") + ',' + (t.social_goal ? fixed(t.social_goal->y) : "") +
               ',' + (t.vetoed ? "1" : "0");
        for (const auto& h : t.humans) out += ',' + fixed(h.x) + ',' + fixed(h.y);
        out += '\n';
    }
    return out;
}

inline nlohmann::json sidecar_json(const EpisodeLog& log) {
    using nlohmann::json;
    auto pt = [](Point2 p) { return json::array({p.x, p.y}); };
    json path = json::array();
    for (auto p : log.initial_global_path) path.push_back(pt(p));
    return {{"scenario", log.scenario_name},
            {"scenario_hash", log.scenario_hash},
            {"planner_kind", to_string(log.planner)},
            {"outcome", to_string(log.outcome)},
            {"dt", log.dt},
            {"start", pt(log.start)},
            {"final_goal", pt(log.final_goal)},
            {"social_goal", log.social_goal ? pt(*log.social_goal) : json(nullptr)},
            {"human_ids", log.human_ids},
            {"ticks", log.ticks.size()},
            {"initial_global_path", path}};
}

// Writes <stem>.csv and <stem>.json; returns the CSV path.
inline std::filesystem::path write_log(const EpisodeLog& log, const std::filesystem::path& stem) {
    const auto csv = std::filesystem::path(stem.string() + ".csv");
    const auto side = std::filesystem::path(stem.string() + ".json");
    {
        std::ofstream out(csv, std::ios::binary);
        if (!out) throw Error("cannot write " + csv.string());
        out << to_csv(log);
    }
    std::ofstream out(side, std::ios::binary);
    if (!out) throw Error("cannot write " + side.string());
    out << sidecar_json(log).dump(2) << '\n';
    return csv;
}

inline Outcome outcome_from_string(const std::string& s) {
    for (auto o : {Outcome::reached_goal, Outcome::stuck, Outcome::timeout, Outcome::guard_stop, Outcome::running})
        if (s == to_string(o)) return o;
    throw Error("malformed log: unknown outcome " + s);
}

// Reads a log back from its CSV path (the sidecar is found next to it).
inline EpisodeLog read_log(const std::filesystem::path& csv_path) {
    auto side_path = csv_path;
    side_path.replace_extension(".json");
    std::ifstream side(side_path);
    if (!side) throw Error("cannot open " + side_path.string());
    const auto meta = nlohmann::json::parse(side, nullptr, false);
    if (meta.is_discarded() || !meta.is_object()) throw Error("malformed log: bad sidecar " + side_path.string());

    EpisodeLog log;
    try {
        auto pt = [](const nlohmann::json& j) { return Point2{j.at(0).get<double>(), j.at(1).get<double>()}; };
        log.scenario_name = meta.at("scenario").get<std::string>();
        log.scenario_hash = meta.at("scenario_hash").get<std::string>();
        const auto kind = meta.at("planner_kind").get<std::string>();
        if (kind != "paccet" && kind != "traditional") throw Error("malformed log: unknown planner_kind " + kind);
        log.planner = kind == "paccet" ? PlannerKind::paccet : PlannerKind::traditional;
        log.outcome = outcome_from_string(meta.at("outcome").get<std::string>());
        log.dt = meta.at("dt").get<double>();
        log.start = pt(meta.at("start"));
        log.final_goal = pt(meta.at("final_goal"));
        if (!meta.at("social_goal").is_null()) log.social_goal = pt(meta.at("social_goal"));
        log.human_ids = meta.at("human_ids").get<std::vector<std::string>>();
        for (const auto& p : meta.at("initial_global_path")) log.initial_global_path.push_back(pt(p));
    } catch (const nlohmann::json::exception& e) {
        throw Error("malformed log: " + side_path.string() + ": " + e.what());
    }

    std::ifstream in(csv_path);
    if (!in) throw Error("cannot open " + csv_path.string());
    std::string line;
    if (!std::getline(in, line)) throw Error("malformed log: empty " + csv_path.string());
    const auto header = detail::split_csv(line);
    if (header != csv_header(log)) throw Error("malformed log: unexpected header in " + csv_path.string());
    const std::string where = csv_path.string();
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = detail::split_csv(line);
        if (cells.size() != header.size()) throw Error("malformed log: wrong column count in " + where);
        auto num = [&](std::size_t i) { return detail::parse_number(cells[i], where); };
        TickRecord t;
        t.t = num(0);
        t.robot.pose = {{num(1), num(2)}, num(3)};
        t.command = {num(4), num(5), num(6)};
        t.robot.velocity = t.command;
        if (!cells[7].empty()) t.best_fitness = num(7);
        if (!cells[8].empty() && !cells[9].empty()) t.social_goal = Point2{num(8), num(9)};
        t.vetoed = cells[10] == "1";
        for (std::size_t k = 11; k + 1 < cells.size(); k += 2) t.humans.push_back({num(k), num(k + 1)});
        log.ticks.push_back(std::move(t));
    }
    if (log.ticks.empty()) throw Error("malformed log: no ticks in " + where);
    return log;
}

} // namespace sanav::io

#endif
