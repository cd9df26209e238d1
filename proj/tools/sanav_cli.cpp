#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include "sanav/sanav.hpp"

namespace fs = std::filesystem;
using namespace sanav;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_contract = 1;
constexpr int exit_usage = 2;

struct RunOptions {
    std::string scenario;
    std::string planner = "both";
    int repeats = 1;
    std::string out = "out";
    bool allow_incomplete = false;
    std::vector<std::string> overrides;
};

Scenario load_with_overrides(const std::string& path, const std::vector<std::string>& overrides) {
    if (!fs::exists(path)) throw Error("scenario file not found: " + path);
    auto doc = io::read_json_file(path);
    for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw Error("--set expects key=value, got '" + kv + "'");
        io::apply_override(doc, kv.substr(0, eq), kv.substr(eq + 1));
    }
    try {
        return io::scenario_from_json(doc);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

std::vector<PlannerKind> planners_for(const std::string& name) {
    if (name == "traditional") return {PlannerKind::traditional};
    if (name == "paccet") return {PlannerKind::paccet};
    if (name == "both") return {PlannerKind::traditional, PlannerKind::paccet};
    throw Error("--planner must be traditional, paccet or both");
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

// Reports are always computed from the files on disk so that a later
// `compare` over the same logs reproduces them exactly.
std::vector<metrics::MetricReport> report_from_files(const std::vector<fs::path>& csvs) {
    std::vector<EpisodeLog> logs;
    for (const auto& p : csvs) logs.push_back(io::read_log(p));
    return metrics::compare_report(logs);
}

void emit_report(const std::vector<metrics::MetricReport>& rows, const fs::path& json_path) {
    write_text(json_path, metrics::to_json(rows).dump(2) + "\n");
    std::cout << metrics::format_table(rows);
}

int cmd_run(const RunOptions& opt) {
    const Scenario scenario = load_with_overrides(opt.scenario, opt.overrides);
    const auto kinds = planners_for(opt.planner);
    if (opt.repeats < 1) throw Error("--repeats must be >= 1");
    fs::create_directories(opt.out);
    const std::string stem = scenario.name.empty() ? fs::path(opt.scenario).stem().string() : scenario.name;

    std::vector<fs::path> csvs;
    bool incomplete = false;
    for (auto kind : kinds) {
        for (int r = 0; r < opt.repeats; ++r) {
            const EpisodeLog log = run_episode(scenario, kind);
            std::string name = stem + "_" + to_string(kind);
            if (opt.repeats > 1) name += "_r" + std::to_string(r + 1);
            csvs.push_back(io::write_log(log, fs::path(opt.out) / name));
            if (log.outcome != Outcome::reached_goal) {
                incomplete = true;
                std::cerr << name << ": " << to_string(log.outcome) << "\n";
            }
        }
    }
    emit_report(report_from_files(csvs), fs::path(opt.out) / (stem + "_report.json"));
    return incomplete && !opt.allow_incomplete ? exit_contract : exit_ok;
}

int cmd_compare(const std::vector<std::string>& paths, const std::string& out) {
    if (paths.empty()) throw Error("compare needs at least one log");
    std::vector<fs::path> csvs(paths.begin(), paths.end());
    emit_report(report_from_files(csvs), out);
    return exit_ok;
}

int cmd_suite(const std::string& out, const std::vector<std::string>& overrides) {
    const fs::path root(out);
    fs::create_directories(root / "scenarios");
    fs::create_directories(root / "logs");

    const auto scenarios = suite::all();
    std::vector<fs::path> files;
    for (const auto& s : scenarios) {
        files.push_back(root / "scenarios" / (s.name + ".json"));
        io::save_scenario(s, files.back());
    }

    // Episodes are independent; each runs single-threaded in its own task.
    struct Job {
        Scenario scenario;
        PlannerKind kind;
    };
    std::vector<Job> jobs;
    for (const auto& f : files) {
        const Scenario s = load_with_overrides(f.string(), overrides);
        for (auto kind : {PlannerKind::traditional, PlannerKind::paccet}) jobs.push_back({s, kind});
    }
    std::vector<std::future<EpisodeLog>> running;
    for (const auto& job : jobs)
        running.push_back(std::async(std::launch::async, [&job] { return run_episode(job.scenario, job.kind); }));

    std::vector<fs::path> csvs;
    bool failed = false;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const EpisodeLog log = running[i].get();
        const std::string name = jobs[i].scenario.name + "_" + to_string(jobs[i].kind);
        csvs.push_back(io::write_log(log, root / "logs" / name));
        if (jobs[i].kind == PlannerKind::paccet && log.outcome != Outcome::reached_goal) {
            failed = true;
            std::cerr << name << ": " << to_string(log.outcome) << "\n";
        }
    }
    const auto rows = report_from_files(csvs);
    write_text(root / "summary.txt", metrics::format_table(rows));
    emit_report(rows, root / "summary.json");
    return failed ? exit_contract : exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Socially-aware navigation simulator"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "Run episodes for one scenario file");
    run->add_option("scenario", run_opt.scenario, "Scenario JSON file")->required();
    run->add_option("--planner", run_opt.planner, "traditional, paccet or both")->capture_default_str();
    run->add_option("--repeats", run_opt.repeats, "Runs per planner")->capture_default_str();
    run->add_option("--out", run_opt.out, "Output directory")->capture_default_str();
    run->add_flag("--allow-incomplete", run_opt.allow_incomplete, "Exit 0 even if an episode misses its goal");
    run->add_option("--set", run_opt.overrides, "Override a scenario field, e.g. planner.horizon_s=2.0");

    std::vector<std::string> logs;
    std::string compare_out = "report.json";
    auto* compare = app.add_subcommand("compare", "Summarize saved episode logs");
    compare->add_option("logs", logs, "Episode CSV logs")->required();
    compare->add_option("--out", compare_out, "Report JSON path")->capture_default_str();

    std::string suite_out = "suite_out";
    std::vector<std::string> suite_overrides;
    auto* suite_cmd = app.add_subcommand("suite", "Write the bundled scenarios and run both planners on each");
    suite_cmd->add_option("--out", suite_out, "Output directory")->capture_default_str();
    suite_cmd->add_option("--set", suite_overrides, "Override a field in every scenario");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*run) return cmd_run(run_opt);
        if (*compare) return cmd_compare(logs, compare_out);
        if (*suite_cmd) return cmd_suite(suite_out, suite_overrides);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
