// Runs both planners on the oncoming-walker hallway and prints the metrics.
#include <iostream>

#include "sanav/sanav.hpp"

int main() {
    using namespace sanav;
    const Scenario scenario = suite::hallway_opposite_appropriate();
    std::vector<EpisodeLog> logs;
    for (auto kind : {PlannerKind::traditional, PlannerKind::paccet}) logs.push_back(run_episode(scenario, kind));
    std::cout << metrics::format_table(metrics::compare_report(logs));
}
