#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cps/env.hpp"
#include "cps/planners.hpp"

namespace cps {

struct PatternSearchConfig {
    double start_x = 0.0, start_y = 0.0;
    double initial_mesh = 1.0;
    double expand_factor = 2.0;
    double contract_factor = 0.5;
    double mesh_tolerance = 0.01;
    int max_parallel_polls = 1;
    int t_o = 1800;  // optimization horizon
};

struct PollRecord {
    int iteration = 0;
    double mesh = 0.0;
    double x = 0.0, y = 0.0;
    double value = 0.0;
    bool finite = true;
    bool accepted = false;
    bool operator==(const PollRecord&) const = default;
};

struct SearchResult {
    double x = 0.0, y = 0.0;
    double value = 0.0;
    int iterations = 0;
    std::vector<PollRecord> log;  // first entry is the start point
};

using Objective = std::function<double(double, double)>;

// complete 4-poll (+x, +y, -x, -y) around the incumbent; strictly best improvement wins, ties to poll order
SearchResult pattern_search(const Objective& f, const PatternSearchConfig& cfg);

enum class WeightedPlanner { sh, shc };

struct WeightResult {
    WeightParams params;
    int ct = 0;
    SearchResult search;
    double seconds = 0.0;
};

// coverage time of one early-aborted run, t_o if it never covers
int coverage_objective(const GraphEnv& env, WeightedPlanner planner, int r, const WeightParams& w, int t_o);

WeightResult optimize_weights(const GraphEnv& env, WeightedPlanner planner, int r, const PatternSearchConfig& cfg);

}  // namespace cps
