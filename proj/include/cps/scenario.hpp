#pragma once

#include <istream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cps/cmpstt.hpp"
#include "cps/env.hpp"

namespace cps {

class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// instance data that generated scenarios carry next to the world
struct ScenarioExtras {
    std::optional<int> robots;
    std::optional<int> horizon;
    std::optional<Configuration> start;
    std::optional<Vertex> goal;
    std::vector<Vertex> path;
};

struct Scenario {
    std::shared_ptr<GraphEnv> env;
    std::optional<GridSpec> grid;
    ScenarioExtras extras;
};

// JSON text; either {"grid": {...}} or {"graph": {...}}, see README
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
std::string scenario_json(const GraphEnv& env, const ScenarioExtras& extras = {});

struct PartitionTreeFile {
    PartitionTree tree;
    std::vector<std::vector<int>> gamma;  // per node, by robot count; last value repeats
    int robots = 0;
    int horizon = 0;
};

std::string partition_tree_json(const PartitionTree& tree, int robots, int horizon, int max_k);
PartitionTreeFile parse_partition_tree(const std::string& text);

// header lines "env_hash", "robots", "horizon", then one comma-separated step per line
std::string plan_text(const Plan& plan);
Plan parse_plan(std::istream& in);  // InputError names the line

std::string read_file(const std::string& path);

}  // namespace cps
