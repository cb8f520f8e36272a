#pragma once

#include <string>
#include <vector>

#include "cps/env.hpp"
#include "cps/planners.hpp"

namespace cps {

struct TraversalTree {
    Vertex root = -1;
    std::vector<Vertex> parent;                 // per env vertex, -1 outside the tree and at the root
    std::vector<std::vector<Vertex>> children;  // per env vertex, ascending id
    std::vector<char> member;
    std::vector<int> depth;        // hops from the root, -1 outside
    std::vector<int> edge_relays;  // relays needed on the edge to the parent
    std::vector<Vertex> nodes;     // BFS order from the root
    int size() const { return static_cast<int>(nodes.size()); }
};

struct TreeResult {
    bool ok = false;
    TraversalTree tree;
    std::vector<Vertex> unreachable;
};

TreeResult build_sensing_tree(const GraphEnv& env);
// tree from explicit parent pointers (root has parent -1); for tests and scenario files
TraversalTree tree_from_parents(const GraphEnv& env, Vertex root, const std::vector<Vertex>& parent);

enum class SplitRule { early, late };
enum class SelectRule { far, near };

struct SplitStrategy {
    SplitRule split = SplitRule::early;
    SelectRule select = SelectRule::far;
};

std::string strategy_name(const SplitStrategy& s);
bool parse_strategy(const std::string& s, SplitStrategy& out);

// robots needed to reach every leaf below the root
int tree_robot_demand(const GraphEnv& env, const TraversalTree& tree);

PlanResult plan_tt(const GraphEnv& env, const TraversalTree& tree, int r, const SplitStrategy& strategy,
                   const RunLimits& lim);

struct TtBest {
    SplitStrategy strategy;
    int ct = 0;
    PlanResult result;
    int per_strategy_ct[4] = {0, 0, 0, 0};
};

// all four strategies; keeps the smallest coverage time
TtBest plan_tt_best(const GraphEnv& env, const TraversalTree& tree, int r, const RunLimits& lim);

}  // namespace cps
