#pragma once

#include <string>
#include <vector>

#include "cps/env.hpp"
#include "cps/metrics.hpp"

namespace cps {

struct WeightParams {
    double w0 = 0.0;
    double w1 = 0.0;
};

// rows follow env.sensing(), columns are robots
using AssignmentMatrix = std::vector<std::vector<double>>;

AssignmentMatrix assignment_matrix(const GraphEnv& env, const Configuration& positions,
                                   const std::vector<int>& idleness, const WeightParams& params);

struct RunLimits {
    int horizon = 0;
    bool stop_on_coverage = false;  // truncate once every sensing vertex was seen
};

Plan plan_sh(const GraphEnv& env, int r, int horizon, const WeightParams& params);
Plan plan_sh(const GraphEnv& env, int r, const RunLimits& lim, const WeightParams& params);

// ---- Steiner tree with few non-terminals ----

struct SteinerTree {
    bool ok = false;
    std::vector<Vertex> vertices;        // sorted
    std::vector<Edge> edges;             // tree edges in G_C
    std::vector<Vertex> unreachable;     // terminals cut off from the first terminal
    int non_terminals = 0;
};

SteinerTree steiner_tree_min_nonterminals(const GraphEnv& env, const std::vector<Vertex>& terminals);

// ---- formation labels and matching ----

using Label = std::vector<int>;  // root = {0}, children append 1, 2, ...

std::string label_string(const Label& l);

struct LabeledTree {
    std::vector<Vertex> vertex;  // node -> env vertex
    std::vector<int> parent;     // -1 at the root (node 0)
    std::vector<Label> label;
    int size() const { return static_cast<int>(vertex.size()); }
};

// root the tree at `root`, children ordered by vertex id
LabeledTree label_trie(const std::vector<Edge>& tree_edges, Vertex root);

struct FormationMatch {
    LabeledTree actual;           // node 0 = base, node i+1 = robot i
    std::vector<int> extra;       // robot ids whose label is absent from the final tree
    std::vector<Label> missing;   // final labels nobody holds
    std::vector<int> assignment;  // extra[k] -> index into missing, -1 if unmatched
    std::vector<int> anchor;      // per missing label: actual node holding its closest held ancestor
    std::vector<int> missing_node;  // per missing label: node of the final tree
    std::vector<int> goal_node;   // per robot: matched node of the final tree (-1 for extras)
};

FormationMatch match_formation(const GraphEnv& env, const Configuration& positions, const LabeledTree& final_tree);

// min-cost assignment of rows to distinct columns (rows <= cols); returns column per row
std::vector<int> hungarian(const std::vector<std::vector<double>>& cost);

struct ShcConfig {
    int kappa = 0;         // 0: every terminal of the formation must be reached
    int horizon = 0;
    int replan_steps = 2;  // synchronous steps spent on goal selection and assignment
    bool stop_on_coverage = false;
};

Plan plan_shc(const GraphEnv& env, int r, const ShcConfig& cfg, const WeightParams& params);

// ---- full horizon ----

struct Tour {
    std::vector<Vertex> cells;  // cyclic, cells[0] = base
    int start = 0;
};

struct TourResult {
    bool ok = false;
    Tour tour;
    std::vector<Vertex> unreachable;
};

TourResult build_fh_tour(const GraphEnv& env);

struct PlanResult {
    bool feasible = false;
    std::string reason;
    Plan plan;
};

PlanResult plan_fh(const GraphEnv& env, int r, const RunLimits& lim, const Tour& tour);

}  // namespace cps
