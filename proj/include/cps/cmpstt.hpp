#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cps/env.hpp"
#include "cps/planners.hpp"

namespace cps {

// tree of partitions; index 0..n-1, B and Delta refer to the edge towards the parent
struct PartitionTree {
    int root = 0;
    std::vector<int> parent;  // -1 at the root
    std::vector<std::vector<int>> children;
    std::vector<int> A;       // min robots to cover
    std::vector<int> B;       // robots consumed on the edge from the parent
    std::vector<int> Delta;   // travel time from the parent
    std::vector<char> has_sensing;
    std::vector<std::string> name;
    std::function<int(int, int)> gamma;  // (partition, robots) -> cover time

    // grid binding, empty for abstract instances
    std::vector<Vertex> release;
    std::vector<std::vector<Vertex>> cells;
    std::vector<std::vector<Vertex>> path_from_parent;  // movement path, parent release -> own release

    int size() const { return static_cast<int>(parent.size()); }
    void add(const std::string& nm, int par, int a, int b, int delta, bool sensing);
};

struct SplitEntry {
    int branch = 0;  // the partition itself or one of its children
    int robots = 0;
    bool operator==(const SplitEntry&) const = default;
};
using SplitTuple = std::vector<SplitEntry>;

struct SplitPlan {
    std::map<int, std::vector<SplitTuple>> at;  // per release point; leaves may be omitted
};

std::string split_plan_string(const PartitionTree& tree, const SplitPlan& plan);

struct SplitEval {
    bool ok = false;
    std::string error;
    int wi = 0;
    std::vector<int> per_partition;  // -1 for partitions without sensing
};

SplitEval evaluate_split_plan(const PartitionTree& tree, const SplitPlan& plan, int r);

// robots a group must bring to a partition to cover its whole subtree
std::vector<int> subtree_need(const PartitionTree& tree);

struct SplitSearch {
    bool feasible = false;
    std::string reason;
    int binding_partition = -1;
    SplitPlan plan;
    SplitEval eval;
    bool exhaustive = false;  // enumeration used (<= 8 partitions)
    bool complete = false;    // enumeration finished inside the budget
    long evaluated = 0;
};

SplitSearch search_split_plan(const PartitionTree& tree, int r, long max_evals = 200000);
SplitPlan greedy_split_plan(const PartitionTree& tree, int r);

// ---- grid binding ----

struct Rect {
    int x0 = 1, y0 = 1, x1 = 1, y1 = 1;  // inclusive cell range
    bool has_release = false;
    Cell release{1, 1};
};

struct Partitioning {
    std::vector<Rect> rects;
};

// m columns by n rows of near-equal rectangles, listed bottom row first
Partitioning regular_split(const GridGeom& g, int m, int n);

enum class InnerPlanner { sh, shc, fh };

struct CmpsttConfig {
    Partitioning parts;
    InnerPlanner inner = InnerPlanner::sh;
    WeightParams params;
    std::map<int, WeightParams> params_by_k;  // per robots in a partition, overrides params
    int horizon = 0;
    long max_evals = 200000;
};

struct CoverCache;  // per-partition sub-grids and measured cover-and-return runs

struct GridPartitionTree {
    bool ok = false;
    std::string reason;
    PartitionTree tree;
    std::shared_ptr<CoverCache> cover;
};

// the gamma callback measures cover-and-return time with the inner planner and caches it
GridPartitionTree build_partition_tree(const GraphEnv& env, const CmpsttConfig& cfg);

struct CmpsttResult {
    PlanResult result;
    SplitSearch search;
    int partitions = 0;
    std::vector<std::pair<int, int>> covered;  // (tree node, robots) the inner planner ran with
};

CmpsttResult plan_cmpstt(const GraphEnv& env, int r, const CmpsttConfig& cfg);

struct PatternSearchConfig;

struct PartitionWeights {
    bool ok = false;
    std::string reason;
    std::map<int, WeightParams> by_k;  // feed into CmpsttConfig::params_by_k
    std::map<int, int> ct_by_k;
    std::map<int, double> seconds_by_k;
    double seconds = 0.0;  // summed over robot counts
};

// plans once with cfg, then tunes inner weights on a partition sub-grid for every robot count that plan used
PartitionWeights optimize_partition_weights(const GraphEnv& env, int r, const CmpsttConfig& cfg,
                                            const PatternSearchConfig& ps);

}  // namespace cps
