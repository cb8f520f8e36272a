#pragma once

#include <vector>

#include "cps/env.hpp"

namespace cps {

struct TraverseResult {
    bool traverse = false;
    std::vector<Vertex> parent;  // -1 for none
    std::vector<char> marked;
    std::vector<Vertex> mark_order;  // b first
};

TraverseResult traverse(const GraphEnv& env);

// executable plan with n-1 robots that visits every marked vertex
Plan traverse_witness(const GraphEnv& env, const TraverseResult& tr);

struct RelayResult {
    bool success = false;
    std::vector<int> relay_indices;  // indices into the path
    int furthest = 0;                // furthest path index the head reached
};

// greedy group walk; throws std::invalid_argument if r < 1
RelayResult drop_relays_on_path(const GraphEnv& env, const std::vector<Vertex>& path, int r);

// throws std::invalid_argument if a placement vertex is not on the path
bool verify_relay_placement(const GraphEnv& env, const std::vector<Vertex>& path,
                            const std::vector<Vertex>& placement);

// interior vertex count of a shortest connectivity path
Hops min_relays_between(const GraphEnv& env, Vertex s, Vertex d);

}  // namespace cps
