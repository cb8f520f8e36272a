#pragma once

#include <vector>

#include "cps/env.hpp"

namespace cps::detail {

// hop count with unreachable mapped past any real distance
inline int hops_or_far(const std::vector<int>& row, Vertex v, int n) { return row[v] < 0 ? 4 * n : row[v]; }

// move robot i one step toward goal: candidate in N(p[i]) ∪ {p[i]} closest to goal,
// lowest id on ties, keeping the configuration connected. p is updated in place.
// returns true if the robot changed vertex.
bool greedy_step(const GraphEnv& env, Configuration& p, int i, Vertex goal);

}  // namespace cps::detail
