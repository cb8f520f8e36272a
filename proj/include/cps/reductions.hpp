#pragma once

#include <array>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cps/cmpstt.hpp"
#include "cps/env.hpp"

namespace cps {

class ReductionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// literal +i is x_i, -i is its negation, 1 <= i <= num_vars
struct CnfFormula {
    int num_vars = 0;
    std::vector<std::array<int, 3>> clauses;

    void validate() const;  // throws ReductionError
    // assignment[i-1] is the value of x_i
    bool satisfied_by(const std::vector<bool>& assignment) const;
};

// DIMACS cnf; throws ReductionError carrying the line number
CnfFormula parse_dimacs(std::istream& in);
// first satisfying assignment in binary counting order, if any
std::optional<std::vector<bool>> brute_force_sat(const CnfFormula& f);

struct SetCoverInstance {
    int universe = 0;                      // elements 1..universe
    std::vector<std::vector<int>> family;  // f_1..f_beta
    int k = 0;

    void validate() const;
    bool covers(const std::vector<int>& chosen) const;  // chosen subsets, 1-based
};

// ---- persistent surveillance from 3SAT ----

struct CmpsInstance {
    GraphEnv env;
    Configuration p0;
    int r = 0;
    int T = 0;
    int alpha = 0, beta = 0;
};

CmpsInstance gen_cmps_from_3sat(const CnfFormula& f);
// one period p_0 .. p_T with p_T = p_0; robot 0 commutes v -> c_1 -> v
Plan encode_cmps_witness(const CmpsInstance& inst, const CnfFormula& f, const std::vector<bool>& assignment);

// ---- reachability from set cover ----

struct CmrInstance {
    GraphEnv env;
    Vertex goal = 0;
    int r = 0;
    int T = 0;
    int M = 0;
};

CmrInstance gen_cmr_from_sc(const SetCoverInstance& sc);  // k >= beta -> "trivial instance"
// M+1 robots put one of them on f_j and return the rest to b
Plan cmr_placement(const CmrInstance& inst, int j);
Plan encode_cmr_witness(const CmrInstance& inst, const SetCoverInstance& sc, const std::vector<int>& cover);

// ---- relay placement from 3SAT ----

struct CmrdInstance {
    GraphEnv env;
    std::vector<Vertex> path;
    int r = 0;
};

CmrdInstance gen_cmrd_from_3sat(const CnfFormula& f);
std::vector<Vertex> cmrd_placement(const CmrdInstance& inst, const std::vector<bool>& assignment);

// ---- partition-tree instance from number partition ----

struct CmpsttInstance {
    PartitionTree tree;
    int r = 0;
    int T = 0;
};

CmpsttInstance gen_cmpstt_from_partition(const std::vector<int>& s);

// ---- small hand graphs ----

GraphEnv fig4a_env();  // b, v, w, u
GraphEnv fig4b_env();  // b, u, v, w
Plan fig4b_witness(const GraphEnv& env);

// ---- plan verifier ----

struct PlanClaims {
    std::vector<Vertex> visits;            // each must be occupied at some step
    std::optional<int> period;             // p_period == p_0
    std::optional<int> wi_bound;           // idleness bound under repetition, needs period
    std::optional<Vertex> goal;            // occupied at some step
    std::optional<Configuration> start;    // p_0
};

struct Violation {
    int t = -1;      // -1 for claims about the whole plan
    int robot = -1;
    std::string rule;  // movement, connectivity, start, period, visits, wi, goal, shape
    std::string detail;
};

struct Verdict {
    bool ok = false;
    std::optional<Violation> violation;
    std::vector<Vertex> visited;  // sorted
    std::optional<int> wi;        // max idleness over V_S when a period is claimed
    int goal_time = -1;
};

Verdict verify_plan(const GraphEnv& env, const Plan& plan, const PlanClaims& claims = {});

// ---- joint-state oracle ----

struct OracleQuestion {
    enum class Kind { reachable, min_period } kind = Kind::reachable;
    Vertex goal = -1;  // reachable only
};

struct OracleLimits {
    long max_states = 10'000'000;
};

struct OracleAnswer {
    bool refused = false;
    std::string reason;
    bool reachable = false;
    int steps = -1;                  // first time the goal is occupied
    std::optional<int> min_period;   // shortest cycle through a state set covering V_S
    std::vector<char> occupiable;    // vertices some reachable state occupies
    long states = 0;
};

// robots start at b; only connected configurations are expanded
OracleAnswer brute_force_oracle(const GraphEnv& env, int r, const OracleQuestion& q, const OracleLimits& lim = {});

}  // namespace cps
