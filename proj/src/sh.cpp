#include <algorithm>
#include <limits>

#include "cps/planners.hpp"
#include "detail.hpp"

namespace cps {

namespace detail {

bool greedy_step(const GraphEnv& env, Configuration& p, int i, Vertex goal) {
    Vertex here = p[i];
    const auto& to_goal = env.bfs_row(GraphSel::movement, goal);
    int n = env.size();
    Vertex best = here;
    int best_d = hops_or_far(to_goal, here, n);
    auto consider = [&](Vertex c) {
        int d = hops_or_far(to_goal, c, n);
        if (d > best_d || (d == best_d && c >= best)) return;
        p[i] = c;
        bool ok = is_connected_config(env, p);
        p[i] = here;
        if (ok) {
            best = c;
            best_d = d;
        }
    };
    for (Vertex c : env.neighbors(GraphSel::movement, here)) consider(c);
    p[i] = best;
    return best != here;
}

}  // namespace detail

AssignmentMatrix assignment_matrix(const GraphEnv& env, const Configuration& positions,
                                   const std::vector<int>& idleness, const WeightParams& params) {
    const auto& vs = env.sensing();
    int r = static_cast<int>(positions.size()), n = env.size();
    std::vector<const std::vector<int>*> rows(r);
    for (int i = 0; i < r; ++i) rows[i] = &env.bfs_row(GraphSel::movement, positions[i]);
    AssignmentMatrix a(vs.size(), std::vector<double>(r, 0.0));
    for (std::size_t k = 0; k < vs.size(); ++k) {
        Vertex v = vs[k];
        // smallest and second smallest robot distance, for the j != i term
        int m1 = std::numeric_limits<int>::max(), m2 = m1, arg1 = -1;
        for (int i = 0; i < r; ++i) {
            int d = detail::hops_or_far(*rows[i], v, n);
            if (d < m1) {
                m2 = m1;
                m1 = d;
                arg1 = i;
            } else if (d < m2) {
                m2 = d;
            }
        }
        for (int i = 0; i < r; ++i) {
            int d = detail::hops_or_far(*rows[i], v, n);
            double other = r > 1 ? (i == arg1 ? m2 : m1) : 0.0;
            a[k][i] = idleness[k] + params.w0 * d + params.w1 * other;
        }
    }
    return a;
}

Plan plan_sh(const GraphEnv& env, int r, int horizon, const WeightParams& params) {
    return plan_sh(env, r, RunLimits{horizon, false}, params);
}

Plan plan_sh(const GraphEnv& env, int r, const RunLimits& lim, const WeightParams& params) {
    Plan plan;
    plan.env_hash = env.hash();
    Configuration p(r, env.base());
    plan.steps.push_back(p);
    IdlenessTrace trace(env, false);
    trace.record_step(p, 0);
    const auto& vs = env.sensing();
    std::vector<int> idle(vs.size());
    for (int t = 0; t < lim.horizon; ++t) {
        if (lim.stop_on_coverage && trace.all_visited()) break;
        if (!vs.empty()) {
            for (std::size_t k = 0; k < vs.size(); ++k) idle[k] = t - trace.last_visit()[k];
            AssignmentMatrix a = assignment_matrix(env, p, idle, params);
            Configuration next = p;
            for (int i = 0; i < r; ++i) {
                std::size_t g = 0;
                for (std::size_t k = 1; k < vs.size(); ++k)
                    if (a[k][i] > a[g][i]) g = k;
                // candidates are taken around p_t(i); lower ids already sit at p'
                detail::greedy_step(env, next, i, vs[g]);
            }
            p = std::move(next);
        }
        plan.steps.push_back(p);
        trace.record_step(p, t + 1);
    }
    return plan;
}

}  // namespace cps
