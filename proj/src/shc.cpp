#include <algorithm>
#include <numeric>

#include "cps/planners.hpp"
#include "detail.hpp"

namespace cps {

namespace {

struct Cycle {
    LabeledTree formation;
    std::vector<Vertex> goals;  // terminals in value order
};

Cycle select_goals(const GraphEnv& env, const Configuration& p, const IdlenessTrace& tr, int t,
                   const WeightParams& params) {
    const auto& vs = env.sensing();
    int r = static_cast<int>(p.size());
    std::vector<int> idle(vs.size());
    for (std::size_t k = 0; k < vs.size(); ++k) idle[k] = t - tr.last_visit()[k];
    AssignmentMatrix a = assignment_matrix(env, p, idle, params);

    // each robot takes its best location not yet chosen by a lower id
    struct Pick {
        double value;
        Vertex v;
        int robot;
    };
    std::vector<Pick> picks;
    std::vector<char> taken(vs.size(), 0);
    for (int i = 0; i < r && !vs.empty(); ++i) {
        bool any_free = std::find(taken.begin(), taken.end(), 0) != taken.end();
        int g = -1;
        for (std::size_t k = 0; k < vs.size(); ++k) {
            if (any_free && taken[k]) continue;
            if (g < 0 || a[k][i] > a[g][i]) g = static_cast<int>(k);
        }
        taken[g] = 1;
        picks.push_back({a[g][i], vs[g], i});
    }
    std::stable_sort(picks.begin(), picks.end(), [](const Pick& x, const Pick& y) {
        if (x.value != y.value) return x.value > y.value;
        return x.v < y.v;
    });
    std::vector<Vertex> order;
    for (const auto& pk : picks)
        if (std::find(order.begin(), order.end(), pk.v) == order.end()) order.push_back(pk.v);

    Cycle c;
    SteinerTree best;
    best.ok = true;
    best.vertices = {env.base()};
    std::vector<Vertex> terms{env.base()};
    for (Vertex v : order) {
        terms.push_back(v);
        SteinerTree st = steiner_tree_min_nonterminals(env, terms);
        if (!st.ok || static_cast<int>(st.vertices.size()) > r + 1) break;
        best = std::move(st);
        c.goals.push_back(v);
    }
    c.formation = label_trie(best.edges, env.base());
    int k = 0;
    for (int f = 1; f < c.formation.size(); ++f)
        if (c.formation.parent[f] == 0) ++k;
    while (c.formation.size() < r + 1) {  // surplus robots wait at the base
        c.formation.vertex.push_back(env.base());
        c.formation.parent.push_back(0);
        c.formation.label.push_back({0, ++k});
    }
    return c;
}

int depth_of(const LabeledTree& t, int node) { return static_cast<int>(t.label[node].size()); }

}  // namespace

Plan plan_shc(const GraphEnv& env, int r, const ShcConfig& cfg, const WeightParams& params) {
    Plan plan;
    plan.env_hash = env.hash();
    Configuration p(r, env.base());
    plan.steps.push_back(p);
    IdlenessTrace trace(env, false);
    trace.record_step(p, 0);
    int t = 0;
    auto emit = [&] {
        ++t;
        plan.steps.push_back(p);
        trace.record_step(p, t);
    };
    auto done = [&] { return t >= cfg.horizon || (cfg.stop_on_coverage && trace.all_visited()); };
    int cycle_cap = 4 * env.size() + 16;

    while (!done()) {
        Cycle cyc = select_goals(env, p, trace, t, params);
        for (int h = 0; h < cfg.replan_steps && !done(); ++h) emit();
        if (done()) break;

        FormationMatch fm = match_formation(env, p, cyc.formation);
        const LabeledTree& fin = cyc.formation;
        std::vector<int> goal_node = fm.goal_node;
        // extras walk the actual tree towards the anchor of their missing slot
        std::vector<std::vector<Vertex>> route(r);
        std::vector<int> pending_node(r, -1);
        for (std::size_t e = 0; e < fm.extra.size(); ++e) {
            int robot = fm.extra[e], j = fm.assignment[e];
            if (j < 0) continue;
            int from = robot + 1, to = fm.anchor[j];
            std::vector<int> up, down;
            auto depth = [&](int x) {
                int d = 0;
                while (fm.actual.parent[x] >= 0) x = fm.actual.parent[x], ++d;
                return d;
            };
            int a = from, b = to, da = depth(a), db = depth(b);
            while (da > db) up.push_back(a = fm.actual.parent[a]), --da;
            while (db > da) down.push_back(b), b = fm.actual.parent[b], --db;
            while (a != b) {
                up.push_back(a = fm.actual.parent[a]);
                down.push_back(b);
                b = fm.actual.parent[b];
            }
            std::vector<Vertex> path;
            for (int x : up) path.push_back(fm.actual.vertex[x]);
            for (auto it = down.rbegin(); it != down.rend(); ++it) path.push_back(fm.actual.vertex[*it]);
            if (path.empty() || path.back() != fm.actual.vertex[to]) path.push_back(fm.actual.vertex[to]);
            route[robot] = std::move(path);
            pending_node[robot] = fm.missing_node[j];
        }

        std::size_t need = cyc.goals.size();
        if (cfg.kappa > 0) need = std::min<std::size_t>(need, cfg.kappa);
        std::vector<char> reached(need, 0);
        auto mark = [&] {
            for (std::size_t g = 0; g < need; ++g)
                if (std::find(p.begin(), p.end(), cyc.goals[g]) != p.end()) reached[g] = 1;
        };
        auto all_reached = [&] { return std::all_of(reached.begin(), reached.end(), [](char c) { return c; }); };
        mark();

        std::vector<int> order(r);
        for (int steps = 0; !done() && !all_reached() && steps < cycle_cap; ++steps) {
            bool extras_left = false;
            for (int i = 0; i < r; ++i)
                if (goal_node[i] < 0 && pending_node[i] >= 0) extras_left = true;
            bool moved = false;
            for (int i = 0; i < r; ++i) {
                if (goal_node[i] >= 0 || pending_node[i] < 0) continue;
                auto& path = route[i];
                while (!path.empty() && p[i] == path.front()) path.erase(path.begin());
                if (!path.empty()) moved |= detail::greedy_step(env, p, i, path.front());
                while (!path.empty() && p[i] == path.front()) path.erase(path.begin());
                if (path.empty()) {  // arrived at the anchor: take over the missing label
                    goal_node[i] = pending_node[i];
                    pending_node[i] = -1;
                }
            }
            if (!extras_left) {
                std::iota(order.begin(), order.end(), 0);
                std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
                    int dx = goal_node[x] < 0 ? 1 << 20 : depth_of(fin, goal_node[x]);
                    int dy = goal_node[y] < 0 ? 1 << 20 : depth_of(fin, goal_node[y]);
                    return dx < dy;
                });
                for (int i : order)
                    if (goal_node[i] >= 0) moved |= detail::greedy_step(env, p, i, fin.vertex[goal_node[i]]);
            }
            emit();
            mark();
            if (!moved) break;
        }
    }
    return plan;
}

}  // namespace cps
