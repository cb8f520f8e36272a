#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cps/planners.hpp"
#include "cps/reachability.hpp"

namespace cps {

namespace {

std::vector<Vertex> shortest_path(const GraphEnv& env, Vertex s, Vertex d) {
    // walk down the BFS distance field of d, lowest id first
    const auto& row = env.bfs_row(GraphSel::movement, d);
    std::vector<Vertex> path{s};
    if (row[s] < 0) return {};
    for (Vertex cur = s; cur != d;) {
        for (Vertex w : env.neighbors(GraphSel::movement, cur))
            if (row[w] == row[cur] - 1) {
                cur = w;
                break;
            }
        path.push_back(cur);
    }
    return path;
}

// serpentine rank of every vertex: the base-side column first, then rows from the far side back
std::vector<long> sweep_rank(const GraphEnv& env) {
    int n = env.size();
    std::vector<long> rank(n);
    const auto& g = env.grid();
    if (!g) {
        const auto& row = env.bfs_row(GraphSel::movement, env.base());
        for (Vertex v = 0; v < n; ++v) rank[v] = -(row[v] < 0 ? 0L : static_cast<long>(row[v])) * n + v;
        return rank;
    }
    Cell b = g->cell(env.base());
    bool fx = 2 * b.x > g->width + 1, fy = 2 * b.y > g->height + 1;
    long W = g->width, H = g->height;
    for (Vertex v = 0; v < n; ++v) {
        Cell c = g->cell(v);
        long X = fx ? W + 1 - c.x : c.x, Y = fy ? H + 1 - c.y : c.y;
        if (X == 1) {
            rank[v] = Y - 1;
        } else {
            long row_from_top = H - Y;  // 0 for the far row
            long along = row_from_top % 2 == 0 ? X - 2 : W - X;
            rank[v] = H + row_from_top * (W - 1) + along;
        }
    }
    return rank;
}

}  // namespace

TourResult build_fh_tour(const GraphEnv& env) {
    TourResult res;
    const auto& row = env.bfs_row(GraphSel::movement, env.base());
    for (Vertex s : env.sensing())
        if (row[s] < 0) res.unreachable.push_back(s);
    if (!res.unreachable.empty() || env.sensing().empty()) {
        res.ok = res.unreachable.empty();
        res.tour.cells = {env.base()};
        return res;
    }
    auto rank = sweep_rank(env);
    long base_rank = rank[env.base()];
    std::vector<Vertex> order = env.sensing();
    // rotate so the sweep starts at the base position
    long span = static_cast<long>(rank.size()) + 1;
    auto key = [&](Vertex v) { return (rank[v] - base_rank + span * 4) % (span * 4); };
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return key(a) < key(b); });
    std::vector<Vertex> cells{env.base()};
    for (Vertex s : order) {
        if (s == cells.back()) continue;
        auto p = shortest_path(env, cells.back(), s);
        cells.insert(cells.end(), p.begin() + 1, p.end());
    }
    auto back = shortest_path(env, cells.back(), env.base());
    if (back.size() > 2) cells.insert(cells.end(), back.begin() + 1, back.end() - 1);
    res.ok = true;
    res.tour.cells = std::move(cells);
    res.tour.start = 0;
    return res;
}

namespace {

struct ChainSolver {
    const GraphEnv& env;
    int k;  // relays
    std::vector<std::vector<Vertex>> opts;
    std::vector<std::vector<double>> cost;
    std::vector<std::vector<int>> from;

    bool linked(Vertex a, Vertex b) const { return a == b || env.adjacent(GraphSel::connectivity, a, b); }

    double ideal_cost(Vertex q, int j, Vertex leader) const {
        const auto& g = env.grid();
        if (!g) return 0.0;
        Cell b = g->cell(env.base()), l = g->cell(leader), c = g->cell(q);
        double f = static_cast<double>(j) / (k + 1);
        double ix = b.x + f * (l.x - b.x), iy = b.y + f * (l.y - b.y);
        return (c.x - ix) * (c.x - ix) + (c.y - iy) * (c.y - iy);
    }

    // relays 1..k sit at p[1..k]; returns false if no chain fits the leader position
    bool solve(const Configuration& p, Vertex leader, Configuration& out) {
        if (k == 0) return linked(env.base(), leader);
        const double inf = std::numeric_limits<double>::infinity();
        opts.assign(k, {});
        cost.assign(k, {});
        from.assign(k, {});
        for (int j = 0; j < k; ++j) {
            Vertex here = p[j + 1];
            opts[j] = env.neighbors(GraphSel::movement, here);
            opts[j].insert(std::lower_bound(opts[j].begin(), opts[j].end(), here), here);
            cost[j].assign(opts[j].size(), inf);
            from[j].assign(opts[j].size(), -1);
            for (std::size_t o = 0; o < opts[j].size(); ++o) {
                Vertex q = opts[j][o];
                double c = ideal_cost(q, j + 1, leader);
                if (j == 0) {
                    if (linked(env.base(), q)) cost[0][o] = c;
                    continue;
                }
                for (std::size_t pr = 0; pr < opts[j - 1].size(); ++pr) {
                    if (cost[j - 1][pr] == inf || !linked(opts[j - 1][pr], q)) continue;
                    double v = cost[j - 1][pr] + c;
                    if (v < cost[j][o] - 1e-12) {
                        cost[j][o] = v;
                        from[j][o] = static_cast<int>(pr);
                    }
                }
            }
        }
        int best = -1;
        for (std::size_t o = 0; o < opts[k - 1].size(); ++o)
            if (cost[k - 1][o] < inf && linked(opts[k - 1][o], leader) &&
                (best < 0 || cost[k - 1][o] < cost[k - 1][best] - 1e-12))
                best = static_cast<int>(o);
        if (best < 0) return false;
        for (int j = k - 1; j >= 0; --j) {
            out[j + 1] = opts[j][best];
            best = from[j][best];
        }
        return true;
    }
};

}  // namespace

PlanResult plan_fh(const GraphEnv& env, int r, const RunLimits& lim, const Tour& tour) {
    PlanResult res;
    res.plan.env_hash = env.hash();
    if (r < 1) {
        res.reason = "at least one robot is required";
        return res;
    }
    int need = 1;
    for (Vertex c : tour.cells) {
        Hops h = min_relays_between(env, env.base(), c);
        if (!h) {
            res.reason = "tour cell " + env.name(c) + " is cut off from the base in G_C";
            return res;
        }
        need = std::max(need, *h + 1);
    }
    if (r < need) {
        res.reason = "chain to the farthest tour cell needs " + std::to_string(need) + " robots, have " +
                     std::to_string(r);
        return res;
    }
    res.feasible = true;

    int n = env.size(), L = static_cast<int>(tour.cells.size());
    Configuration p(r, env.base());
    res.plan.steps.push_back(p);
    IdlenessTrace trace(env, false);
    trace.record_step(p, 0);
    std::vector<int> lap_seen(n, 0);
    int lap = 1;
    auto see = [&] {
        for (Vertex v : p) lap_seen[v] = lap;
    };
    see();
    int idx = 0, target_idx = -1, stuck = 0;
    int patience = 2 * (env.grid() ? env.grid()->width + env.grid()->height : n) + 2 * r;
    ChainSolver chain{env, r - 1, {}, {}, {}};

    auto pick_target = [&]() -> int {
        for (int pass = 0; pass < 2; ++pass) {
            for (int s = 0; s < L; ++s) {
                int j = (idx + s) % L;
                Vertex c = tour.cells[j];
                if (env.is_sensing(c) && lap_seen[c] != lap) return j;
            }
            ++lap;  // lap complete, start over from where the leader is
            see();
        }
        return -1;
    };

    for (int t = 0; t < lim.horizon; ++t) {
        if (lim.stop_on_coverage && trace.all_visited()) break;
        if (target_idx < 0 || lap_seen[tour.cells[target_idx]] == lap) {
            target_idx = pick_target();
            stuck = 0;
        }
        Configuration next = p;
        if (target_idx >= 0) {
            Vertex goal = tour.cells[target_idx];
            const auto& row = env.bfs_row(GraphSel::movement, goal);
            std::vector<Vertex> cand;
            for (Vertex w : env.neighbors(GraphSel::movement, p[0]))
                if (row[w] >= 0 && row[w] < row[p[0]]) cand.push_back(w);
            cand.push_back(p[0]);
            for (Vertex c : cand) {
                Configuration trial = p;
                trial[0] = c;
                if (chain.solve(p, c, trial)) {
                    next = trial;
                    break;
                }
            }
            if (next[0] == p[0]) {
                if (++stuck > patience) {  // give the cell up for this lap
                    lap_seen[goal] = lap;
                    target_idx = -1;
                    stuck = 0;
                }
            } else {
                stuck = 0;
            }
        }
        p = std::move(next);
        see();
        if (target_idx >= 0 && p[0] == tour.cells[target_idx]) {
            idx = (target_idx + 1) % L;
            target_idx = -1;
        }
        res.plan.steps.push_back(p);
        trace.record_step(p, t + 1);
    }
    return res;
}

}  // namespace cps
