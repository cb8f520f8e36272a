#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

#include "cps/planners.hpp"

namespace cps {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

// 0-1 shortest paths: entering a vertex costs 1 unless it is free
void zero_one_bfs(const GraphEnv& env, const std::vector<Vertex>& sources, const std::vector<char>& free_v,
                  std::vector<int>& g, std::vector<Vertex>& par) {
    int n = env.size();
    g.assign(n, kInf);
    par.assign(n, -1);
    std::deque<Vertex> dq;
    for (Vertex s : sources) {
        g[s] = 0;
        dq.push_back(s);
    }
    while (!dq.empty()) {
        Vertex u = dq.front();
        dq.pop_front();
        for (Vertex w : env.neighbors(GraphSel::connectivity, u)) {
            int c = free_v[w] ? 0 : 1;
            if (g[u] + c < g[w]) {
                g[w] = g[u] + c;
                par[w] = u;
                if (c == 0)
                    dq.push_front(w);
                else
                    dq.push_back(w);
            }
        }
    }
}

}  // namespace

SteinerTree steiner_tree_min_nonterminals(const GraphEnv& env, const std::vector<Vertex>& terms_in) {
    SteinerTree out;
    std::vector<Vertex> terms;
    for (Vertex t : terms_in)
        if (std::find(terms.begin(), terms.end(), t) == terms.end()) terms.push_back(t);
    if (terms.empty()) {
        out.ok = true;
        return out;
    }
    int n = env.size();
    const auto& reach = env.bfs_row(GraphSel::connectivity, terms[0]);
    for (Vertex t : terms)
        if (reach[t] < 0) out.unreachable.push_back(t);
    if (!out.unreachable.empty()) return out;

    std::vector<char> is_term(n, 0), free_v(n, 0);
    std::vector<int> comp(n, -1);
    std::vector<std::vector<Vertex>> comps;
    for (Vertex t : terms) {
        is_term[t] = free_v[t] = 1;
        comp[t] = static_cast<int>(comps.size());
        comps.push_back({t});
    }
    auto alive = [&] {
        std::vector<int> a;
        for (int c = 0; c < static_cast<int>(comps.size()); ++c)
            if (!comps[c].empty()) a.push_back(c);
        return a;
    };

    std::vector<std::vector<int>> g;
    std::vector<std::vector<Vertex>> par;
    for (auto live = alive(); live.size() > 1; live = alive()) {
        int m = static_cast<int>(live.size());
        g.resize(m);
        par.resize(m);
        for (int j = 0; j < m; ++j) zero_one_bfs(env, comps[live[j]], free_v, g[j], par[j]);

        double best_ratio = std::numeric_limits<double>::infinity();
        Vertex best_v = -1;
        std::vector<int> best_set;
        std::vector<std::pair<int, int>> d(m);
        for (Vertex v = 0; v < n; ++v) {
            int cv = free_v[v] ? 0 : 1;
            int usable = 0;
            for (int j = 0; j < m; ++j) {
                int gv = g[j][v];
                if (gv >= kInf) continue;
                int dj = comp[v] == live[j] ? 0 : gv - cv;
                d[usable++] = {dj, j};
            }
            if (usable < 2) continue;
            std::sort(d.begin(), d.begin() + usable);
            int sum = cv;
            for (int k = 0; k < usable; ++k) {
                sum += d[k].first;
                if (k == 0) continue;
                double ratio = static_cast<double>(sum) / (k + 1);
                if (ratio < best_ratio - 1e-12) {
                    best_ratio = ratio;
                    best_v = v;
                    best_set.clear();
                    for (int q = 0; q <= k; ++q) best_set.push_back(d[q].second);
                }
            }
        }
        if (best_v < 0) break;  // cannot happen for a connected terminal set

        // union of v and the paths to the chosen components
        std::vector<Vertex> add{best_v};
        for (int j : best_set)
            for (Vertex x = best_v; x >= 0; x = par[j][x]) {
                add.push_back(x);
                if (comp[x] == live[j]) break;
            }
        int target = live[best_set[0]];
        std::vector<int> absorbed;
        for (Vertex x : add)
            if (comp[x] >= 0 && comp[x] != target) absorbed.push_back(comp[x]);
        std::sort(absorbed.begin(), absorbed.end());
        absorbed.erase(std::unique(absorbed.begin(), absorbed.end()), absorbed.end());
        for (int c : absorbed) {
            for (Vertex x : comps[c]) {
                comp[x] = target;
                comps[target].push_back(x);
            }
            comps[c].clear();
        }
        for (Vertex x : add)
            if (comp[x] < 0) {
                comp[x] = target;
                free_v[x] = 1;
                comps[target].push_back(x);
            }
    }

    std::vector<char> in(n, 0);
    for (Vertex v = 0; v < n; ++v) in[v] = comp[v] >= 0;
    // spanning tree of the chosen set, then strip non-terminal leaves
    std::vector<Vertex> parent(n, -1);
    std::vector<char> seen(n, 0);
    std::deque<Vertex> q{terms[0]};
    seen[terms[0]] = 1;
    std::vector<Vertex> order;
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop_front();
        order.push_back(u);
        for (Vertex w : env.neighbors(GraphSel::connectivity, u))
            if (in[w] && !seen[w]) {
                seen[w] = 1;
                parent[w] = u;
                q.push_back(w);
            }
    }
    std::vector<int> kids(n, 0);
    for (Vertex v : order)
        if (parent[v] >= 0) ++kids[parent[v]];
    std::vector<char> keep(n, 0);
    for (Vertex v : order) keep[v] = 1;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Vertex v = *it;
        if (!is_term[v] && kids[v] == 0) {
            keep[v] = 0;
            if (parent[v] >= 0) --kids[parent[v]];
        }
    }
    for (Vertex v : order)
        if (keep[v]) {
            out.vertices.push_back(v);
            if (parent[v] >= 0) out.edges.emplace_back(std::min(v, parent[v]), std::max(v, parent[v]));
            if (!is_term[v]) ++out.non_terminals;
        }
    std::sort(out.vertices.begin(), out.vertices.end());
    std::sort(out.edges.begin(), out.edges.end());
    out.ok = true;
    return out;
}

}  // namespace cps
