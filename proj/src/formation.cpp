#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <stdexcept>

#include "cps/planners.hpp"

namespace cps {

std::string label_string(const Label& l) {
    std::string s;
    bool wide = std::any_of(l.begin(), l.end(), [](int x) { return x > 9; });
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (wide && i) s += '.';
        s += std::to_string(l[i]);
    }
    return s;
}

LabeledTree label_trie(const std::vector<Edge>& tree_edges, Vertex root) {
    std::map<Vertex, std::vector<Vertex>> adj;
    for (auto [a, b] : tree_edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& [v, l] : adj) std::sort(l.begin(), l.end());
    LabeledTree t;
    t.vertex.push_back(root);
    t.parent.push_back(-1);
    t.label.push_back({0});
    std::map<Vertex, int> node_of{{root, 0}};
    for (int head = 0; head < t.size(); ++head) {
        int k = 0;
        for (Vertex w : adj[t.vertex[head]]) {
            if (node_of.count(w)) continue;
            node_of[w] = t.size();
            Label l = t.label[head];
            l.push_back(++k);
            t.vertex.push_back(w);
            t.parent.push_back(head);
            t.label.push_back(std::move(l));
        }
    }
    return t;
}

std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
    int n = static_cast<int>(cost.size());
    if (n == 0) return {};
    int m = static_cast<int>(cost[0].size());
    if (m < n) throw std::invalid_argument("hungarian: more rows than columns");
    const double inf = std::numeric_limits<double>::infinity();
    // potentials formulation, 1-based
    std::vector<double> u(n + 1, 0), v(m + 1, 0);
    std::vector<int> p(m + 1, 0), way(m + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(m + 1, inf);
        std::vector<char> used(m + 1, 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], j1 = 0;
            double delta = inf;
            for (int j = 1; j <= m; ++j)
                if (!used[j]) {
                    double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if (cur < minv[j]) {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if (minv[j] < delta) {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            for (int j = 0; j <= m; ++j)
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> col(n, -1);
    for (int j = 1; j <= m; ++j)
        if (p[j]) col[p[j] - 1] = j - 1;
    return col;
}

namespace {

int tree_dist(const LabeledTree& t, int a, int b) {
    auto depth = [&](int x) {
        int d = 0;
        while (t.parent[x] >= 0) x = t.parent[x], ++d;
        return d;
    };
    int da = depth(a), db = depth(b), d = 0;
    while (da > db) a = t.parent[a], --da, ++d;
    while (db > da) b = t.parent[b], --db, ++d;
    while (a != b) a = t.parent[a], b = t.parent[b], d += 2;
    return d;
}

}  // namespace

FormationMatch match_formation(const GraphEnv& env, const Configuration& pos, const LabeledTree& fin) {
    int r = static_cast<int>(pos.size());
    FormationMatch fm;
    LabeledTree& act = fm.actual;
    act.vertex.assign(r + 1, env.base());
    for (int i = 0; i < r; ++i) act.vertex[i + 1] = pos[i];
    act.parent.assign(r + 1, -1);
    act.label.assign(r + 1, {});
    act.label[0] = {0};
    std::vector<char> placed(r + 1, 0);
    placed[0] = 1;
    fm.goal_node.assign(r, -1);

    auto linked = [&](int a, int b) {
        Vertex va = act.vertex[a], vb = act.vertex[b];
        return va == vb || env.adjacent(GraphSel::connectivity, va, vb);
    };

    // embed the final tree top-down, taking the closest free robot next to the parent
    std::vector<int> holder(fin.size(), -1);
    holder[0] = 0;
    for (int f = 1; f < fin.size(); ++f) {
        int a = holder[fin.parent[f]];
        if (a < 0) continue;
        const auto& to_f = env.bfs_row(GraphSel::movement, fin.vertex[f]);
        int best = -1, best_d = 0;
        for (int x = 1; x <= r; ++x) {
            if (placed[x] || !linked(a, x)) continue;
            int d = to_f[act.vertex[x]] < 0 ? 4 * env.size() : to_f[act.vertex[x]];
            if (best < 0 || d < best_d) best = x, best_d = d;
        }
        if (best < 0) continue;
        holder[f] = best;
        placed[best] = 1;
        act.parent[best] = a;
        act.label[best] = fin.label[f];
        fm.goal_node[best - 1] = f;
    }

    // remaining robots hang off the tree breadth first with fresh child indices
    std::map<Label, int> next_child;
    auto bump = [&](const Label& l) {
        Label parent(l.begin(), l.end() - 1);
        next_child[parent] = std::max(next_child[parent], l.back());
    };
    for (int f = 1; f < fin.size(); ++f) bump(fin.label[f]);
    std::deque<int> q;
    for (int x = 0; x <= r; ++x)
        if (placed[x]) q.push_back(x);
    while (!q.empty()) {
        int a = q.front();
        q.pop_front();
        for (int x = 1; x <= r; ++x) {
            if (placed[x] || !linked(a, x)) continue;
            placed[x] = 1;
            act.parent[x] = a;
            Label l = act.label[a];
            l.push_back(++next_child[act.label[a]]);
            act.label[x] = std::move(l);
            q.push_back(x);
        }
    }
    for (int x = 1; x <= r; ++x)
        if (!placed[x]) {  // disconnected input; keep labels well formed anyway
            act.parent[x] = 0;
            act.label[x] = {0, ++next_child[Label{0}]};
        }

    std::map<Label, int> held;
    for (int x = 0; x <= r; ++x) held[act.label[x]] = x;
    for (int i = 0; i < r; ++i)
        if (fm.goal_node[i] < 0) fm.extra.push_back(i);
    for (int f = 1; f < fin.size(); ++f)
        if (holder[f] < 0) {
            fm.missing.push_back(fin.label[f]);
            fm.missing_node.push_back(f);
        }

    std::vector<std::vector<double>> D(fm.extra.size(), std::vector<double>(fm.missing.size()));
    std::vector<int> anchor(fm.missing.size());
    for (std::size_t j = 0; j < fm.missing.size(); ++j) {
        Label pre = fm.missing[j];
        int node = 0;
        while (pre.size() > 1) {
            pre.pop_back();
            auto it = held.find(pre);
            if (it != held.end()) {
                node = it->second;
                break;
            }
        }
        anchor[j] = node;
    }
    fm.anchor = anchor;
    if (fm.extra.empty() || fm.missing.empty()) {
        fm.assignment.assign(fm.extra.size(), -1);
        return fm;
    }
    for (std::size_t e = 0; e < fm.extra.size(); ++e)
        for (std::size_t j = 0; j < fm.missing.size(); ++j)
            D[e][j] = tree_dist(act, fm.extra[e] + 1, anchor[j]);
    if (fm.extra.size() <= fm.missing.size()) {
        fm.assignment = hungarian(D);
    } else {
        std::vector<std::vector<double>> Dt(fm.missing.size(), std::vector<double>(fm.extra.size()));
        for (std::size_t e = 0; e < fm.extra.size(); ++e)
            for (std::size_t j = 0; j < fm.missing.size(); ++j) Dt[j][e] = D[e][j];
        auto col = hungarian(Dt);
        fm.assignment.assign(fm.extra.size(), -1);
        for (std::size_t j = 0; j < col.size(); ++j) fm.assignment[col[j]] = static_cast<int>(j);
    }
    return fm;
}

}  // namespace cps
