#include "cps/reachability.hpp"

#include <algorithm>
#include <stdexcept>

namespace cps {

TraverseResult traverse(const GraphEnv& env) {
    int n = env.size();
    TraverseResult res;
    res.parent.assign(n, -1);
    res.marked.assign(n, 0);
    res.marked[env.base()] = 1;
    res.mark_order.push_back(env.base());
    bool changed = true;
    while (changed) {
        changed = false;
        for (Vertex v = 0; v < n; ++v) {
            if (res.marked[v]) continue;
            Vertex w = -1;
            for (Vertex x : env.neighbors(GraphSel::movement, v))
                if (res.marked[x]) {
                    w = x;
                    break;
                }
            if (w < 0) continue;
            bool link = false;
            for (Vertex u : env.neighbors(GraphSel::connectivity, v))
                if (res.marked[u]) {
                    link = true;
                    break;
                }
            if (!link) continue;
            res.marked[v] = 1;
            res.parent[v] = w;
            res.mark_order.push_back(v);
            changed = true;
        }
    }
    res.traverse = std::all_of(env.sensing().begin(), env.sensing().end(),
                               [&](Vertex s) { return res.marked[s] != 0; });
    return res;
}

Plan traverse_witness(const GraphEnv& env, const TraverseResult& tr) {
    // one robot parks on every marked vertex; a spare walks the parent chain,
    // which is fully occupied, and steps onto the new vertex last
    int n = env.size();
    int r = std::max(1, n - 1);
    Plan plan;
    plan.env_hash = env.hash();
    Configuration cur(r, env.base());
    plan.steps.push_back(cur);
    int next_spare = 0;
    for (std::size_t k = 1; k < tr.mark_order.size(); ++k) {
        Vertex v = tr.mark_order[k];
        std::vector<Vertex> chain;
        for (Vertex x = tr.parent[v]; x != env.base(); x = tr.parent[x]) chain.push_back(x);
        std::reverse(chain.begin(), chain.end());
        chain.push_back(v);
        int robot = next_spare++;
        for (Vertex x : chain) {
            cur[robot] = x;
            plan.steps.push_back(cur);
        }
    }
    return plan;
}

namespace {

bool chain_ok(const GraphEnv& env, std::vector<Vertex>& scratch, const std::vector<Vertex>& relays, Vertex head) {
    scratch = relays;
    scratch.push_back(head);
    return is_connected_set(env, scratch.data(), scratch.size());
}

}  // namespace

RelayResult drop_relays_on_path(const GraphEnv& env, const std::vector<Vertex>& path, int r) {
    if (r < 1) throw std::invalid_argument("robot count must be at least 1");
    RelayResult res;
    if (path.empty()) return res;
    std::vector<Vertex> relays, scratch;
    int i = 0;
    for (; i + 1 < static_cast<int>(path.size()); ++i) {
        if (chain_ok(env, scratch, relays, path[i + 1])) continue;
        if (static_cast<int>(relays.size()) >= r - 1) break;
        relays.push_back(path[i]);
        res.relay_indices.push_back(i);
        if (!chain_ok(env, scratch, relays, path[i + 1])) break;
    }
    res.furthest = i;
    res.success = i + 1 == static_cast<int>(path.size());
    return res;
}

bool verify_relay_placement(const GraphEnv& env, const std::vector<Vertex>& path,
                            const std::vector<Vertex>& placement) {
    for (Vertex p : placement)
        if (std::find(path.begin(), path.end(), p) == path.end())
            throw std::invalid_argument("placement vertex " + env.name(p) + " is not on the path");
    std::vector<Vertex> frozen, scratch;
    for (Vertex h : path) {
        if (std::find(placement.begin(), placement.end(), h) != placement.end() &&
            std::find(frozen.begin(), frozen.end(), h) == frozen.end())
            frozen.push_back(h);
        if (!chain_ok(env, scratch, frozen, h)) return false;
    }
    return true;
}

Hops min_relays_between(const GraphEnv& env, Vertex s, Vertex d) {
    Hops h = env.dist(GraphSel::connectivity, s, d);
    if (!h) return std::nullopt;
    return std::max(0, *h - 1);
}

}  // namespace cps
