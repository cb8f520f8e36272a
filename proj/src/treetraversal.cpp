#include "cps/treetraversal.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "cps/reachability.hpp"

namespace cps {

namespace {

constexpr int kUnreachable = std::numeric_limits<int>::max() / 4;

void finish_tree(const GraphEnv& env, TraversalTree& t) {
    int n = env.size();
    t.children.assign(n, {});
    t.depth.assign(n, -1);
    t.edge_relays.assign(n, 0);
    t.nodes.clear();
    for (Vertex v = 0; v < n; ++v)
        if (t.member[v] && t.parent[v] >= 0) t.children[t.parent[v]].push_back(v);
    t.depth[t.root] = 0;
    t.nodes.push_back(t.root);
    for (std::size_t h = 0; h < t.nodes.size(); ++h) {
        Vertex u = t.nodes[h];
        for (Vertex c : t.children[u]) {
            t.depth[c] = t.depth[u] + 1;
            t.edge_relays[c] = min_relays_between(env, u, c).value_or(kUnreachable);
            t.nodes.push_back(c);
        }
    }
}

}  // namespace

TreeResult build_sensing_tree(const GraphEnv& env) {
    TreeResult res;
    int n = env.size();
    const auto& row = env.bfs_row(GraphSel::movement, env.base());
    for (Vertex s : env.sensing())
        if (row[s] < 0) res.unreachable.push_back(s);
    if (!res.unreachable.empty()) return res;
    TraversalTree& t = res.tree;
    t.root = env.base();
    t.parent.assign(n, -1);
    t.member.assign(n, 0);
    // parent = lowest-id neighbour one hop closer to b
    std::vector<Vertex> bfs_parent(n, -1);
    for (Vertex v = 0; v < n; ++v) {
        if (v == env.base() || row[v] < 0) continue;
        for (Vertex w : env.neighbors(GraphSel::movement, v))
            if (row[w] == row[v] - 1) {
                bfs_parent[v] = w;
                break;
            }
    }
    t.member[t.root] = 1;
    for (Vertex s : env.sensing())
        for (Vertex v = s; !t.member[v]; v = bfs_parent[v]) {
            t.member[v] = 1;
            t.parent[v] = bfs_parent[v];
        }
    finish_tree(env, t);
    res.ok = true;
    return res;
}

TraversalTree tree_from_parents(const GraphEnv& env, Vertex root, const std::vector<Vertex>& parent) {
    TraversalTree t;
    int n = env.size();
    t.root = root;
    t.parent.assign(n, -1);
    t.member.assign(n, 0);
    t.member[root] = 1;
    for (Vertex v = 0; v < n && v < static_cast<int>(parent.size()); ++v)
        if (v != root && parent[v] >= 0) {
            if (!env.adjacent(GraphSel::movement, v, parent[v]))
                throw EnvError("tree edge " + env.name(v) + "-" + env.name(parent[v]) + " is not a movement edge");
            t.member[v] = 1;
            t.parent[v] = parent[v];
        }
    finish_tree(env, t);
    if (t.size() != std::count(t.member.begin(), t.member.end(), 1))
        throw EnvError("parent pointers do not form a tree rooted at " + env.name(root));
    return t;
}

std::string strategy_name(const SplitStrategy& s) {
    return std::string(s.split == SplitRule::early ? "early" : "late") + "-" +
           (s.select == SelectRule::far ? "far" : "near");
}

bool parse_strategy(const std::string& s, SplitStrategy& out) {
    for (SplitRule sp : {SplitRule::early, SplitRule::late})
        for (SelectRule se : {SelectRule::far, SelectRule::near}) {
            SplitStrategy c{sp, se};
            if (strategy_name(c) == s) {
                out = c;
                return true;
            }
        }
    return false;
}

namespace {

class Traversal {
public:
    Traversal(const GraphEnv& env, const TraversalTree& tree, int r, SplitStrategy st, int horizon)
        : env_(env), tree_(tree), st_(st), H_(horizon), pos_(r) {
        int n = env.size();
        far_.assign(n, 0);
        near_.assign(n, 0);
        nodes_.assign(n, 1);
        for (auto it = tree.nodes.rbegin(); it != tree.nodes.rend(); ++it) {
            Vertex v = *it;
            if (tree.children[v].empty()) {
                far_[v] = near_[v] = tree.depth[v];
                continue;
            }
            far_[v] = 0;
            near_[v] = std::numeric_limits<int>::max();
            for (Vertex c : tree.children[v]) {
                far_[v] = std::max(far_[v], far_[c]);
                near_[v] = std::min(near_[v], near_[c]);
                nodes_[v] += nodes_[c];
            }
        }
        for (auto& p : pos_) p.push_back(env.base());
    }

    bool linked(Vertex v, const std::vector<Vertex>& chain) const {
        if (v == env_.base() || env_.adjacent(GraphSel::connectivity, env_.base(), v)) return true;
        for (Vertex c : chain)
            if (c == v || env_.adjacent(GraphSel::connectivity, c, v)) return true;
        return false;
    }

    // greedy relay demand of every leaf below c when the group enters c from u
    // calls leaf(relays) per leaf; returns false if some leaf cannot be reached at all
    bool leaf_demands(Vertex u, Vertex c, std::vector<Vertex>& chain, const std::function<void(int)>& leaf) const {
        int added = 0;
        if (!linked(c, chain)) {
            chain.push_back(u);
            ++added;
            if (!linked(c, chain)) {
                chain.pop_back();
                return false;
            }
        }
        bool ok = true;
        if (tree_.children[c].empty()) {
            leaf(static_cast<int>(chain.size()));
        } else {
            for (Vertex g : tree_.children[c]) ok = ok && leaf_demands(c, g, chain, leaf);
        }
        if (added) chain.pop_back();
        return ok;
    }

    // robots needed for branch c (early: max over leaves, late: sum over leaves)
    int requirement(Vertex u, Vertex c, std::vector<Vertex> chain, bool late) const {
        std::size_t base = chain.size();
        int worst = 0, total = 0;
        bool ok = leaf_demands(u, c, chain, [&](int relays) {
            int need = relays - static_cast<int>(base) + 1;
            worst = std::max(worst, need);
            total += need;
        });
        if (!ok) return kUnreachable;
        return late ? total : worst;
    }

    int robot_demand() const {
        std::vector<Vertex> chain;
        int need = 1;
        for (Vertex c : tree_.children[tree_.root]) need = std::max(need, requirement(tree_.root, c, chain, false));
        return need;
    }

    void run() {
        std::vector<int> all(pos_.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        int t = 0;
        while (t < H_ && !error_) {
            int end = subtree(tree_.root, all, t, {}, true);
            if (end <= t) break;  // nothing to traverse
            t = end;
        }
    }

    Plan plan() {
        Plan p;
        p.env_hash = env_.hash();
        for (std::size_t i = 0; i < pos_.size(); ++i) set(static_cast<int>(i), H_, pos_[i].back());
        for (int t = 0; t <= H_; ++t) {
            Configuration c(pos_.size());
            for (std::size_t i = 0; i < pos_.size(); ++i) c[i] = pos_[i][t];
            p.steps.push_back(std::move(c));
        }
        return p;
    }

    bool error_ = false;

private:
    void set(int robot, int t, Vertex v) {
        if (t > H_) return;
        auto& p = pos_[robot];
        while (static_cast<int>(p.size()) < t) p.push_back(p.back());
        if (static_cast<int>(p.size()) == t)
            p.push_back(v);
        else
            p[t] = v;
    }

    Vertex pick(const std::vector<Vertex>& branches) const {
        Vertex best = branches.front();  // branches ascend, so ties keep the lowest id
        for (Vertex c : branches)
            if (st_.select == SelectRule::far ? far_[c] > far_[best] : near_[c] < near_[best]) best = c;
        return best;
    }

    // group at u from time t; returns the time all of it is back at u
    int subtree(Vertex u, std::vector<int> robots, int t, std::vector<Vertex> chain, bool free) {
        std::vector<Vertex> todo = tree_.children[u];
        bool late = st_.split == SplitRule::late;
        while (!todo.empty() && t < H_ && !error_) {
            int k = static_cast<int>(robots.size());
            if (todo.size() >= 2) {
                bool shared = std::any_of(todo.begin(), todo.end(), [&](Vertex c) { return !linked(c, chain); });
                std::vector<Vertex> sub_chain = chain;
                int avail = k;
                if (shared) {
                    sub_chain.push_back(u);
                    --avail;
                }
                std::vector<int> need(todo.size());
                long sum = 0;
                for (std::size_t j = 0; j < todo.size(); ++j) {
                    need[j] = requirement(u, todo[j], sub_chain, late);
                    sum += need[j];
                }
                if (sum <= avail) {
                    t = split(u, todo, need, robots, t, sub_chain, shared, free);
                    todo.clear();
                    break;
                }
            }
            Vertex c = pick(todo);
            todo.erase(std::find(todo.begin(), todo.end(), c));
            t = branch(u, c, robots, t, chain, false);
        }
        return t;
    }

    int split(Vertex u, const std::vector<Vertex>& todo, std::vector<int> need, std::vector<int> robots, int t,
              const std::vector<Vertex>& sub_chain, bool shared, bool free) {
        if (shared) robots.pop_back();  // stays at u as the shared relay
        int surplus = static_cast<int>(robots.size());
        for (int x : need) surplus -= x;
        std::size_t big = 0;
        for (std::size_t j = 1; j < todo.size(); ++j)
            if (nodes_[todo[j]] > nodes_[todo[big]]) big = j;
        need[big] += surplus;  // spare robots tag along with the largest branch
        int end = t, at = 0;
        for (std::size_t j = 0; j < todo.size(); ++j) {
            std::vector<int> group(robots.begin() + at, robots.begin() + at + need[j]);
            at += need[j];
            if (free) {
                int tt = t;
                while (tt < H_ && !error_) {
                    int e = branch(u, todo[j], group, tt, sub_chain, true);
                    if (e <= tt) break;
                    tt = e;
                }
                end = std::max(end, H_);
            } else {
                end = std::max(end, branch(u, todo[j], group, t, sub_chain, false));
            }
        }
        return end;
    }

    // group walks u -> c, covers c's subtree, comes back to u
    int branch(Vertex u, Vertex c, std::vector<int> robots, int t, std::vector<Vertex> chain, bool free) {
        if (t >= H_) return t;
        std::vector<int> movers = robots;
        if (!linked(c, chain)) {
            if (movers.size() < 2) {
                error_ = true;
                return t;
            }
            movers.pop_back();  // relay parks at u until the group returns
            chain.push_back(u);
            if (!linked(c, chain)) {
                error_ = true;
                return t;
            }
        }
        for (int i : movers) set(i, t + 1, c);
        int back = subtree(c, movers, t + 1, chain, free);
        if (back >= H_) return H_;
        for (int i : movers) set(i, back + 1, u);
        return back + 1;
    }

    const GraphEnv& env_;
    const TraversalTree& tree_;
    SplitStrategy st_;
    int H_;
    std::vector<std::vector<Vertex>> pos_;
    std::vector<int> far_, near_, nodes_;
};

}  // namespace

int tree_robot_demand(const GraphEnv& env, const TraversalTree& tree) {
    Traversal tr(env, tree, 1, {}, 0);
    return tr.robot_demand();
}

PlanResult plan_tt(const GraphEnv& env, const TraversalTree& tree, int r, const SplitStrategy& strategy,
                   const RunLimits& lim) {
    PlanResult res;
    res.plan.env_hash = env.hash();
    int need = tree_robot_demand(env, tree);
    if (need >= kUnreachable) {
        res.reason = "a tree leaf cannot be linked to the base in G_C";
        return res;
    }
    if (r < need) {
        res.reason = "deepest tree path needs " + std::to_string(need) + " robots, have " + std::to_string(r);
        return res;
    }
    Traversal tr(env, tree, r, strategy, lim.horizon);
    tr.run();
    if (tr.error_) {
        res.reason = "relay chain broke on a tree edge outside G_C";
        return res;
    }
    res.feasible = true;
    res.plan = tr.plan();
    if (lim.stop_on_coverage) {
        IdlenessTrace trace(env, false);
        for (std::size_t t = 0; t < res.plan.steps.size(); ++t) {
            trace.record_step(res.plan.steps[t], static_cast<int>(t));
            if (trace.all_visited()) {
                res.plan.steps.resize(t + 1);
                break;
            }
        }
    }
    return res;
}

TtBest plan_tt_best(const GraphEnv& env, const TraversalTree& tree, int r, const RunLimits& lim) {
    TtBest best;
    bool have = false;
    int k = 0;
    for (SplitRule sp : {SplitRule::early, SplitRule::late})
        for (SelectRule se : {SelectRule::far, SelectRule::near}) {
            SplitStrategy s{sp, se};
            PlanResult pr = plan_tt(env, tree, r, s, lim);
            int ct = lim.horizon;
            if (pr.feasible) {
                IdlenessTrace trace(env, false);
                for (std::size_t t = 0; t < pr.plan.steps.size(); ++t)
                    trace.record_step(pr.plan.steps[t], static_cast<int>(t));
                ct = coverage_time(trace, lim.horizon);
            }
            best.per_strategy_ct[k++] = ct;
            if (!have || (pr.feasible && (!best.result.feasible || ct < best.ct))) {
                best.strategy = s;
                best.ct = ct;
                best.result = std::move(pr);
                have = true;
            }
        }
    return best;
}

}  // namespace cps
