#include "cps/cmpstt.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <set>
#include <queue>
#include <functional>

#include "cps/metrics.hpp"
#include "cps/optimizer.hpp"
#include "cps/reachability.hpp"
#include "detail.hpp"

namespace cps {

void PartitionTree::add(const std::string& nm, int par, int a, int b, int delta, bool sensing) {
    int id = size();
    parent.push_back(par);
    children.emplace_back();
    A.push_back(a);
    B.push_back(b);
    Delta.push_back(delta);
    has_sensing.push_back(sensing ? 1 : 0);
    name.push_back(nm);
    if (par >= 0) children[par].push_back(id);
    else root = id;
}

std::string split_plan_string(const PartitionTree& tree, const SplitPlan& plan) {
    std::string s;
    for (const auto& [p, tuples] : plan.at) {
        if (!s.empty()) s += "; ";
        std::string br = "(", ct = "(";
        for (const auto& tu : tuples) {
            br += "(";
            ct += "(";
            for (std::size_t i = 0; i < tu.size(); ++i) {
                if (i) br += ",", ct += ",";
                br += tree.name[tu[i].branch];
                ct += std::to_string(tu[i].robots);
            }
            br += ")";
            ct += ")";
        }
        s += tree.name[p] + ": " + br + ") " + ct + ")";
    }
    return s;
}

std::vector<int> subtree_need(const PartitionTree& tree) {
    int n = tree.size();
    std::vector<int> need(n, 0);
    std::vector<int> order;
    std::vector<int> st{tree.root};
    while (!st.empty()) {
        int p = st.back();
        st.pop_back();
        order.push_back(p);
        for (int q : tree.children[p]) st.push_back(q);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int p = *it;
        need[p] = tree.has_sensing[p] ? std::max(tree.A[p], 1) : 0;
        for (int q : tree.children[p]) need[p] = std::max(need[p], tree.B[q] + need[q]);
    }
    return need;
}

namespace {

std::vector<int> branches_of(const PartitionTree& t, int p) {
    std::vector<int> br;
    if (t.has_sensing[p]) br.push_back(p);
    for (int q : t.children[p]) br.push_back(q);
    return br;
}

bool covers_all(const PartitionTree& t, int p, const SplitTuple& tu) {
    for (int b : branches_of(t, p))
        if (std::none_of(tu.begin(), tu.end(), [&](const SplitEntry& e) { return e.branch == b; })) return false;
    return true;
}

struct Evaluator {
    const PartitionTree& T;
    const SplitPlan& P;
    std::string err;
    std::vector<int> wi;

    bool fail(const std::string& m) {
        if (err.empty()) err = m;
        return false;
    }

    bool tuples_at(int p, int c, std::vector<SplitTuple>& out) {
        auto it = P.at.find(p);
        if (it != P.at.end()) {
            out = it->second;
        } else if (T.children[p].empty()) {
            out = {{{p, c}}};
        } else {
            return fail("no splitting given at " + T.name[p]);
        }
        auto br = branches_of(T, p);
        std::size_t nb = std::max<std::size_t>(br.size(), 1);
        std::map<int, std::size_t> occ;
        for (const auto& tu : out) {
            if (tu.empty()) return fail("empty tuple at " + T.name[p]);
            long sum = 0;
            for (const auto& e : tu) {
                bool child = std::find(T.children[p].begin(), T.children[p].end(), e.branch) != T.children[p].end();
                if (e.branch != p && !child) return fail(T.name[e.branch] + " is not a branch at " + T.name[p]);
                if (e.branch == p && e.robots < std::max(T.A[p], T.has_sensing[p] ? 1 : 0))
                    return fail("assignment below A(" + T.name[p] + ")");
                if (child && e.robots < T.A[e.branch] + T.B[e.branch])
                    return fail("assignment below A(" + T.name[e.branch] + ") plus relays");
                sum += e.robots;
                if (++occ[e.branch] > nb) return fail("branch " + T.name[e.branch] + " repeats too often");
            }
            if (sum > c) return fail("tuple at " + T.name[p] + " needs " + std::to_string(sum) + " robots, has " +
                                     std::to_string(c));
        }
        for (int b : br)
            if (!occ.count(b)) return fail("branch " + T.name[b] + " never visited");
        return true;
    }

    bool gamma(int p, int k, long& out) {
        if (!T.has_sensing[p] && !T.gamma) {
            out = 0;
            return true;
        }
        int g = T.gamma ? T.gamma(p, k) : 0;
        if (g < 0) return fail("cover time undefined for " + T.name[p] + " with " + std::to_string(k) + " robots");
        out = g;
        return true;
    }

    // one cycle of the group at p; events are (partition, cover start)
    bool cycle(int p, int c, long& L, std::vector<std::pair<int, long>>& ev) {
        std::vector<SplitTuple> tuples;
        if (!tuples_at(p, c, tuples)) return false;
        long t = 0;
        for (const auto& tu : tuples) {
            long dur = 0;
            for (const auto& e : tu) {
                if (e.branch == p) {
                    long g;
                    if (!gamma(p, e.robots, g)) return false;
                    ev.emplace_back(p, t);
                    dur = std::max(dur, g);
                } else {
                    int q = e.branch;
                    long Lq = 0;
                    std::vector<std::pair<int, long>> sub;
                    if (!cycle(q, e.robots - T.B[q], Lq, sub)) return false;
                    for (auto [x, s] : sub) ev.emplace_back(x, t + T.Delta[q] + s);
                    dur = std::max(dur, 2L * T.Delta[q] + Lq);
                }
            }
            t += dur;
        }
        L = t;
        return true;
    }

    bool run_free(int p, int c) {
        std::vector<SplitTuple> tuples;
        if (!tuples_at(p, c, tuples)) return false;
        if (tuples.size() == 1 && covers_all(T, p, tuples[0])) {
            // nobody has to come back: every branch loops on its own
            for (const auto& e : tuples[0]) {
                if (e.branch == p) {
                    long g;
                    if (!gamma(p, e.robots, g)) return false;
                    if (T.has_sensing[p]) wi[p] = std::max<long>(wi[p], g);
                } else if (!run_free(e.branch, e.robots - T.B[e.branch])) {
                    return false;
                }
            }
            return true;
        }
        long L = 0;
        std::vector<std::pair<int, long>> ev;
        if (!cycle(p, c, L, ev)) return false;
        std::map<int, std::vector<long>> times;
        for (auto [x, s] : ev) times[x].push_back(s);
        for (auto& [x, ts] : times) {
            if (!T.has_sensing[x]) continue;
            std::sort(ts.begin(), ts.end());
            long gap = ts.front() + L - ts.back();
            for (std::size_t i = 1; i < ts.size(); ++i) gap = std::max(gap, ts[i] - ts[i - 1]);
            wi[x] = std::max<long>(wi[x], gap);
        }
        return true;
    }
};

}  // namespace

SplitEval evaluate_split_plan(const PartitionTree& tree, const SplitPlan& plan, int r) {
    SplitEval out;
    Evaluator ev{tree, plan, {}, std::vector<int>(tree.size(), -1)};
    for (int p = 0; p < tree.size(); ++p)
        if (tree.has_sensing[p]) ev.wi[p] = 0;
    if (!ev.run_free(tree.root, r)) {
        out.error = ev.err;
        return out;
    }
    out.ok = true;
    out.per_partition = ev.wi;
    for (int p = 0; p < tree.size(); ++p)
        if (tree.has_sensing[p]) out.wi = std::max(out.wi, ev.wi[p]);
    return out;
}

namespace {

int far_depth(const PartitionTree& t, int p) {
    int d = 0;
    for (int q : t.children[p]) d = std::max(d, t.Delta[q] + far_depth(t, q));
    return d;
}

void greedy_at(const PartitionTree& t, const std::vector<int>& need, int p, int c, SplitPlan& plan) {
    auto br = branches_of(t, p);
    if (t.children[p].empty()) return;  // leaves take everyone by default
    auto min_of = [&](int b) { return b == p ? std::max(t.A[p], 1) : t.B[b] + need[b]; };
    std::stable_sort(br.begin(), br.end(), [&](int a, int b) {
        int da = a == p ? 0 : t.Delta[a] + far_depth(t, a), db = b == p ? 0 : t.Delta[b] + far_depth(t, b);
        return da > db;
    });
    std::vector<SplitTuple> tuples;
    SplitTuple cur;
    int used = 0;
    for (int b : br) {
        if (!cur.empty() && used + min_of(b) > c) {
            tuples.push_back(cur);
            cur.clear();
            used = 0;
        }
        cur.push_back({b, min_of(b)});
        used += min_of(b);
    }
    if (!cur.empty()) tuples.push_back(cur);
    for (auto& tu : tuples) {
        int sum = 0;
        for (auto& e : tu) sum += e.robots;
        int extra = c - sum, to = 0;
        for (std::size_t i = 0; i < tu.size(); ++i)
            if (tu[i].branch == p) to = static_cast<int>(i);
        tu[to].robots += std::max(0, extra);
    }
    plan.at[p] = tuples;
    for (int q : t.children[p]) {
        int in = std::numeric_limits<int>::max();
        for (const auto& tu : tuples)
            for (const auto& e : tu)
                if (e.branch == q) in = std::min(in, e.robots - t.B[q]);
        greedy_at(t, need, q, in, plan);
    }
}

struct Enumerator {
    const PartitionTree& T;
    std::vector<int> need;
    long cap;
    long evaluated = 0;
    int r;
    std::vector<int> order;
    std::vector<int> incoming;
    SplitPlan cur, best;
    SplitEval best_eval;
    bool have = false;
    bool truncated = false;  // a candidate list hit kMaxCandidates
    static constexpr std::size_t kMaxCandidates = 20000;

    void consider(const SplitPlan& p) {
        ++evaluated;
        SplitEval e = evaluate_split_plan(T, p, r);
        if (!e.ok) return;
        if (!have || e.wi < best_eval.wi) {
            have = true;
            best = p;
            best_eval = e;
        }
    }

    // surplus spread over the entries of one tuple
    void spreads(int m, int s, std::vector<std::vector<int>>& out) {
        long full = 1;  // C(s+m-1, m-1)
        for (int i = 1; i < m; ++i) full = full * (s + i) / i;
        if (full <= 64) {
            std::vector<int> v(m, 0);
            std::function<void(int, int)> go = [&](int i, int left) {
                if (i == m - 1) {
                    v[i] = left;
                    out.push_back(v);
                    return;
                }
                for (int x = left; x >= 0; --x) {
                    v[i] = x;
                    go(i + 1, left - x);
                }
            };
            go(0, s);
            return;
        }
        for (int j = 0; j < m; ++j) {
            std::vector<int> v(m, 0);
            v[j] = s;
            out.push_back(v);
        }
        std::vector<int> even(m, s / m);
        for (int j = 0; j < s % m; ++j) ++even[j];
        out.push_back(even);
    }

    std::vector<std::vector<SplitTuple>> candidates(int p, int c) {
        auto br = branches_of(T, p);
        std::size_t nb = std::max<std::size_t>(br.size(), 1);
        auto min_of = [&](int b) { return b == p ? std::max(T.A[p], 1) : T.B[b] + need[b]; };
        std::vector<std::vector<SplitTuple>> out;
        std::vector<std::vector<int>> seqs;  // sequences of subset masks
        std::vector<int> seq;
        std::vector<std::size_t> occ(br.size(), 0);
        int full = (1 << br.size()) - 1;
        std::function<void()> grow = [&] {
            if (seqs.size() >= kMaxCandidates) {
                truncated = true;
                return;
            }
            int covered = 0;
            for (int m : seq) covered |= m;
            if (covered == full && !seq.empty()) seqs.push_back(seq);
            if (seq.size() >= nb) return;
            for (int m = full; m >= 1; --m) {  // wide splits first, they survive truncation
                int sum = 0;
                bool ok = true;
                for (std::size_t i = 0; i < br.size(); ++i)
                    if (m >> i & 1) {
                        sum += min_of(br[i]);
                        if (occ[i] + 1 > nb) ok = false;
                    }
                if (!ok || sum > c) continue;
                for (std::size_t i = 0; i < br.size(); ++i)
                    if (m >> i & 1) ++occ[i];
                seq.push_back(m);
                grow();
                seq.pop_back();
                for (std::size_t i = 0; i < br.size(); ++i)
                    if (m >> i & 1) --occ[i];
            }
        };
        grow();
        for (const auto& sq : seqs) {
            if (out.size() >= kMaxCandidates) break;
            // per tuple: list of count options
            std::vector<std::vector<SplitTuple>> per;
            for (int m : sq) {
                std::vector<int> members;
                int sum = 0;
                for (std::size_t i = 0; i < br.size(); ++i)
                    if (m >> i & 1) members.push_back(br[i]), sum += min_of(br[i]);
                std::vector<std::vector<int>> sp;
                spreads(static_cast<int>(members.size()), c - sum, sp);
                std::vector<SplitTuple> opts;
                for (const auto& v : sp) {
                    SplitTuple tu;
                    for (std::size_t i = 0; i < members.size(); ++i)
                        tu.push_back({members[i], min_of(members[i]) + v[i]});
                    opts.push_back(tu);
                }
                per.push_back(opts);
            }
            std::vector<SplitTuple> pick(per.size());
            std::function<void(std::size_t)> prod = [&](std::size_t i) {
                if (out.size() >= kMaxCandidates) {
                    truncated = true;
                    return;
                }
                if (i == per.size()) {
                    out.push_back(pick);
                    return;
                }
                for (const auto& o : per[i]) {
                    pick[i] = o;
                    prod(i + 1);
                }
            };
            prod(0);
        }
        return out;
    }

    void rec(std::size_t idx) {
        if (evaluated >= cap) return;
        if (idx == order.size()) {
            consider(cur);
            return;
        }
        int p = order[idx];
        if (T.children[p].empty()) {
            rec(idx + 1);
            return;
        }
        for (const auto& cand : candidates(p, incoming[p])) {
            if (evaluated >= cap) return;
            cur.at[p] = cand;
            for (int q : T.children[p]) {
                int in = std::numeric_limits<int>::max();
                for (const auto& tu : cand)
                    for (const auto& e : tu)
                        if (e.branch == q) in = std::min(in, e.robots - T.B[q]);
                incoming[q] = in;
            }
            rec(idx + 1);
        }
        cur.at.erase(p);
    }
};

}  // namespace

SplitPlan greedy_split_plan(const PartitionTree& tree, int r) {
    SplitPlan plan;
    greedy_at(tree, subtree_need(tree), tree.root, r, plan);
    return plan;
}

SplitSearch search_split_plan(const PartitionTree& tree, int r, long max_evals) {
    SplitSearch out;
    auto need = subtree_need(tree);
    if (need[tree.root] > r) {
        int p = tree.root;
        for (bool moved = true; moved;) {
            moved = false;
            int self = tree.has_sensing[p] ? std::max(tree.A[p], 1) : 0;
            if (self >= need[p]) break;
            for (int q : tree.children[p])
                if (tree.B[q] + need[q] == need[p]) {
                    p = q;
                    moved = true;
                    break;
                }
        }
        out.binding_partition = p;
        out.reason = "partition " + tree.name[p] + " needs " + std::to_string(need[tree.root]) +
                     " robots counting the relay chain, have " + std::to_string(r);
        return out;
    }
    SplitPlan greedy = greedy_split_plan(tree, r);
    SplitEval ge = evaluate_split_plan(tree, greedy, r);
    out.plan = greedy;
    out.eval = ge;
    out.evaluated = 1;
    if (tree.size() <= 8) {
        Enumerator en{tree, need, max_evals, 0, r, {}, std::vector<int>(tree.size(), 0), {}, {}, {}, false};
        if (ge.ok) {
            en.best = greedy;
            en.best_eval = ge;
            en.have = true;
        }
        std::queue<int> q;
        q.push(tree.root);
        while (!q.empty()) {
            int p = q.front();
            q.pop();
            en.order.push_back(p);
            for (int c : tree.children[p]) q.push(c);
        }
        en.incoming[tree.root] = r;
        en.rec(0);
        out.exhaustive = true;
        out.complete = en.evaluated < max_evals && !en.truncated;
        out.evaluated += en.evaluated;
        if (en.have) {
            out.plan = en.best;
            out.eval = en.best_eval;
        }
    }
    out.feasible = out.eval.ok;
    if (!out.feasible) out.reason = out.eval.error;
    return out;
}

// ---- grid binding ----

Partitioning regular_split(const GridGeom& g, int m, int n) {
    Partitioning out;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i) {
            Rect r;
            r.x0 = 1 + i * g.width / m;
            r.x1 = (i + 1) * g.width / m;
            r.y0 = 1 + j * g.height / n;
            r.y1 = (j + 1) * g.height / n;
            out.rects.push_back(r);
        }
    return out;
}

struct CoverCache {
    std::vector<std::unique_ptr<GraphEnv>> sub;
    std::vector<std::vector<Vertex>> to_global;
    InnerPlanner inner = InnerPlanner::sh;
    WeightParams params;
    std::map<int, WeightParams> by_k;
    std::mutex m;
    std::map<std::pair<int, int>, std::shared_ptr<const Plan>> runs;  // empty plan = cannot cover

    WeightParams params_for(int k) const {
        auto it = by_k.find(k);
        return it == by_k.end() ? params : it->second;
    }

    Plan inner_plan(int p, int k, int horizon, bool stop) {
        const GraphEnv& e = *sub[p];
        WeightParams w = params_for(k);
        switch (inner) {
            case InnerPlanner::sh:
                return plan_sh(e, k, RunLimits{horizon, stop}, w);
            case InnerPlanner::shc: {
                ShcConfig c;
                c.horizon = horizon;
                c.stop_on_coverage = stop;
                return plan_shc(e, k, c, w);
            }
            case InnerPlanner::fh: {
                auto tour = build_fh_tour(e);
                auto pr = plan_fh(e, k, RunLimits{horizon, stop}, tour.tour);
                if (!pr.feasible) return Plan{};
                return pr.plan;
            }
        }
        return Plan{};
    }

    std::shared_ptr<const Plan> cover_and_return(int p, int k) {
        std::lock_guard<std::mutex> lock(m);
        auto key = std::make_pair(p, k);
        auto it = runs.find(key);
        if (it != runs.end()) return it->second;
        const GraphEnv& e = *sub[p];
        int cap = 40 * e.size() + 100;
        Plan pl = inner_plan(p, k, cap, true);
        bool ok = !pl.steps.empty();
        if (ok) {
            IdlenessTrace tr = trace_plan(e, pl, false);
            ok = tr.all_visited();
        }
        if (ok) {
            Configuration c = pl.steps.back();
            for (int s = 0; s < 4 * e.size() + 16; ++s) {
                if (std::all_of(c.begin(), c.end(), [&](Vertex v) { return v == e.base(); })) break;
                bool moved = false;
                for (int i = 0; i < k; ++i) moved |= detail::greedy_step(e, c, i, e.base());
                if (!moved) break;
                pl.steps.push_back(c);
            }
            ok = std::all_of(c.begin(), c.end(), [&](Vertex v) { return v == e.base(); });
        }
        auto res = std::make_shared<const Plan>(ok ? std::move(pl) : Plan{});
        runs[key] = res;
        return res;
    }
};

namespace {

std::vector<Vertex> movement_path(const GraphEnv& env, Vertex s, Vertex d) {
    const auto& row = env.bfs_row(GraphSel::movement, d);
    if (row[s] < 0) return {};
    std::vector<Vertex> path{s};
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

bool linked(const GraphEnv& env, Vertex a, Vertex b) { return a == b || env.adjacent(GraphSel::connectivity, a, b); }

// relays the clump drops walking the path; -1 if an edge leaves G_C
int greedy_relays(const GraphEnv& env, const std::vector<Vertex>& path) {
    int count = 0;
    Vertex last = path.front();
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (!linked(env, path[i + 1], last)) {
            last = path[i];
            ++count;
            if (!linked(env, path[i + 1], last)) return -1;
        }
    }
    return count;
}

}  // namespace

GridPartitionTree build_partition_tree(const GraphEnv& env, const CmpsttConfig& cfg) {
    GridPartitionTree out;
    const auto& g = env.grid();
    if (!g) {
        out.reason = "partitioning needs a grid environment";
        return out;
    }
    const auto& rects = cfg.parts.rects;
    int np = static_cast<int>(rects.size());
    if (np == 0) {
        out.reason = "no partitions given";
        return out;
    }
    std::vector<int> owner(env.size(), -1);
    for (int p = 0; p < np; ++p) {
        const Rect& r = rects[p];
        if (r.x0 < 1 || r.y0 < 1 || r.x1 > g->width || r.y1 > g->height || r.x0 > r.x1 || r.y0 > r.y1) {
            out.reason = "partition " + std::to_string(p) + " lies outside the grid";
            return out;
        }
        for (int y = r.y0; y <= r.y1; ++y)
            for (int x = r.x0; x <= r.x1; ++x) {
                Vertex v = g->id(x, y);
                if (owner[v] >= 0) {
                    out.reason = "partitions " + std::to_string(owner[v]) + " and " + std::to_string(p) + " overlap";
                    return out;
                }
                owner[v] = p;
            }
    }
    for (Vertex s : env.sensing())
        if (owner[s] < 0) {
            out.reason = "sensing cell " + env.name(s) + " is in no partition";
            return out;
        }
    int base_part = owner[env.base()];
    if (base_part < 0) {
        out.reason = "base station is in no partition";
        return out;
    }

    auto cache = std::make_shared<CoverCache>();
    cache->inner = cfg.inner;
    cache->params = cfg.params;
    cache->by_k = cfg.params_by_k;
    std::vector<Vertex> release(np);
    std::vector<int> A(np, 0);
    std::vector<char> sensing(np, 0);
    for (int p = 0; p < np; ++p) {
        const Rect& r = rects[p];
        Cell rel = r.has_release ? r.release : (p == base_part ? g->cell(env.base()) : Cell{r.x0, r.y0});
        release[p] = g->id(rel);
        GridSpec gs;
        gs.width = r.x1 - r.x0 + 1;
        gs.height = r.y1 - r.y0 + 1;
        gs.base_cell = {rel.x - r.x0 + 1, rel.y - r.y0 + 1};
        gs.r_com = g->r_com;
        std::vector<Vertex> map;
        for (int y = r.y0; y <= r.y1; ++y)
            for (int x = r.x0; x <= r.x1; ++x) {
                Vertex v = g->id(x, y);
                map.push_back(v);
                if (env.is_sensing(v)) gs.sensing_cells.push_back({x - r.x0 + 1, y - r.y0 + 1});
            }
        sensing[p] = !gs.sensing_cells.empty();
        cache->sub.push_back(std::make_unique<GraphEnv>(build_grid_env(gs)));
        cache->to_global.push_back(std::move(map));
        const GraphEnv& se = *cache->sub.back();
        for (Vertex s : se.sensing()) {
            Hops h = min_relays_between(se, se.base(), s);
            if (!h || !se.dist(GraphSel::movement, se.base(), s)) {
                out.reason = "sensing cell " + env.name(cache->to_global[p][s]) + " unreachable inside its partition";
                return out;
            }
            A[p] = std::max(A[p], 1 + *h);
        }
    }

    // shortest-travel tree over touching partitions (shared side or corner), ties to the lower index
    auto adjacent = [&](const Rect& a, const Rect& b) {
        return a.x0 <= b.x1 + 1 && b.x0 <= a.x1 + 1 && a.y0 <= b.y1 + 1 && b.y0 <= a.y1 + 1;
    };
    const long inf = std::numeric_limits<long>::max();
    std::vector<long> d(np, inf);
    std::vector<int> par(np, -1);
    std::vector<char> done(np, 0);
    d[base_part] = 0;
    for (int it = 0; it < np; ++it) {
        int u = -1;
        for (int p = 0; p < np; ++p)
            if (!done[p] && d[p] < inf && (u < 0 || d[p] < d[u])) u = p;
        if (u < 0) break;
        done[u] = 1;
        for (int v = 0; v < np; ++v) {
            if (done[v] || !adjacent(rects[u], rects[v])) continue;
            Hops h = env.dist(GraphSel::movement, release[u], release[v]);
            if (!h) continue;
            long nd = d[u] + *h;
            if (nd < d[v] || (nd == d[v] && u < par[v])) {
                d[v] = nd;
                par[v] = u;
            }
        }
    }
    for (int p = 0; p < np; ++p)
        if (d[p] == inf) {
            out.reason = "partition " + std::to_string(p) + " cannot be reached from the base partition";
            return out;
        }

    // index tree nodes in BFS order from the base partition so that ids match the rect order where possible
    PartitionTree& t = out.tree;
    std::vector<int> node_of(np, -1), part_of;
    std::vector<int> q{base_part};
    for (std::size_t h = 0; h < q.size(); ++h)
        for (int v = 0; v < np; ++v)
            if (par[v] == q[h]) q.push_back(v);
    for (int p : q) {
        node_of[p] = static_cast<int>(part_of.size());
        part_of.push_back(p);
    }
    for (int p : q) {
        int pp = par[p];
        int b = 0, delta = 0;
        std::vector<Vertex> path;
        if (pp >= 0) {
            path = movement_path(env, release[pp], release[p]);
            delta = static_cast<int>(path.size()) - 1;
            int relays = greedy_relays(env, path);
            if (relays < 0) {
                out.reason = "relay chain to partition " + std::to_string(p) + " leaves G_C";
                return out;
            }
            b = relays + 1;  // plus the release robot
        }
        const Rect& r = rects[p];
        t.add("P" + std::to_string(p) + "[" + std::to_string(r.x0) + "," + std::to_string(r.y0) + "]",
              pp < 0 ? -1 : node_of[pp], A[p], b, delta, sensing[p]);
        t.release.push_back(release[p]);
        t.cells.push_back(cache->to_global[p]);
        t.path_from_parent.push_back(path);
    }
    // reorder cache entries to tree order
    {
        std::vector<std::unique_ptr<GraphEnv>> sub(np);
        std::vector<std::vector<Vertex>> tg(np);
        for (int p = 0; p < np; ++p) {
            sub[node_of[p]] = std::move(cache->sub[p]);
            tg[node_of[p]] = std::move(cache->to_global[p]);
        }
        cache->sub = std::move(sub);
        cache->to_global = std::move(tg);
    }
    std::weak_ptr<CoverCache> weak = cache;
    t.gamma = [weak](int p, int k) -> int {
        auto c = weak.lock();
        if (!c || k < 1) return -1;
        auto pl = c->cover_and_return(p, k);
        if (pl->steps.empty()) return -1;
        return static_cast<int>(pl->steps.size()) - 1;
    };
    out.cover = cache;
    out.ok = true;
    return out;
}

namespace {

class Executor {
public:
    Executor(const GraphEnv& env, const PartitionTree& t, const SplitPlan& plan, CoverCache& cache, int r, int H)
        : env_(env), t_(t), plan_(plan), cache_(cache), H_(H), pos_(r) {
        for (auto& p : pos_) p.push_back(env.base());
    }

    void run() {
        std::vector<int> all(pos_.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        part(t_.root, all, 0, true);
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

    std::string error;
    std::set<std::pair<int, int>> used;  // (partition, robots) handed to the inner planner

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

    void play(int p, const std::vector<int>& grp, const Plan& sub, int t) {
        const auto& map = cache_.to_global[p];
        for (std::size_t s = 1; s < sub.steps.size() && t + static_cast<int>(s) <= H_; ++s)
            for (std::size_t j = 0; j < grp.size(); ++j) set(grp[j], t + static_cast<int>(s), map[sub.steps[s][j]]);
    }

    int cover(int p, const std::vector<int>& grp, int t) {
        if (!t_.has_sensing[p]) return t;
        used.emplace(p, static_cast<int>(grp.size()));
        auto sub = cache_.cover_and_return(p, static_cast<int>(grp.size()));
        if (sub->steps.empty()) {
            error = "partition " + t_.name[p] + " cannot be covered by " + std::to_string(grp.size()) + " robots";
            return H_;
        }
        play(p, grp, *sub, t);
        return t + static_cast<int>(sub->steps.size()) - 1;
    }

    void cover_forever(int p, const std::vector<int>& grp, int t) {
        if (!t_.has_sensing[p] || t >= H_) return;
        used.emplace(p, static_cast<int>(grp.size()));
        Plan sub = cache_.inner_plan(p, static_cast<int>(grp.size()), H_ - t, false);
        if (sub.steps.empty()) {
            error = "inner planner failed on " + t_.name[p];
            return;
        }
        play(p, grp, sub, t);
    }

    int excursion(int q, std::vector<int> grp, int t, bool free) {
        const auto& path = t_.path_from_parent[q];
        Vertex last = path.front();
        std::vector<int> movers = grp;
        std::vector<std::pair<int, int>> parked;  // (path index, robot)
        int len = static_cast<int>(path.size()) - 1;
        for (int i = 0; i < len; ++i) {
            if (!linked(env_, path[i + 1], last)) {
                parked.emplace_back(i, movers.back());  // relay stays at path[i]
                movers.pop_back();
                last = path[i];
            }
            for (int k : movers) set(k, t + i + 1, path[i + 1]);
        }
        int release = movers.back();
        movers.pop_back();
        int e = part(q, movers, t + len, free);
        if (free || e >= H_) return H_;
        // walk back; parked robots join as the group passes them
        movers.push_back(release);
        for (int i = 0; i < len; ++i) {
            int at = len - i - 1;
            for (int k : movers) set(k, e + i + 1, path[at]);
            for (auto [idx, k] : parked)
                if (idx == at) movers.push_back(k);
        }
        return e + len;
    }

    int part(int p, std::vector<int> robots, int t, bool free) {
        std::vector<SplitTuple> tuples;
        auto it = plan_.at.find(p);
        if (it != plan_.at.end())
            tuples = it->second;
        else
            tuples = {{{p, static_cast<int>(robots.size())}}};
        auto take = [&](std::size_t& at, int k) {
            std::vector<int> g(robots.begin() + at, robots.begin() + at + k);
            at += k;
            return g;
        };
        if (free && tuples.size() == 1 && covers_all(t_, p, tuples[0])) {
            std::size_t at = 0;
            for (const auto& e : tuples[0]) {
                auto g = take(at, e.robots);
                if (e.branch == p)
                    cover_forever(p, g, t);
                else
                    excursion(e.branch, g, t, true);
            }
            return H_;
        }
        do {
            for (const auto& tu : tuples) {
                int end = t;
                std::size_t at = 0;
                for (const auto& e : tu) {
                    if (at + e.robots > robots.size()) {
                        error = "splitting at " + t_.name[p] + " asks for more robots than present";
                        return H_;
                    }
                    auto g = take(at, e.robots);
                    end = std::max(end, e.branch == p ? cover(p, g, t) : excursion(e.branch, g, t, false));
                }
                if (!error.empty()) return H_;
                if (end == t) end = t + 1;  // nothing to do still takes a step
                t = end;
                if (t >= H_) return H_;
            }
        } while (free && t < H_);
        return t;
    }

    const GraphEnv& env_;
    const PartitionTree& t_;
    const SplitPlan& plan_;
    CoverCache& cache_;
    int H_;
    std::vector<std::vector<Vertex>> pos_;
};

}  // namespace

namespace {

CmpsttResult run_cmpstt(const GraphEnv& env, int r, const CmpsttConfig& cfg, GridPartitionTree& gt) {
    CmpsttResult out;
    out.result.plan.env_hash = env.hash();
    gt = build_partition_tree(env, cfg);
    if (!gt.ok) {
        out.result.reason = gt.reason;
        return out;
    }
    out.partitions = gt.tree.size();
    out.search = search_split_plan(gt.tree, r, cfg.max_evals);
    if (!out.search.feasible) {
        out.result.reason = out.search.reason;
        return out;
    }
    Executor ex(env, gt.tree, out.search.plan, *gt.cover, r, cfg.horizon);
    ex.run();
    if (!ex.error.empty()) {
        out.result.reason = ex.error;
        return out;
    }
    out.result.feasible = true;
    out.result.plan = ex.plan();
    out.covered.assign(ex.used.begin(), ex.used.end());
    return out;
}

}  // namespace

CmpsttResult plan_cmpstt(const GraphEnv& env, int r, const CmpsttConfig& cfg) {
    GridPartitionTree gt;
    return run_cmpstt(env, r, cfg, gt);
}

PartitionWeights optimize_partition_weights(const GraphEnv& env, int r, const CmpsttConfig& cfg,
                                            const PatternSearchConfig& ps) {
    PartitionWeights out;
    if (cfg.inner == InnerPlanner::fh) {
        out.reason = "fh has no weights to tune";
        return out;
    }
    WeightedPlanner wp = cfg.inner == InnerPlanner::sh ? WeightedPlanner::sh : WeightedPlanner::shc;
    GridPartitionTree gt;
    CmpsttResult first = run_cmpstt(env, r, cfg, gt);
    if (!first.result.feasible) {
        out.reason = first.result.reason;
        return out;
    }
    // one run per robot count, on the first partition that count lands in
    for (auto [p, k] : first.covered) {
        if (out.by_k.count(k)) continue;
        WeightResult w = optimize_weights(*gt.cover->sub[p], wp, k, ps);
        out.by_k[k] = w.params;
        out.ct_by_k[k] = w.ct;
        out.seconds_by_k[k] = w.seconds;
        out.seconds += w.seconds;
    }
    out.ok = true;
    return out;
}

}  // namespace cps
