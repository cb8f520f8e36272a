#include "cps/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "cps/metrics.hpp"

namespace cps {

// ---- inputs ----

void CnfFormula::validate() const {
    if (num_vars < 1) throw ReductionError("formula needs at least one variable");
    if (clauses.empty()) throw ReductionError("formula needs at least one clause");
    for (std::size_t j = 0; j < clauses.size(); ++j)
        for (int l : clauses[j])
            if (l == 0 || std::abs(l) > num_vars)
                throw ReductionError("clause " + std::to_string(j + 1) + ": literal " + std::to_string(l) +
                                     " outside 1.." + std::to_string(num_vars));
}

bool CnfFormula::satisfied_by(const std::vector<bool>& a) const {
    if (static_cast<int>(a.size()) != num_vars) throw ReductionError("assignment has wrong length");
    for (const auto& c : clauses) {
        bool sat = false;
        for (int l : c) sat = sat || (a[std::abs(l) - 1] == (l > 0));
        if (!sat) return false;
    }
    return true;
}

CnfFormula parse_dimacs(std::istream& in) {
    CnfFormula f;
    int declared = -1, line_no = 0;
    std::vector<int> cur;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c" || tok[0] == '%') continue;
        auto fail = [&](const std::string& m) {
            throw ReductionError("line " + std::to_string(line_no) + ": " + m);
        };
        if (tok == "p") {
            std::string kind;
            if (!(ls >> kind >> f.num_vars >> declared) || kind != "cnf") fail("bad problem line");
            header = true;
            continue;
        }
        if (!header) fail("clause before the 'p cnf' line");
        ls.clear();
        ls.str(line);
        long v;
        while (ls >> v) {
            if (v == 0) {
                if (cur.size() != 3) fail("clause has " + std::to_string(cur.size()) + " literals, expected 3");
                f.clauses.push_back({cur[0], cur[1], cur[2]});
                cur.clear();
            } else {
                if (std::labs(v) > f.num_vars) fail("literal " + std::to_string(v) + " out of range");
                cur.push_back(static_cast<int>(v));
            }
        }
        if (!ls.eof()) fail("unexpected token");
    }
    if (!header) throw ReductionError("missing 'p cnf' line");
    if (!cur.empty()) throw ReductionError("last clause is not terminated by 0");
    if (declared >= 0 && declared != static_cast<int>(f.clauses.size()))
        throw ReductionError("header declares " + std::to_string(declared) + " clauses, found " +
                             std::to_string(f.clauses.size()));
    f.validate();
    return f;
}

std::optional<std::vector<bool>> brute_force_sat(const CnfFormula& f) {
    f.validate();
    if (f.num_vars > 24) throw ReductionError("too many variables for enumeration");
    std::vector<bool> a(f.num_vars);
    for (long m = 0; m < (1L << f.num_vars); ++m) {
        for (int i = 0; i < f.num_vars; ++i) a[i] = (m >> i) & 1;
        if (f.satisfied_by(a)) return a;
    }
    return std::nullopt;
}

void SetCoverInstance::validate() const {
    if (universe < 1) throw ReductionError("empty universe");
    if (family.empty()) throw ReductionError("empty family");
    if (k < 0) throw ReductionError("negative budget");
    for (std::size_t j = 0; j < family.size(); ++j)
        for (int e : family[j])
            if (e < 1 || e > universe)
                throw ReductionError("subset " + std::to_string(j + 1) + " has element " + std::to_string(e) +
                                     " outside 1.." + std::to_string(universe));
}

bool SetCoverInstance::covers(const std::vector<int>& chosen) const {
    std::vector<char> hit(universe + 1, 0);
    for (int j : chosen) {
        if (j < 1 || j > static_cast<int>(family.size())) throw ReductionError("no subset " + std::to_string(j));
        for (int e : family[j - 1]) hit[e] = 1;
    }
    return std::all_of(hit.begin() + 1, hit.end(), [](char c) { return c != 0; });
}

namespace {

struct Builder {
    std::vector<std::string> names;
    std::vector<Edge> em, ec;
    std::map<std::string, Vertex> ids;

    Vertex add(const std::string& nm) {
        ids[nm] = static_cast<Vertex>(names.size());
        names.push_back(nm);
        return ids[nm];
    }
    Vertex operator[](const std::string& nm) const { return ids.at(nm); }
    void m(const std::string& a, const std::string& b) { em.emplace_back(ids.at(a), ids.at(b)); }
    void c(const std::string& a, const std::string& b) { ec.emplace_back(ids.at(a), ids.at(b)); }
    GraphEnv build(const std::string& base, const std::vector<std::string>& sensing) {
        std::vector<Vertex> s;
        for (const auto& nm : sensing) s.push_back(ids.at(nm));
        return GraphEnv(static_cast<int>(names.size()), em, ec, ids.at(base), s, names);
    }
};

std::string idx(const std::string& p, int i) { return p + std::to_string(i); }
std::string lit(int l) { return (l > 0 ? "x" : "~x") + std::to_string(std::abs(l)); }

}  // namespace

// ---- 3SAT -> persistent surveillance ----

CmpsInstance gen_cmps_from_3sat(const CnfFormula& f) {
    f.validate();
    int a = f.num_vars, be = static_cast<int>(f.clauses.size());
    Builder g;
    g.add("b");
    g.add("v");
    for (int i = 1; i <= a; ++i) {
        g.add(idx("x", i));
        g.add(idx("~x", i));
        g.add(idx("x'", i));
        g.add(idx("x''", i));
    }
    for (int j = 1; j <= be; ++j) g.add(idx("c", j));

    for (int i = 1; i <= a; ++i) {
        g.m("b", idx("x''", i));
        g.m(idx("x''", i), idx("x'", i));
        g.m(idx("x'", i), idx("x", i));
        g.m(idx("x'", i), idx("~x", i));
    }
    g.m("b", "v");
    g.m("v", idx("c", be));
    for (int j = 2; j <= be; ++j) g.m(idx("c", j - 1), idx("c", j));

    g.c("b", idx("x''", 1));
    for (int i = 2; i <= a; ++i) g.c(idx("x''", i - 1), idx("x''", i));
    g.c("v", idx("x'", a));
    for (int i = 2; i <= a; ++i) g.c(idx("x'", i - 1), idx("x'", i));
    g.c("b", "x1");
    g.c("b", "~x1");
    for (int i = 2; i <= a; ++i)
        for (const char* p : {"x", "~x"})
            for (const char* q : {"x", "~x"}) g.c(idx(p, i - 1), idx(q, i));
    for (int j = 1; j <= be; ++j)
        for (int l : f.clauses[j - 1]) g.c(idx("c", j), lit(l));
    // without this link the start configuration is cut off from b
    g.c("b", "v");

    CmpsInstance inst{g.build("b", {"v", "c1"}), {}, a + 1, 2 * be, a, be};
    inst.p0.push_back(g["v"]);
    for (int i = 1; i <= a; ++i) inst.p0.push_back(g[idx("x'", i)]);
    return inst;
}

Plan encode_cmps_witness(const CmpsInstance& inst, const CnfFormula& f, const std::vector<bool>& assignment) {
    f.validate();
    if (f.num_vars != inst.alpha || static_cast<int>(f.clauses.size()) != inst.beta)
        throw ReductionError("formula does not match the instance");
    if (static_cast<int>(assignment.size()) != inst.alpha) throw ReductionError("assignment has wrong length");
    const GraphEnv& env = inst.env;
    int be = inst.beta;
    Plan plan;
    plan.env_hash = env.hash();
    for (int t = 0; t <= 2 * be; ++t) {
        Configuration c = inst.p0;
        if (t > 0 && t < 2 * be) {
            int j = t <= be ? be - t + 1 : t - be + 1;
            c[0] = env.find(idx("c", j));
            for (int i = 1; i <= inst.alpha; ++i) c[i] = env.find(lit(assignment[i - 1] ? i : -i));
        }
        plan.steps.push_back(c);
    }
    return plan;
}

// ---- set cover -> reachability ----

CmrInstance gen_cmr_from_sc(const SetCoverInstance& sc) {
    sc.validate();
    int a = sc.universe, be = static_cast<int>(sc.family.size());
    if (sc.k >= be) throw ReductionError("trivial instance: k >= number of subsets");
    int M = std::max(a, be);
    auto u = [](int i, int j) { return "u" + std::to_string(i) + "_" + std::to_string(j); };
    Builder g;
    g.add("b");
    for (int i = 1; i <= be; ++i)
        for (int j = 1; j <= M + 1; ++j) g.add(u(i, j));
    for (int i = 1; i <= be; ++i) g.add(idx("f", i));
    for (int j = 1; j <= M; ++j) g.add(idx("s", j));
    for (int j = 1; j <= M; ++j) g.add(idx("s'", j));

    for (int i = 1; i <= be; ++i) {
        g.m("b", u(i, 1));
        g.m(u(i, M + 1), idx("f", i));
        for (int j = 1; j <= M; ++j) g.m(u(i, j), u(i, j + 1));
    }
    g.m("b", "s1");
    for (int j = 1; j < M; ++j) g.m(idx("s", j), idx("s", j + 1));
    for (int j = 1; j <= M; ++j) g.m(idx("s", j), idx("s'", j));

    for (int i = 1; i <= be; ++i) {
        g.c("b", u(i, 1));
        g.c("b", idx("f", i));
        for (int j = 1; j <= M; ++j) g.c(u(i, j), u(i, j + 1));
    }
    g.c("b", "s'1");
    for (int j = 1; j < M; ++j) g.c(idx("s'", j), idx("s'", j + 1));
    g.c("b", idx("s", M));
    for (int i = 1; i <= be; ++i)
        for (int e : sc.family[i - 1]) g.c(idx("f", i), idx("s", e));
    // s_i beyond the universe belong to no subset; tie them to b so the final walk can pass
    for (int j = a + 1; j < M; ++j) g.c("b", idx("s", j));

    CmrInstance inst{g.build("b", {idx("s'", M)}), g[idx("s'", M)], M + sc.k, 2 * be * (M + 1) + M + 1, M};
    return inst;
}

namespace {

// appends the placement steps; crew are the M chain robots, runner ends on f_j
void place_steps(const CmrInstance& inst, int j, const std::vector<int>& crew, int runner, Configuration& cur,
                 Plan& plan) {
    const GraphEnv& env = inst.env;
    int M = inst.M;
    auto u = [&](int k) { return env.find("u" + std::to_string(j) + "_" + std::to_string(k)); };
    for (int s = 1; s <= M + 1; ++s) {
        for (int i = 0; i < M; ++i) cur[crew[i]] = u(std::min(i + 1, s));
        cur[runner] = u(std::min(M + 1, s));
        plan.steps.push_back(cur);
    }
    cur[runner] = env.find(idx("f", j));
    for (int front = M - 1; front >= 0; --front) {
        for (int i = 0; i < M; ++i) cur[crew[i]] = front == 0 ? env.base() : u(std::min(i + 1, front));
        plan.steps.push_back(cur);
    }
}

}  // namespace

Plan cmr_placement(const CmrInstance& inst, int j) {
    if (!inst.env.valid(inst.env.find(idx("f", j)))) throw ReductionError("no subset " + std::to_string(j));
    Plan plan;
    plan.env_hash = inst.env.hash();
    Configuration cur(inst.M + 1, inst.env.base());
    plan.steps.push_back(cur);
    std::vector<int> crew(inst.M);
    std::iota(crew.begin(), crew.end(), 0);
    place_steps(inst, j, crew, inst.M, cur, plan);
    return plan;
}

Plan encode_cmr_witness(const CmrInstance& inst, const SetCoverInstance& sc, const std::vector<int>& cover) {
    if (static_cast<int>(cover.size()) > sc.k) throw ReductionError("cover is larger than k");
    if (!sc.covers(cover)) throw ReductionError("chosen subsets do not cover the universe");
    const GraphEnv& env = inst.env;
    int M = inst.M;
    Plan plan;
    plan.env_hash = env.hash();
    Configuration cur(inst.r, env.base());
    plan.steps.push_back(cur);
    std::vector<int> crew(M);
    std::iota(crew.begin(), crew.end(), 0);
    for (std::size_t q = 0; q < cover.size(); ++q) place_steps(inst, cover[q], crew, M + static_cast<int>(q), cur, plan);
    for (int s = 1; s <= M; ++s) {
        for (int i = 0; i < M; ++i) cur[crew[i]] = env.find(idx("s", std::min(i + 1, s)));
        plan.steps.push_back(cur);
    }
    for (int i = 0; i < M; ++i) cur[crew[i]] = env.find(idx("s'", i + 1));
    plan.steps.push_back(cur);
    return plan;
}

// ---- 3SAT -> relay placement ----

CmrdInstance gen_cmrd_from_3sat(const CnfFormula& f) {
    f.validate();
    int a = f.num_vars, be = static_cast<int>(f.clauses.size());
    Builder g;
    g.add("b");
    for (int i = 1; i <= a; ++i) {
        g.add(idx("x", i));
        g.add(idx("~x", i));
    }
    for (int i = 1; i <= a; ++i) g.add(idx("x'", i));
    for (int j = 1; j <= be; ++j) g.add(idx("c", j));
    int n = static_cast<int>(g.names.size());
    for (int v = 1; v < n; ++v) g.em.emplace_back(v - 1, v);

    g.c(idx("~x", a), "x'1");
    for (int i = 2; i <= a; ++i) g.c(idx("x'", i - 1), idx("x'", i));
    g.c(idx("x'", a), "c1");
    for (int j = 2; j <= be; ++j) g.c(idx("c", j - 1), idx("c", j));
    g.c("b", "x1");
    g.c("b", "~x1");  // b links both literals of x_1, as for every later variable pair
    for (int i = 2; i <= a; ++i) g.c(idx("~x", i - 1), idx("x", i));
    for (int i = 1; i <= a; ++i) g.c(idx("x", i), idx("~x", i));
    for (int i = 2; i <= a; ++i)
        for (const char* p : {"x", "~x"})
            for (const char* q : {"x", "~x"}) g.c(idx(p, i - 1), idx(q, i));
    for (int i = 1; i <= a; ++i)
        for (const char* p : {"x", "~x"}) g.c(idx(p, i), idx("x'", i));
    for (int j = 1; j <= be; ++j)
        for (int l : f.clauses[j - 1]) g.c(idx("c", j), lit(l));

    std::vector<Vertex> path(n);
    std::iota(path.begin(), path.end(), 0);
    return CmrdInstance{g.build("b", {idx("c", be)}), path, a + 1};
}

std::vector<Vertex> cmrd_placement(const CmrdInstance& inst, const std::vector<bool>& assignment) {
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        int v = static_cast<int>(i) + 1;
        Vertex z = inst.env.find(lit(assignment[i] ? v : -v));
        if (z < 0) throw ReductionError("assignment has wrong length");
        out.push_back(z);
    }
    if (static_cast<int>(out.size()) != inst.r - 1) throw ReductionError("assignment has wrong length");
    return out;
}

// ---- number partition -> partition tree ----

CmpsttInstance gen_cmpstt_from_partition(const std::vector<int>& s) {
    if (s.empty()) throw ReductionError("empty multiset");
    for (int x : s)
        if (x <= 0) throw ReductionError("elements must be positive");
    CmpsttInstance inst;
    inst.tree.add("b", -1, 0, 0, 0, false);
    for (std::size_t i = 0; i < s.size(); ++i) inst.tree.add(idx("v", static_cast<int>(i) + 1), 0, s[i], 0, 1, true);
    inst.tree.gamma = [](int p, int) { return p == 0 ? 0 : 1; };
    inst.r = std::accumulate(s.begin(), s.end(), 0) / 2;
    inst.T = 6;
    return inst;
}

// ---- hand graphs ----

GraphEnv fig4a_env() {
    Builder g;
    for (const char* nm : {"b", "v", "w", "u"}) g.add(nm);
    g.m("b", "v");
    g.m("b", "w");
    g.m("v", "u");
    g.c("b", "u");
    g.c("u", "v");
    g.c("u", "w");
    return g.build("b", {"v", "w"});
}

GraphEnv fig4b_env() {
    Builder g;
    for (const char* nm : {"b", "u", "v", "w"}) g.add(nm);
    g.m("b", "u");
    g.m("u", "v");
    g.m("v", "w");
    g.c("b", "u");
    g.c("u", "v");
    g.c("b", "w");
    return g.build("b", {"w"});
}

Plan fig4b_witness(const GraphEnv& env) {
    Vertex b = env.find("b"), u = env.find("u"), v = env.find("v"), w = env.find("w");
    Plan p;
    p.env_hash = env.hash();
    p.steps = {{b, b}, {u, u}, {u, v}, {u, w}};
    return p;
}

// ---- verifier ----

Verdict verify_plan(const GraphEnv& env, const Plan& plan, const PlanClaims& claims) {
    Verdict out;
    auto fail = [&](int t, int robot, const std::string& rule, const std::string& detail) {
        out.ok = false;
        out.violation = Violation{t, robot, rule, detail};
        return out;
    };
    if (plan.steps.empty()) return fail(-1, -1, "shape", "plan has no steps");
    std::size_t r = plan.steps.front().size();
    std::vector<char> seen(env.size(), 0);
    for (std::size_t t = 0; t < plan.steps.size(); ++t) {
        const auto& c = plan.steps[t];
        int ti = static_cast<int>(t);
        if (c.size() != r) return fail(ti, -1, "shape", "robot count changes");
        for (std::size_t i = 0; i < r; ++i) {
            if (!env.valid(c[i])) return fail(ti, static_cast<int>(i), "shape", "unknown vertex " + std::to_string(c[i]));
            if (t > 0) {
                Vertex a = plan.steps[t - 1][i];
                if (a != c[i] && !env.adjacent(GraphSel::movement, a, c[i]))
                    return fail(ti, static_cast<int>(i), "movement", env.name(a) + " -> " + env.name(c[i]));
            }
        }
        if (!is_connected_config(env, c)) {
            // blame the lowest robot outside the component of b
            std::vector<char> occ(env.size(), 0), reach(env.size(), 0);
            for (Vertex v : c) occ[v] = 1;
            std::deque<Vertex> q{env.base()};
            reach[env.base()] = 1;
            while (!q.empty()) {
                Vertex x = q.front();
                q.pop_front();
                for (Vertex y : env.neighbors(GraphSel::connectivity, x))
                    if (occ[y] && !reach[y]) {
                        reach[y] = 1;
                        q.push_back(y);
                    }
            }
            int bad = 0;
            while (bad < static_cast<int>(r) && reach[c[bad]]) ++bad;
            return fail(ti, bad, "connectivity", "robot at " + env.name(c[bad]) + " is cut off from the base");
        }
        for (Vertex v : c) {
            if (claims.goal && v == *claims.goal && out.goal_time < 0) out.goal_time = ti;
            seen[v] = 1;
        }
    }
    for (Vertex v = 0; v < env.size(); ++v)
        if (seen[v]) out.visited.push_back(v);

    if (claims.start && plan.steps.front() != *claims.start) return fail(0, -1, "start", "initial configuration differs");
    if (claims.period) {
        int p = *claims.period;
        if (p < 1 || p > plan.horizon()) return fail(-1, -1, "period", "plan shorter than the claimed period");
        if (plan.steps[p] != plan.steps[0]) return fail(p, -1, "period", "configuration does not repeat");
        int wi = 0;
        for (Vertex s : env.sensing()) {
            std::vector<int> at;
            for (int t = 0; t < p; ++t)
                if (std::find(plan.steps[t].begin(), plan.steps[t].end(), s) != plan.steps[t].end()) at.push_back(t);
            if (at.empty()) return fail(-1, -1, "visits", env.name(s) + " never visited within the period");
            int gap = at.front() + p - at.back();
            for (std::size_t k = 1; k < at.size(); ++k) gap = std::max(gap, at[k] - at[k - 1]);
            wi = std::max(wi, gap - 1);
        }
        out.wi = wi;
    }
    if (claims.wi_bound) {
        if (!out.wi) return fail(-1, -1, "wi", "a bound needs a claimed period");
        if (*out.wi > *claims.wi_bound)
            return fail(-1, -1, "wi", "idleness " + std::to_string(*out.wi) + " exceeds " + std::to_string(*claims.wi_bound));
    }
    for (Vertex v : claims.visits)
        if (!env.valid(v) || !seen[v]) return fail(-1, -1, "visits", (env.valid(v) ? env.name(v) : "?") + " never visited");
    if (claims.goal && out.goal_time < 0) return fail(-1, -1, "goal", env.name(*claims.goal) + " never reached");
    out.ok = true;
    return out;
}

// ---- joint-state oracle ----

namespace {

class StateSpace {
  public:
    StateSpace(const GraphEnv& env, int r) : env_(env), r_(r) {}

    std::uint64_t key(const std::vector<Vertex>& s) const {
        std::uint64_t k = 0;
        for (Vertex v : s) k = k * env_.size() + v;
        return k;
    }
    int intern(const std::vector<Vertex>& s, bool& fresh) {
        auto [it, ins] = index_.emplace(key(s), static_cast<int>(states_.size()));
        fresh = ins;
        if (ins) states_.push_back(s);
        return it->second;
    }
    const std::vector<Vertex>& state(int i) const { return states_[i]; }
    int count() const { return static_cast<int>(states_.size()); }

    // sorted successor states that keep the team connected
    std::vector<int> successors(int i) {
        std::vector<int> out;
        std::vector<Vertex> cur(r_);
        std::vector<int> pick(r_);
        const auto src = states_[i];
        expand(src, 0, cur, pick, out);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

  private:
    // option 0 stays, option j > 0 takes the j-th movement neighbour;
    // robots sharing a vertex pick non-decreasing options
    void expand(const std::vector<Vertex>& src, int k, std::vector<Vertex>& cur, std::vector<int>& pick,
                std::vector<int>& out) {
        if (k == r_) {
            std::vector<Vertex> s = cur;
            std::sort(s.begin(), s.end());
            if (!is_connected_set(env_, s.data(), s.size())) return;
            bool fresh;
            out.push_back(intern(s, fresh));
            return;
        }
        const auto& nb = env_.neighbors(GraphSel::movement, src[k]);
        int from = k > 0 && src[k] == src[k - 1] ? pick[k - 1] : 0;
        for (int j = from; j <= static_cast<int>(nb.size()); ++j) {
            pick[k] = j;
            cur[k] = j == 0 ? src[k] : nb[j - 1];
            expand(src, k + 1, cur, pick, out);
        }
    }

    const GraphEnv& env_;
    int r_;
    std::unordered_map<std::uint64_t, int> index_;
    std::vector<std::vector<Vertex>> states_;
};

double multisets(int n, int r) {
    double c = 1;
    for (int i = 1; i <= r; ++i) c = c * (n + i - 1) / i;
    return c;
}

}  // namespace

OracleAnswer brute_force_oracle(const GraphEnv& env, int r, const OracleQuestion& q, const OracleLimits& lim) {
    OracleAnswer ans;
    if (r < 1) {
        ans.refused = true;
        ans.reason = "robot count must be at least 1";
        return ans;
    }
    int n = env.size();
    double bound = multisets(n, r);
    std::size_t ns = env.sensing().size();
    if (q.kind == OracleQuestion::Kind::min_period) bound *= ns < 60 ? static_cast<double>(1ULL << ns) : 1e300;
    double keyspace = 1;
    for (int i = 0; i < r; ++i) keyspace *= n;
    if (bound > static_cast<double>(lim.max_states) || keyspace > 1.8e19) {
        ans.refused = true;
        ans.reason = "state space of about " + std::to_string(static_cast<long double>(bound)) +
                     " exceeds the limit of " + std::to_string(lim.max_states);
        return ans;
    }
    if (q.kind == OracleQuestion::Kind::reachable && !env.valid(q.goal)) {
        ans.refused = true;
        ans.reason = "goal vertex out of range";
        return ans;
    }

    StateSpace sp(env, r);
    bool fresh;
    sp.intern(std::vector<Vertex>(r, env.base()), fresh);
    std::vector<std::vector<int>> succ;
    std::vector<int> depth{0};
    ans.occupiable.assign(n, 0);
    for (int i = 0; i < sp.count(); ++i) {
        for (Vertex v : sp.state(i)) {
            ans.occupiable[v] = 1;
            if (q.kind == OracleQuestion::Kind::reachable && v == q.goal && !ans.reachable) {
                ans.reachable = true;
                ans.steps = depth[i];
            }
        }
        int before = sp.count();
        succ.push_back(sp.successors(i));
        for (int k = before; k < sp.count(); ++k) depth.push_back(depth[i] + 1);
    }
    ans.states = sp.count();
    if (q.kind == OracleQuestion::Kind::reachable) return ans;

    // shortest closed walk whose states together cover V_S
    int S = sp.count();
    std::vector<std::uint64_t> mask(S, 0);
    for (int i = 0; i < S; ++i)
        for (Vertex v : sp.state(i))
            if (env.is_sensing(v)) mask[i] |= 1ULL << env.sensing_index(v);
    std::uint64_t full = ns == 64 ? ~0ULL : (1ULL << ns) - 1;
    std::vector<int> dist(static_cast<std::size_t>(S) << ns);
    for (int s0 = 0; s0 < S; ++s0) {
        std::fill(dist.begin(), dist.end(), -1);
        std::deque<std::pair<int, std::uint64_t>> dq;
        auto push = [&](int st, std::uint64_t m, int d) {
            std::size_t k = (static_cast<std::size_t>(st) << ns) | m;
            if (dist[k] >= 0) return;
            dist[k] = d;
            dq.emplace_back(st, m);
        };
        for (int nx : succ[s0]) push(nx, mask[s0] | mask[nx], 1);
        while (!dq.empty()) {
            auto [st, m] = dq.front();
            dq.pop_front();
            int d = dist[(static_cast<std::size_t>(st) << ns) | m];
            if (ans.min_period && d >= *ans.min_period) break;
            if (st == s0 && m == full) {
                ans.min_period = d;
                break;
            }
            for (int nx : succ[st]) push(nx, m | mask[nx], d + 1);
        }
    }
    return ans;
}

}  // namespace cps
