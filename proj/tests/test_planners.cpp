#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "cps/planners.hpp"
#include "cps/reductions.hpp"

using namespace cps;

namespace {

GraphEnv simple_scenario() {
    GridSpec s;
    s.width = 30;
    s.height = 30;
    s.r_com = 21.2;
    s.sensing_cells = {{30, 1}, {30, 30}, {1, 30}, {15, 15}};
    return build_grid_env(s);
}

GraphEnv all_grid(int w, int h, double rc) {
    GridSpec s;
    s.width = w;
    s.height = h;
    s.r_com = rc;
    s.all_sensing = true;
    return build_grid_env(s);
}

int wi(const GraphEnv& env, const Plan& p) {
    auto w = worst_idleness_windowed(trace_plan(env, p, false));
    return std::holds_alternative<int>(w) ? std::get<int>(w) : -1;
}

// fewest non-terminals joining the terminals in G_C, by subset enumeration
int steiner_oracle(const GraphEnv& env, const std::vector<Vertex>& terms) {
    int n = env.size();
    std::vector<Vertex> others;
    for (Vertex v = 0; v < n; ++v)
        if (std::find(terms.begin(), terms.end(), v) == terms.end()) others.push_back(v);
    int best = -1;
    for (unsigned m = 0; m < (1u << others.size()); ++m) {
        int k = __builtin_popcount(m);
        if (best >= 0 && k >= best) continue;
        std::vector<char> in(n, 0);
        for (Vertex t : terms) in[t] = 1;
        for (std::size_t i = 0; i < others.size(); ++i)
            if (m >> i & 1) in[others[i]] = 1;
        std::vector<char> seen(n, 0);
        std::vector<Vertex> st{terms[0]};
        seen[terms[0]] = 1;
        while (!st.empty()) {
            Vertex u = st.back();
            st.pop_back();
            for (Vertex w : env.neighbors(GraphSel::connectivity, u))
                if (in[w] && !seen[w]) seen[w] = 1, st.push_back(w);
        }
        if (std::all_of(terms.begin(), terms.end(), [&](Vertex t) { return seen[t]; })) best = k;
    }
    return best;
}

}  // namespace

TEST_CASE("assignment matrix") {
    GraphEnv line(3, {{0, 1}, {1, 2}}, {{0, 1}, {1, 2}}, 0, {1});
    auto a = assignment_matrix(line, {0, 2}, {5}, {-1, 1});
    CHECK(a[0][0] == doctest::Approx(5.0));
    CHECK(a[0][1] == doctest::Approx(5.0));
    auto z = assignment_matrix(line, {0, 2}, {5}, {0, 0});
    CHECK(z[0][0] == 5.0);
    CHECK(z[0][1] == 5.0);
    auto one = assignment_matrix(line, {0}, {3}, {0.5, 7});
    auto one0 = assignment_matrix(line, {0}, {3}, {0.5, 0});
    CHECK(one == one0);
}

TEST_CASE("zero horizon") {
    GraphEnv env = simple_scenario();
    Plan p = plan_sh(env, 3, 0, {});
    REQUIRE(p.steps.size() == 1);
    CHECK(p.steps[0] == Configuration(3, env.base()));
}

TEST_CASE("simple scenario: SHC reaches the optimum, SH and FH stay above it") {
    GraphEnv env = simple_scenario();
    ShcConfig c;
    c.horizon = 3000;
    Plan shc = plan_shc(env, 3, c, {});
    CHECK(verify_plan(env, shc).ok);
    CHECK(wi(env, shc) == 60);
    Plan sh = plan_sh(env, 3, 3000, {});
    CHECK(verify_plan(env, sh).ok);
    CHECK(wi(env, sh) > 60);
    auto tour = build_fh_tour(env);
    REQUIRE(tour.ok);
    auto fh = plan_fh(env, 3, {3000, false}, tour.tour);
    REQUIRE(fh.feasible);
    CHECK(verify_plan(env, fh.plan).ok);
    CHECK(wi(env, fh.plan) > 60);
}

TEST_CASE("SHC parks on a lone neighbour") {
    GraphEnv env(2, {{0, 1}}, {{0, 1}}, 0, {1});
    ShcConfig c;
    c.horizon = 40;
    Plan p = plan_shc(env, 1, c, {});
    CHECK(verify_plan(env, p).ok);
    CHECK(p.steps.back()[0] == 1);
    CHECK(wi(env, p) == 1);
}

TEST_CASE("Steiner tree on trivial inputs") {
    GraphEnv tri(3, {{0, 1}, {1, 2}, {0, 2}}, {{0, 1}, {1, 2}, {0, 2}}, 0, {1, 2});
    auto t = steiner_tree_min_nonterminals(tri, {0, 2});
    CHECK(t.ok);
    CHECK(t.non_terminals == 0);
    CHECK(t.edges.size() == 1);
    GraphEnv path(3, {{0, 1}, {1, 2}}, {{0, 1}, {1, 2}}, 0, {2});
    auto p = steiner_tree_min_nonterminals(path, {0, 2});
    CHECK(p.non_terminals == 1);
    CHECK(p.vertices == std::vector<Vertex>{0, 1, 2});
    GraphEnv cut(3, {{0, 1}, {1, 2}}, {{0, 1}}, 0, {2});
    auto c = steiner_tree_min_nonterminals(cut, {0, 2});
    CHECK_FALSE(c.ok);
    CHECK(c.unreachable == std::vector<Vertex>{2});
}

TEST_CASE("Steiner approximation against exhaustive search") {
    std::mt19937 rng(2024);
    int exact = 0, total = 0;
    while (total < 200) {
        std::vector<Edge> ec;
        for (int a = 0; a < 8; ++a)
            for (int b = a + 1; b < 8; ++b)
                if (rng() % 100 < 30) ec.push_back({a, b});
        std::vector<Vertex> all(8);
        std::iota(all.begin(), all.end(), 0);
        GraphEnv env(8, ec, ec, 0, all);
        std::vector<Vertex> terms{0};
        for (Vertex v = 1; v < 8; ++v)
            if (rng() % 100 < 40) terms.push_back(v);
        if (terms.size() < 2) continue;
        int best = steiner_oracle(env, terms);
        if (best < 0) continue;
        auto t = steiner_tree_min_nonterminals(env, terms);
        REQUIRE(t.ok);
        CHECK(t.non_terminals >= best);
        CHECK(t.edges.size() + 1 == t.vertices.size());
        exact += t.non_terminals == best;
        ++total;
    }
    CHECK(exact >= 160);
}

TEST_CASE("Hungarian matches permutation enumeration") {
    std::mt19937 rng(5);
    for (int it = 0; it < 200; ++it) {
        int rows = 1 + rng() % 5, cols = rows + rng() % 3;
        std::vector<std::vector<double>> c(rows, std::vector<double>(cols));
        for (auto& r : c)
            for (auto& x : r) x = rng() % 20;
        auto a = hungarian(c);
        REQUIRE(a.size() == static_cast<std::size_t>(rows));
        CHECK(std::set<int>(a.begin(), a.end()).size() == a.size());
        double got = 0;
        for (int i = 0; i < rows; ++i) got += c[i][a[i]];
        std::vector<int> perm(cols);
        std::iota(perm.begin(), perm.end(), 0);
        double best = 1e18;
        do {
            double s = 0;
            for (int i = 0; i < rows; ++i) s += c[i][perm[i]];
            best = std::min(best, s);
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(got == best);
    }
    CHECK(hungarian({{2, 5}, {5, 2}}) == std::vector<int>{0, 1});
}

TEST_CASE("formation match on an unchanged tree") {
    GraphEnv env(4, {{0, 1}, {1, 2}, {1, 3}}, {{0, 1}, {1, 2}, {1, 3}}, 0, {2, 3});
    LabeledTree final_tree = label_trie({{0, 1}, {1, 2}, {1, 3}}, 0);
    CHECK(label_string(final_tree.label[0]) == "0");
    auto m = match_formation(env, {1, 2, 3}, final_tree);
    CHECK(m.extra.empty());
    CHECK(m.missing.empty());
    CHECK(m.assignment.empty());
}

TEST_CASE("FH tours") {
    GraphEnv g2 = all_grid(2, 2, 2);
    auto t = build_fh_tour(g2);
    REQUIRE(t.ok);
    REQUIRE(t.tour.cells.size() == 4);
    CHECK(t.tour.cells[0] == g2.base());
    CHECK(std::set<Vertex>(t.tour.cells.begin(), t.tour.cells.end()).size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(g2.adjacent(GraphSel::movement, t.tour.cells[i], t.tour.cells[(i + 1) % 4]));

    GraphEnv g30 = all_grid(30, 30, 3);
    auto t30 = build_fh_tour(g30);
    REQUIRE(t30.ok);
    CHECK(t30.tour.cells.size() == 900);
    CHECK(std::set<Vertex>(t30.tour.cells.begin(), t30.tour.cells.end()).size() == 900);

    GraphEnv solo(2, {{0, 1}}, {{0, 1}}, 0, {0});
    auto ts = build_fh_tour(solo);
    REQUIRE(ts.ok);
    CHECK(ts.tour.cells == std::vector<Vertex>{0});
}

TEST_CASE("FH with unlimited range walks the tour") {
    GraphEnv env = all_grid(6, 6, 20);
    auto t = build_fh_tour(env);
    REQUIRE(t.ok);
    int lap = static_cast<int>(t.tour.cells.size()) - 1;
    auto solo = plan_fh(env, 1, {200, true}, t.tour);
    REQUIRE(solo.feasible);
    CHECK(coverage_time(trace_plan(env, solo.plan), 200) == lap);
    // followers see cells too, the leader skips those
    auto team = plan_fh(env, 5, {200, true}, t.tour);
    REQUIRE(team.feasible);
    CHECK(verify_plan(env, team.plan).ok);
    CHECK(coverage_time(trace_plan(env, team.plan), 200) <= lap);
}

TEST_CASE("FH beats twice the sensing count on the open grid") {
    GraphEnv env = all_grid(30, 30, 11.5);
    auto t = build_fh_tour(env);
    REQUIRE(t.ok);
    auto r = plan_fh(env, 4, {3000, true}, t.tour);
    REQUIRE(r.feasible);
    CHECK(verify_plan(env, r.plan).ok);
    CHECK(coverage_time(trace_plan(env, r.plan), 3000) < 1800);
}

TEST_CASE("SH with a short radio stays executable") {
    GraphEnv env = all_grid(30, 30, 3);
    Plan p = plan_sh(env, 15, {1800, true}, {});
    CHECK(verify_plan(env, p).ok);
    CHECK(coverage_time(trace_plan(env, p), 1800) >= 60);
}

TEST_CASE("every planner output is executable on small grids") {
    std::mt19937 rng(9);
    for (int i = 0; i < 6; ++i) {
        GridSpec s;
        s.width = 4 + rng() % 6;
        s.height = 4 + rng() % 6;
        s.r_com = 1.5 + (rng() % 30) / 10.0;
        s.all_sensing = true;
        GraphEnv env = build_grid_env(s);
        int r = 2 + rng() % 5;
        CHECK(verify_plan(env, plan_sh(env, r, 150, {0.5, -0.5})).ok);
        ShcConfig c;
        c.horizon = 150;
        CHECK(verify_plan(env, plan_shc(env, r, c, {})).ok);
        auto t = build_fh_tour(env);
        REQUIRE(t.ok);
        auto f = plan_fh(env, r, {150, false}, t.tour);
        if (f.feasible) CHECK(verify_plan(env, f.plan).ok);
    }
}
