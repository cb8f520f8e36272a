#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "cps/optimizer.hpp"

using namespace cps;

namespace {

double quad(double x, double y) { return (x - 3) * (x - 3) + (y + 2) * (y + 2); }

GraphEnv simple_scenario() {
    GridSpec s;
    s.width = 30;
    s.height = 30;
    s.r_com = 21.2;
    s.sensing_cells = {{30, 1}, {30, 30}, {1, 30}, {15, 15}};
    return build_grid_env(s);
}

}  // namespace

TEST_CASE("quadratic bowl") {
    PatternSearchConfig cfg;
    auto r = pattern_search(quad, cfg);
    CHECK(std::hypot(r.x - 3, r.y + 2) < 0.05);
    CHECK(r.value < 1e-4);
    CHECK(r.log.front().x == 0.0);
    CHECK(r.log.front().accepted);
}

TEST_CASE("constant objective contracts to the tolerance without moving") {
    PatternSearchConfig cfg;
    auto r = pattern_search([](double, double) { return 5.0; }, cfg);
    CHECK(r.x == 0.0);
    CHECK(r.y == 0.0);
    CHECK(r.iterations == 7);
    CHECK(r.log.size() == 1 + 4 * 7);
    for (std::size_t i = 1; i < r.log.size(); ++i) CHECK_FALSE(r.log[i].accepted);
}

TEST_CASE("poll order breaks ties") {
    PatternSearchConfig cfg;
    cfg.mesh_tolerance = 0.9;
    // +x and -y tie; +x is polled first
    auto r = pattern_search([](double x, double y) { return -std::abs(x) - std::abs(y); }, cfg);
    REQUIRE(r.log.size() >= 5);
    CHECK(r.log[1].accepted);
    CHECK_FALSE(r.log[4].accepted);
}

TEST_CASE("non-finite polls never win") {
    PatternSearchConfig cfg;
    auto r = pattern_search(
        [](double x, double y) { return x > 0.5 ? std::numeric_limits<double>::infinity() : quad(x, y); }, cfg);
    CHECK(r.x <= 0.5);
    CHECK(std::isfinite(r.value));
}

TEST_CASE("parallel polls reproduce the serial log") {
    PatternSearchConfig cfg;
    auto a = pattern_search(quad, cfg);
    for (int w : {2, 4}) {
        cfg.max_parallel_polls = w;
        auto b = pattern_search(quad, cfg);
        CHECK(a.log == b.log);
        CHECK(a.x == b.x);
        CHECK(a.y == b.y);
    }
}

TEST_CASE("bad mesh constants") {
    PatternSearchConfig cfg;
    cfg.contract_factor = 1.5;
    CHECK_THROWS_AS(pattern_search(quad, cfg), std::invalid_argument);
}

TEST_CASE("weight search never worsens the start") {
    GraphEnv env = simple_scenario();
    PatternSearchConfig cfg;
    cfg.mesh_tolerance = 0.2;
    int start = coverage_objective(env, WeightedPlanner::sh, 3, {}, cfg.t_o);
    auto w = optimize_weights(env, WeightedPlanner::sh, 3, cfg);
    CHECK(w.ct <= start);
    CHECK(w.ct == coverage_objective(env, WeightedPlanner::sh, 3, w.params, cfg.t_o));
    cfg.max_parallel_polls = 4;
    auto p = optimize_weights(env, WeightedPlanner::sh, 3, cfg);
    CHECK(p.search.log == w.search.log);
}

TEST_CASE("coverage objective caps at the horizon") {
    GridSpec s;
    s.width = 20;
    s.height = 20;
    s.r_com = 2;
    s.all_sensing = true;
    GraphEnv env = build_grid_env(s);
    CHECK(coverage_objective(env, WeightedPlanner::sh, 2, {}, 50) == 50);
}
