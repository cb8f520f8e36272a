#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "cps/reductions.hpp"
#include "cps/scenario.hpp"

using namespace cps;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_scenario(text);
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

std::string plan_error(const std::string& text) {
    std::istringstream in(text);
    try {
        parse_plan(in);
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("grid scenario") {
    auto sc = parse_scenario(R"({"grid": {"width": 30, "height": 30, "base": [1, 1], "r_com": 21.2,
        "sensing": [[30, 1], [30, 30], [1, 30], [15, 15]]}})");
    REQUIRE(sc.grid);
    CHECK(sc.env->size() == 900);
    CHECK(sc.env->sensing().size() == 4);
    CHECK(sc.env->grid()->r_com == doctest::Approx(21.2));
    auto all = parse_scenario(R"({"grid": {"width": 3, "height": 2, "r_com": 1, "sensing": "all"}})");
    CHECK(all.env->sensing().size() == 6);
}

TEST_CASE("graph scenario with names and instance data") {
    auto sc = parse_scenario(R"({"graph": {"vertices": ["b", "u", "v"], "movement_edges": [["b", "u"], ["u", "v"]],
        "connectivity_edges": [["b", "u"], [1, 2]], "base": "b", "sensing": ["v"]},
        "instance": {"robots": 2, "horizon": 9, "start": ["b", "b"], "goal": "v", "path": ["b", "u", "v"]}})");
    CHECK(sc.env->size() == 3);
    CHECK(sc.env->find("v") == 2);
    CHECK(sc.extras.robots == 2);
    CHECK(sc.extras.horizon == 9);
    CHECK(sc.extras.goal == 2);
    CHECK(sc.extras.path == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("scenario errors") {
    CHECK(error_of("{").find("JSON") != std::string::npos);
    CHECK(error_of("{}").find("grid") != std::string::npos);
    CHECK(error_of(R"({"grid": {"width": 3, "height": 2, "r_com": 1, "sensing": "some"}})") != "");
    CHECK(error_of(R"({"grid": {"width": 3, "height": 2, "r_com": 1, "sensing": [[9, 9]]}})") != "");
    CHECK(error_of(R"({"graph": {"vertices": 2, "movement_edges": [[0, 5]], "connectivity_edges": [],
        "base": 0, "sensing": "all"}})").find("out of range") != std::string::npos);
    CHECK(error_of(R"({"graph": {"vertices": ["b"], "movement_edges": [], "connectivity_edges": [],
        "base": "q", "sensing": "all"}})").find("unknown vertex") != std::string::npos);
    CHECK_THROWS_AS(load_scenario("/nonexistent/world.json"), InputError);
}

TEST_CASE("generated worlds survive a JSON round trip") {
    auto in = gen_cmps_from_3sat(CnfFormula{4, {{1, 2, 3}, {-1, -2, 4}, {2, -3, -4}}});
    ScenarioExtras x;
    x.robots = in.r;
    x.start = in.p0;
    auto back = parse_scenario(scenario_json(in.env, x));
    CHECK(back.env->hash() == in.env.hash());
    CHECK(back.extras.start == in.p0);
    CHECK(back.extras.robots == in.r);
}

TEST_CASE("plan text round trip") {
    GraphEnv env = fig4b_env();
    Plan p = fig4b_witness(env);
    std::string text = plan_text(p);
    CHECK(text.rfind("env_hash ", 0) == 0);
    std::istringstream in(text);
    Plan q = parse_plan(in);
    CHECK(q.steps == p.steps);
    CHECK(q.env_hash == env.hash());
    CHECK(plan_text(q) == text);
}

TEST_CASE("plan parse errors name the line") {
    CHECK(plan_error("env_hash 00ff\nrobots 2\nhorizon 1\n0,0\n0,x\n").find("line 5") != std::string::npos);
    CHECK(plan_error("env_hash 00ff\nrobots 2\n0,0\n0\n").find("line 4") != std::string::npos);
    CHECK(plan_error("env_hash 00ff\ncolour 2\n").find("line 2") != std::string::npos);
    CHECK(plan_error("robots 1\n0\n").find("env_hash") != std::string::npos);
    CHECK(plan_error("env_hash 1\nhorizon 4\n0\n").find("horizon") != std::string::npos);
    CHECK(plan_error("env_hash 1\n") != "");
}

TEST_CASE("partition tree JSON") {
    auto inst = gen_cmpstt_from_partition({3, 1, 2, 2});
    auto back = parse_partition_tree(partition_tree_json(inst.tree, inst.r, 50, 3));
    REQUIRE(back.tree.size() == inst.tree.size());
    CHECK(back.robots == 4);
    CHECK(back.horizon == 50);
    CHECK(back.tree.A == inst.tree.A);
    CHECK(back.tree.parent == inst.tree.parent);
    for (int p = 0; p < back.tree.size(); ++p)
        for (int k = 1; k <= 6; ++k) CHECK(back.tree.gamma(p, k) == inst.tree.gamma(p, k));
    CHECK_THROWS_AS(parse_partition_tree(R"({"partition_tree": {"nodes": [{"name": "a", "parent": 3}]}})"),
                    InputError);
}
