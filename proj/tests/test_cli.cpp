#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cps/reductions.hpp"
#include "cps/scenario.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int rc = -1;
    std::string out;
};

Run run(const std::string& args) {
    static int seq = 0;
    fs::path log = fs::temp_directory_path() / ("cps_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(seq++));
    std::string cmd = std::string(CPS_BIN) + " " + args + " > " + log.string() + " 2>&1";
    int st = std::system(cmd.c_str());
    Run r;
    r.rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    std::ifstream f(log);
    std::ostringstream ss;
    ss << f.rdbuf();
    r.out = ss.str();
    fs::remove(log);
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct Dir {
    fs::path p;
    Dir() {
        p = fs::temp_directory_path() / ("cps_cli_" + std::to_string(::getpid()));
        fs::remove_all(p);
        fs::create_directories(p);
    }
    ~Dir() { fs::remove_all(p); }
    std::string operator/(const std::string& f) const { return (p / f).string(); }
};

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

const char* kSimple = R"({"grid": {"width": 30, "height": 30, "base": [1, 1], "r_com": 21.2,
    "sensing": [[30, 1], [30, 30], [1, 30], [15, 15]]}})";

}  // namespace

TEST_CASE("plan is deterministic and replays") {
    Dir d;
    write(d / "s.json", kSimple);
    for (const char* algo : {"shc", "sh", "fh", "tt"}) {
        std::string base = std::string("plan --algo ") + algo + " --scenario " + (d / "s.json") +
                           " --robots 3 --horizon 600 ";
        auto a = run(base + "--out " + (d / "a.csv") + " --plan-out " + (d / "a.plan") + " --summary " + (d / "a.sum"));
        REQUIRE(a.rc == 0);
        auto b = run(base + "--out " + (d / "b.csv") + " --plan-out " + (d / "b.plan") + " --summary " + (d / "b.sum"));
        REQUIRE(b.rc == 0);
        CHECK(slurp(d / "a.csv") == slurp(d / "b.csv"));
        CHECK(slurp(d / "a.plan") == slurp(d / "b.plan"));
        CHECK(slurp(d / "a.sum") == slurp(d / "b.sum"));
        auto v = run("verify --scenario " + (d / "s.json") + " --plan " + (d / "a.plan"));
        CHECK(v.rc == 0);
        // summary: planner,r,r_com,CT,WI,...
        std::string sum = slurp(d / "a.sum");
        std::string line = sum.substr(sum.find('\n') + 1);
        std::istringstream ls(line);
        std::string f[5];
        for (auto& x : f) std::getline(ls, x, ',');
        CHECK(v.out.find("CT," + f[3] + "\n") != std::string::npos);
        CHECK(v.out.find("WI," + f[4] + "\n") != std::string::npos);
    }
}

TEST_CASE("SHC on the simple scenario") {
    Dir d;
    write(d / "s.json", kSimple);
    auto a = run("plan --algo shc --scenario " + (d / "s.json") + " --robots 3");
    REQUIRE(a.rc == 0);
    CHECK(a.out.find("shc,3,21.2,") != std::string::npos);
    CHECK(a.out.find(",60,3000,") != std::string::npos);
}

TEST_CASE("edited plans are rejected") {
    Dir d;
    write(d / "s.json", kSimple);
    REQUIRE(run("plan --algo sh --scenario " + (d / "s.json") + " --robots 2 --horizon 5 --plan-out " + (d / "p")).rc == 0);
    std::string text = slurp(d / "p");
    auto last = text.rfind('\n', text.size() - 2);
    write(d / "bad", text.substr(0, last + 1) + "899,0\n");
    auto v = run("verify --scenario " + (d / "s.json") + " --plan " + (d / "bad"));
    CHECK(v.rc == 2);
    CHECK(v.out.find("movement") != std::string::npos);
    CHECK(v.out.find("5") != std::string::npos);

    write(d / "garbled", text.substr(0, last + 1) + "1,q\n");
    auto g = run("verify --scenario " + (d / "s.json") + " --plan " + (d / "garbled"));
    CHECK(g.rc == 3);
    CHECK(g.out.find("line 9") != std::string::npos);

    write(d / "other.json", R"({"grid": {"width": 30, "height": 30, "r_com": 3, "sensing": "all"}})");
    CHECK(run("verify --scenario " + (d / "other.json") + " --plan " + (d / "p")).rc == 3);
}

TEST_CASE("exit codes") {
    Dir d;
    auto m = run("plan --algo sh --scenario " + (d / "missing.json") + " --robots 2");
    CHECK(m.rc == 3);
    CHECK(m.out.find("missing.json") != std::string::npos);
    CHECK(run("plan --algo nope --scenario x --robots 2").rc == 3);
    write(d / "g.json", R"({"grid": {"width": 30, "height": 30, "r_com": 1.5, "sensing": "all"}})");
    auto inf = run("plan --algo tt --scenario " + (d / "g.json") + " --robots 1 --out " + (d / "t.csv"));
    CHECK(inf.rc == 2);
    CHECK_FALSE(fs::exists(d / "t.csv"));
}

TEST_CASE("reductions from the command line") {
    Dir d;
    write(d / "f.cnf", "p cnf 4 3\n1 2 3 0\n-1 -2 4 0\n2 -3 -4 0\n");
    auto r = run("reduce --from 3sat-cmps --in " + (d / "f.cnf") + " --out " + (d / "i.json") +
                 " --assignment 1,1,1,1 --witness " + (d / "w.plan"));
    REQUIRE(r.rc == 0);
    auto v = run("verify --scenario " + (d / "i.json") + " --plan " + (d / "w.plan") + " --period 6");
    CHECK(v.rc == 0);
    CHECK(v.out.find("periodic_WI,5") != std::string::npos);

    write(d / "u.cnf", "p cnf 4 3\n1 2 3 0\n-1 -2 4 0\n2 -3 -4 0\n");
    auto bad = run("reduce --from 3sat-cmps --in " + (d / "u.cnf") + " --out " + (d / "j.json") +
                   " --assignment 0,0,0,0 --witness " + (d / "x.plan"));
    REQUIRE(bad.rc == 0);
    CHECK(run("verify --scenario " + (d / "j.json") + " --plan " + (d / "x.plan") + " --period 6").rc == 2);
}

TEST_CASE("traversal witness accepted") {
    Dir d;
    cps::GraphEnv env = cps::fig4b_env();
    write(d / "b.json", cps::scenario_json(env));
    write(d / "w.plan", cps::plan_text(cps::fig4b_witness(env)));
    auto v = run("verify --scenario " + (d / "b.json") + " --plan " + (d / "w.plan"));
    CHECK(v.rc == 0);
    CHECK(v.out.find("visited,{u v w}") != std::string::npos);
    auto rr = run("reach --scenario " + (d / "b.json"));
    CHECK(rr.rc == 0);
    CHECK(rr.out.find("traverse,1") != std::string::npos);
}

TEST_CASE("sweep cells") {
    Dir d;
    write(d / "g.json", R"({"grid": {"width": 10, "height": 10, "r_com": 5.8, "sensing": "all"}})");
    auto s = run("sweep --algos sh,fh --robots 2-3 --horizon 100 --scenario " + (d / "g.json") + " --out-dir " + (d / "o") + " --jobs 2");
    REQUIRE(s.rc == 0);
    for (const char* f : {"sh_r2.csv", "sh_r3.csv", "fh_r3.csv", "summary.csv"}) CHECK(fs::exists(d.p / "o" / f));
    CHECK_FALSE(fs::exists(d.p / "o" / "fh_r2.csv"));  // chain too short for the far corner
    std::string first = slurp(d / "o/summary.csv");
    CHECK(first.find("fh,2,5.8,NA,NA,100,infeasible") != std::string::npos);
    REQUIRE(run("sweep --algos sh,fh --robots 2-3 --horizon 100 --scenario " + (d / "g.json") + " --out-dir " + (d / "o") + " --jobs 1").rc == 0);
    CHECK(slurp(d / "o/summary.csv") == first);
}
