#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cps/cmpstt.hpp"
#include "cps/env.hpp"
#include "cps/metrics.hpp"
#include "cps/optimizer.hpp"
#include "cps/planners.hpp"
#include "cps/reachability.hpp"
#include "cps/reductions.hpp"
#include "cps/scenario.hpp"
#include "cps/treetraversal.hpp"

using namespace cps;

namespace {

constexpr int kOk = 0, kInfeasible = 2, kInvalid = 3;

struct Infeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string out_path(const std::string& p) {
    if (p.empty()) return p;
    const char* dir = std::getenv("CPS_OUT_DIR");
    std::filesystem::path fp(p);
    if (dir && *dir && fp.is_relative()) return (std::filesystem::path(dir) / fp).string();
    return p;
}

// collects outputs in memory and writes them together, so a failure leaves nothing behind
struct Outputs {
    std::vector<std::pair<std::string, std::string>> files;
    void add(const std::string& path, std::string body) {
        if (!path.empty()) files.emplace_back(out_path(path), std::move(body));
    }
    void commit() {
        std::vector<std::string> done;
        for (auto& [p, body] : files) {
            std::ofstream f(p, std::ios::binary);
            if (f) f << body;
            if (!f) {
                for (const auto& d : done) std::remove(d.c_str());
                std::remove(p.c_str());
                throw InputError("cannot write " + p);
            }
            done.push_back(p);
        }
    }
};

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

std::string wi_string(const WindowedWI& w) {
    if (auto* v = std::get_if<int>(&w)) return std::to_string(*v);
    return "NA";
}

std::string trace_csv(const IdlenessTrace& tr) {
    std::ostringstream os;
    os << "t,WI_t\n";
    const auto& s = tr.series();
    for (std::size_t t = 0; t < s.size(); ++t) os << t << "," << s[t] << "\n";
    return os.str();
}

struct PlanArgs {
    std::string algo = "sh";
    std::string scenario;
    int robots = 0;
    int horizon = 3000;
    double w0 = 0, w1 = 0;
    std::string strategy = "best";
    std::string parts = "2x2";
    std::string inner = "sh";
    int kappa = 0;
    bool stop = false;
};

struct PlanRun {
    Plan plan;
    std::string params;
};

Partitioning parse_parts(const GraphEnv& env, const std::string& parts) {
    if (!env.grid()) throw InputError("partitioning needs a grid scenario");
    int m = 0, n = 0;
    char x = 0;
    std::istringstream ps(parts);
    if (!(ps >> m >> x >> n) || x != 'x' || m < 1 || n < 1) throw InputError("--parts must look like 2x2");
    return regular_split(*env.grid(), m, n);
}

PlanRun run_planner(const Scenario& sc, const PlanArgs& a) {
    const GraphEnv& env = *sc.env;
    if (a.robots < 1) throw InputError("--robots must be at least 1");
    if (a.horizon < 1) throw InputError("--horizon must be at least 1");
    WeightParams w{a.w0, a.w1};
    RunLimits lim{a.horizon, a.stop};
    PlanRun out;
    std::string wp = "w0=" + fmt(a.w0) + ";w1=" + fmt(a.w1);
    if (a.algo == "sh") {
        out.plan = plan_sh(env, a.robots, lim, w);
        out.params = wp;
    } else if (a.algo == "shc") {
        ShcConfig c;
        c.horizon = a.horizon;
        c.kappa = a.kappa;
        c.stop_on_coverage = a.stop;
        out.plan = plan_shc(env, a.robots, c, w);
        out.params = wp + ";kappa=" + std::to_string(a.kappa);
    } else if (a.algo == "fh") {
        auto tour = build_fh_tour(env);
        if (!tour.ok) throw Infeasible("sensing vertices unreachable from the base");
        auto res = plan_fh(env, a.robots, lim, tour.tour);
        if (!res.feasible) throw Infeasible(res.reason);
        out.plan = std::move(res.plan);
    } else if (a.algo == "tt") {
        auto tree = build_sensing_tree(env);
        if (!tree.ok) throw Infeasible("sensing vertices unreachable from the base");
        if (a.strategy == "best") {
            auto best = plan_tt_best(env, tree.tree, a.robots, lim);
            if (!best.result.feasible) throw Infeasible(best.result.reason);
            out.plan = std::move(best.result.plan);
            out.params = "strategy=" + strategy_name(best.strategy);
        } else {
            SplitStrategy st;
            if (!parse_strategy(a.strategy, st)) throw InputError("unknown strategy '" + a.strategy + "'");
            auto res = plan_tt(env, tree.tree, a.robots, st, lim);
            if (!res.feasible) throw Infeasible(res.reason);
            out.plan = std::move(res.plan);
            out.params = "strategy=" + strategy_name(st);
        }
    } else if (a.algo == "cmpstt") {
        CmpsttConfig cfg;
        cfg.parts = parse_parts(env, a.parts);
        cfg.params = w;
        cfg.horizon = a.horizon;
        if (a.inner == "sh") cfg.inner = InnerPlanner::sh;
        else if (a.inner == "shc") cfg.inner = InnerPlanner::shc;
        else if (a.inner == "fh") cfg.inner = InnerPlanner::fh;
        else throw InputError("unknown inner planner '" + a.inner + "'");
        auto res = plan_cmpstt(env, a.robots, cfg);
        if (!res.result.feasible) throw Infeasible(res.result.reason);
        out.plan = std::move(res.result.plan);
        out.params = wp + ";parts=" + a.parts + ";inner=" + a.inner;
    } else {
        throw InputError("unknown algorithm '" + a.algo + "'");
    }
    out.plan.env_hash = env.hash();
    return out;
}

std::string summary_header() { return "planner,r,r_com,CT,WI,horizon,params\n"; }

std::string summary_line(const Scenario& sc, const std::string& algo, int r, const Plan& plan,
                         const IdlenessTrace& tr, const std::string& params) {
    std::ostringstream os;
    os << algo << "," << r << "," << (sc.grid ? fmt(sc.grid->r_com) : std::string("NA")) << ","
       << coverage_time(tr, plan.horizon()) << "," << wi_string(worst_idleness_windowed(tr)) << ","
       << plan.horizon() << "," << params << "\n";
    return os.str();
}

void add_plan_options(CLI::App* c, PlanArgs& a) {
    c->add_option("--algo", a.algo, "sh, shc, fh, tt or cmpstt")->check(CLI::IsMember({"sh", "shc", "fh", "tt", "cmpstt"}));
    c->add_option("--scenario", a.scenario, "scenario JSON")->required();
    c->add_option("--horizon", a.horizon, "time steps");
    c->add_option("--w0", a.w0, "weight on travel distance");
    c->add_option("--w1", a.w1, "weight on distance to other robots");
    c->add_option("--strategy", a.strategy, "tt: best or {early|late}-{far|near}");
    c->add_option("--parts", a.parts, "cmpstt: columns x rows");
    c->add_option("--inner", a.inner, "cmpstt: sh, shc or fh");
    c->add_option("--kappa", a.kappa, "shc: terminals per formation, 0 for all");
    c->add_flag("--stop-on-coverage", a.stop, "end the run once every sensing vertex was seen");
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::string tok;
    std::istringstream is(s);
    while (std::getline(is, tok, ',')) {
        auto dash = tok.find('-');
        try {
            if (dash != std::string::npos && dash > 0) {
                int lo = std::stoi(tok.substr(0, dash)), hi = std::stoi(tok.substr(dash + 1));
                for (int v = lo; v <= hi; ++v) out.push_back(v);
            } else {
                out.push_back(std::stoi(tok));
            }
        } catch (const std::logic_error&) {
            throw InputError("bad integer list '" + s + "'");
        }
    }
    return out;
}

std::string vertex_list(const GraphEnv& env, const std::vector<Vertex>& vs) {
    std::string s = "{";
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? " " : "") + env.name(vs[i]);
    return s + "}";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"connectivity-constrained persistent surveillance planner"};
    app.require_subcommand(1);

    PlanArgs pa;
    std::string trace_out, plan_out, summary_out;
    auto* plan_cmd = app.add_subcommand("plan", "run one planner and emit trace, plan and summary");
    add_plan_options(plan_cmd, pa);
    plan_cmd->add_option("--robots", pa.robots, "team size")->required();
    plan_cmd->add_option("--out", trace_out, "trace CSV (t,WI_t)");
    plan_cmd->add_option("--plan-out", plan_out, "replayable plan file");
    plan_cmd->add_option("--summary", summary_out, "summary CSV");

    std::string opt_algo = "sh", opt_scenario, opt_log, opt_timing, opt_parts;
    int opt_r = 0, opt_parallel = 1, opt_horizon = 3000;
    PatternSearchConfig pcfg;
    auto* opt_cmd = app.add_subcommand("optimize", "pattern search over the two weights, minimizing coverage time");
    opt_cmd->add_option("--algo", opt_algo)->check(CLI::IsMember({"sh", "shc"}));
    opt_cmd->add_option("--scenario", opt_scenario)->required();
    opt_cmd->add_option("--robots", opt_r)->required();
    opt_cmd->add_option("--t-o", pcfg.t_o, "optimization horizon");
    opt_cmd->add_option("--x0", pcfg.start_x);
    opt_cmd->add_option("--y0", pcfg.start_y);
    opt_cmd->add_option("--mesh-tol", pcfg.mesh_tolerance);
    opt_cmd->add_option("--parallel", opt_parallel, "concurrent poll evaluations");
    opt_cmd->add_option("--log", opt_log, "poll log CSV");
    opt_cmd->add_option("--timing", opt_timing, "wall time file");
    opt_cmd->add_option("--parts", opt_parts, "tune per robots-per-partition on a columns x rows split");
    opt_cmd->add_option("--horizon", opt_horizon, "with --parts: horizon of the planning pass that picks the robot counts");

    std::string reach_scenario;
    auto* reach_cmd = app.add_subcommand("reach", "traversability and minimum chain size per sensing vertex");
    reach_cmd->add_option("--scenario", reach_scenario)->required();

    std::string red_from, red_in, red_out, red_assign, red_cover, red_witness;
    auto* red_cmd = app.add_subcommand("reduce", "build a reduction instance");
    red_cmd->add_option("--from", red_from)
        ->required()
        ->check(CLI::IsMember({"3sat-cmps", "sc-cmr", "3sat-cmrd", "numpart-cmpstt"}));
    red_cmd->add_option("--in", red_in, "DIMACS cnf, set cover or integer list")->required();
    red_cmd->add_option("--out", red_out, "instance file")->required();
    red_cmd->add_option("--assignment", red_assign, "3sat: comma-separated 0/1 per variable");
    red_cmd->add_option("--cover", red_cover, "sc: comma-separated subset indices");
    red_cmd->add_option("--witness", red_witness, "witness plan file");

    std::string ver_scenario, ver_plan, ver_goal;
    int ver_period = 0;
    auto* ver_cmd = app.add_subcommand("verify", "replay a plan file: feasibility checks and metrics");
    ver_cmd->add_option("--scenario", ver_scenario)->required();
    ver_cmd->add_option("--plan", ver_plan)->required();
    ver_cmd->add_option("--period", ver_period, "claimed period");
    ver_cmd->add_option("--goal", ver_goal, "vertex name that must be reached");

    PlanArgs sa;
    std::string sw_algos = "sh,shc,fh", sw_robots = "8-26", sw_dir = ".";
    int sw_jobs = 1;
    auto* sw_cmd = app.add_subcommand("sweep", "grid of (planner, r) runs, one trace file per cell");
    add_plan_options(sw_cmd, sa);
    sw_cmd->add_option("--algos", sw_algos);
    sw_cmd->add_option("--robots", sw_robots, "list or range, e.g. 8-26");
    sw_cmd->add_option("--out-dir", sw_dir);
    sw_cmd->add_option("--jobs", sw_jobs);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        if (*plan_cmd) {
            Scenario sc = load_scenario(pa.scenario);
            PlanRun run = run_planner(sc, pa);
            IdlenessTrace tr = trace_plan(*sc.env, run.plan, true);
            std::string line = summary_line(sc, pa.algo, pa.robots, run.plan, tr, run.params);
            Outputs out;
            out.add(trace_out, trace_csv(tr));
            out.add(plan_out, plan_text(run.plan));
            out.add(summary_out, summary_header() + line);
            out.commit();
            std::cout << summary_header() << line;
            return kOk;
        }
        if (*opt_cmd) {
            Scenario sc = load_scenario(opt_scenario);
            if (opt_r < 1) throw InputError("--robots must be at least 1");
            pcfg.max_parallel_polls = std::max(1, opt_parallel);
            if (!opt_parts.empty()) {
                CmpsttConfig cfg;
                cfg.parts = parse_parts(*sc.env, opt_parts);
                cfg.inner = opt_algo == "sh" ? InnerPlanner::sh : InnerPlanner::shc;
                cfg.horizon = opt_horizon;
                auto pw = optimize_partition_weights(*sc.env, opt_r, cfg, pcfg);
                if (!pw.ok) throw Infeasible(pw.reason);
                std::ostringstream rows, timing;
                rows << "k,w0,w1,CT\n";
                timing << "k,seconds\n";
                for (const auto& [k, w] : pw.by_k) {
                    rows << k << "," << fmt(w.w0) << "," << fmt(w.w1) << "," << pw.ct_by_k.at(k) << "\n";
                    timing << k << "," << fmt(pw.seconds_by_k.at(k)) << "\n";
                }
                timing << "total," << fmt(pw.seconds) << "\n";
                Outputs out;
                out.add(opt_log, rows.str());
                out.add(opt_timing, timing.str());
                out.commit();
                std::cout << rows.str();
                return kOk;
            }
            auto res = optimize_weights(*sc.env, opt_algo == "sh" ? WeightedPlanner::sh : WeightedPlanner::shc,
                                        opt_r, pcfg);
            std::ostringstream log;
            log << "iteration,mesh,w0,w1,CT,accepted\n";
            for (const auto& p : res.search.log)
                log << p.iteration << "," << fmt(p.mesh) << "," << fmt(p.x) << "," << fmt(p.y) << ","
                    << (p.finite ? fmt(p.value) : std::string("inf")) << "," << (p.accepted ? 1 : 0) << "\n";
            Outputs out;
            out.add(opt_log, log.str());
            out.add(opt_timing, "seconds," + fmt(res.seconds) + "\n");
            out.commit();
            std::cout << "w0,w1,CT,evaluations\n"
                      << fmt(res.params.w0) << "," << fmt(res.params.w1) << "," << res.ct << ","
                      << res.search.log.size() << "\n";
            return kOk;
        }
        if (*reach_cmd) {
            Scenario sc = load_scenario(reach_scenario);
            const GraphEnv& env = *sc.env;
            auto tr = traverse(env);
            int marked = static_cast<int>(std::count(tr.marked.begin(), tr.marked.end(), 1));
            std::cout << "traverse," << (tr.traverse ? 1 : 0) << "\n"
                      << "marked," << marked << "\n"
                      << "vertex,chain\n";
            for (Vertex s : env.sensing()) {
                Hops h = env.dist(GraphSel::connectivity, env.base(), s);
                std::cout << env.name(s) << "," << (h ? std::to_string(*h) : std::string("unreachable")) << "\n";
            }
            return kOk;
        }
        if (*red_cmd) {
            std::string text = read_file(red_in);
            Outputs out;
            std::string report;
            auto bits = [&](int n) {
                std::vector<bool> a;
                for (int v : parse_int_list(red_assign)) a.push_back(v != 0);
                if (static_cast<int>(a.size()) != n)
                    throw InputError("--assignment needs " + std::to_string(n) + " values");
                return a;
            };
            if (red_from == "3sat-cmps" || red_from == "3sat-cmrd") {
                std::istringstream is(text);
                CnfFormula f = parse_dimacs(is);
                if (red_from == "3sat-cmps") {
                    auto inst = gen_cmps_from_3sat(f);
                    ScenarioExtras x;
                    x.robots = inst.r;
                    x.horizon = inst.T;
                    x.start = inst.p0;
                    out.add(red_out, scenario_json(inst.env, x));
                    report = "n," + std::to_string(inst.env.size()) + "\nr," + std::to_string(inst.r) + "\nT," +
                             std::to_string(inst.T) + "\n";
                    if (!red_assign.empty()) {
                        Plan p = encode_cmps_witness(inst, f, bits(f.num_vars));
                        PlanClaims cl;
                        cl.period = inst.T;
                        cl.start = inst.p0;
                        auto v = verify_plan(inst.env, p, cl);
                        report += std::string("witness,") + (v.ok ? "accepted" : "rejected") + "\n";
                        if (v.ok) report += "WI," + std::to_string(*v.wi) + "\n";
                        out.add(red_witness, plan_text(p));
                    }
                } else {
                    auto inst = gen_cmrd_from_3sat(f);
                    ScenarioExtras x;
                    x.robots = inst.r;
                    x.path = inst.path;
                    out.add(red_out, scenario_json(inst.env, x));
                    report = "n," + std::to_string(inst.env.size()) + "\nr," + std::to_string(inst.r) + "\n";
                    if (!red_assign.empty()) {
                        auto pl = cmrd_placement(inst, bits(f.num_vars));
                        bool ok = verify_relay_placement(inst.env, inst.path, pl);
                        report += "placement," + vertex_list(inst.env, pl) + "\nvalid," + (ok ? "1" : "0") + "\n";
                    }
                }
            } else if (red_from == "sc-cmr") {
                // "p sc <universe> <k>" then one subset per line, each ending in 0
                SetCoverInstance s;
                std::istringstream is(text);
                std::string line;
                int ln = 0;
                bool header = false;
                while (std::getline(is, line)) {
                    ++ln;
                    std::istringstream ls(line);
                    std::string tok;
                    if (!(ls >> tok) || tok == "c") continue;
                    if (tok == "p") {
                        std::string kind;
                        if (!(ls >> kind >> s.universe >> s.k) || kind != "sc")
                            throw InputError("line " + std::to_string(ln) + ": bad problem line");
                        header = true;
                        continue;
                    }
                    if (!header) throw InputError("line " + std::to_string(ln) + ": subset before 'p sc' line");
                    ls.clear();
                    ls.str(line);
                    std::vector<int> sub;
                    int e;
                    while (ls >> e && e != 0) sub.push_back(e);
                    s.family.push_back(sub);
                }
                auto inst = gen_cmr_from_sc(s);
                ScenarioExtras x;
                x.robots = inst.r;
                x.horizon = inst.T;
                x.goal = inst.goal;
                out.add(red_out, scenario_json(inst.env, x));
                report = "n," + std::to_string(inst.env.size()) + "\nr," + std::to_string(inst.r) + "\nT," +
                         std::to_string(inst.T) + "\n";
                if (!red_cover.empty()) {
                    Plan p = encode_cmr_witness(inst, s, parse_int_list(red_cover));
                    PlanClaims cl;
                    cl.goal = inst.goal;
                    auto v = verify_plan(inst.env, p, cl);
                    report += std::string("witness,") + (v.ok ? "accepted" : "rejected") + "\n";
                    if (v.ok) report += "goal_time," + std::to_string(v.goal_time) + "\n";
                    out.add(red_witness, plan_text(p));
                }
            } else {
                std::vector<int> s;
                std::istringstream is(text);
                std::string tok;
                while (is >> tok) {
                    try {
                        s.push_back(std::stoi(tok));
                    } catch (const std::logic_error&) {
                        throw InputError("bad integer '" + tok + "'");
                    }
                }
                auto inst = gen_cmpstt_from_partition(s);
                out.add(red_out, partition_tree_json(inst.tree, inst.r, inst.T, 1));
                auto search = search_split_plan(inst.tree, inst.r);
                report = "r," + std::to_string(inst.r) + "\nT," + std::to_string(inst.T) + "\n";
                report += "best_WI," + (search.feasible ? std::to_string(search.eval.wi) : std::string("none")) + "\n";
                if (search.feasible) report += "splitting," + split_plan_string(inst.tree, search.plan) + "\n";
            }
            out.commit();
            std::cout << report;
            return kOk;
        }
        if (*ver_cmd) {
            Scenario sc = load_scenario(ver_scenario);
            const GraphEnv& env = *sc.env;
            std::ifstream pf(ver_plan);
            if (!pf) throw InputError("cannot open " + ver_plan);
            Plan plan = parse_plan(pf);
            if (plan.env_hash != env.hash()) throw InputError("plan was made for a different environment");
            PlanClaims cl;
            if (ver_period > 0) cl.period = ver_period;
            if (!ver_goal.empty()) {
                Vertex g = env.find(ver_goal);
                if (g < 0) throw InputError("unknown goal vertex '" + ver_goal + "'");
                cl.goal = g;
            }
            auto v = verify_plan(env, plan, cl);
            if (!v.ok) {
                const auto& x = *v.violation;
                std::cout << "verdict,rejected\nt," << x.t << "\nrobot," << x.robot << "\nrule," << x.rule
                          << "\ndetail," << x.detail << "\n";
                return kInfeasible;
            }
            auto tr = trace_plan(env, plan, false);
            std::vector<Vertex> vis;
            for (Vertex x : v.visited)
                if (x != env.base()) vis.push_back(x);
            std::cout << "verdict,accepted\nCT," << coverage_time(tr, plan.horizon()) << "\nWI,"
                      << wi_string(worst_idleness_windowed(tr)) << "\nvisited," << vertex_list(env, vis) << "\n";
            if (v.wi) std::cout << "periodic_WI," << *v.wi << "\n";
            if (v.goal_time >= 0) std::cout << "goal_time," << v.goal_time << "\n";
            return kOk;
        }
        if (*sw_cmd) {
            Scenario sc = load_scenario(sa.scenario);
            std::vector<std::string> algos;
            {
                std::istringstream is(sw_algos);
                std::string a;
                while (std::getline(is, a, ',')) algos.push_back(a);
            }
            auto rs = parse_int_list(sw_robots);
            struct Cell {
                std::string algo;
                int r;
                std::string line, trace;
                int code = kOk;
            };
            std::vector<Cell> cells;
            for (const auto& a : algos)
                for (int r : rs) cells.push_back({a, r, "", "", kOk});
            auto work = [&](Cell& c) {
                PlanArgs a = sa;
                a.algo = c.algo;
                a.robots = c.r;
                try {
                    PlanRun run = run_planner(sc, a);
                    IdlenessTrace tr = trace_plan(*sc.env, run.plan, true);
                    c.line = summary_line(sc, c.algo, c.r, run.plan, tr, run.params);
                    c.trace = trace_csv(tr);
                } catch (const Infeasible& e) {
                    c.line = c.algo + "," + std::to_string(c.r) + "," +
                             (sc.grid ? fmt(sc.grid->r_com) : std::string("NA")) + ",NA,NA," +
                             std::to_string(a.horizon) + ",infeasible\n";
                    c.code = kInfeasible;
                }
            };
            std::size_t next = 0;
            int jobs = std::max(1, sw_jobs);
            while (next < cells.size()) {
                std::vector<std::future<void>> fs;
                for (int j = 0; j < jobs && next < cells.size(); ++j, ++next)
                    fs.push_back(std::async(std::launch::async, work, std::ref(cells[next])));
                for (auto& f : fs) f.get();
            }
            std::filesystem::path dir(sw_dir);
            std::filesystem::create_directories(out_path(sw_dir));
            Outputs out;
            std::string table = summary_header();
            for (const auto& c : cells) {
                table += c.line;
                if (c.code == kOk) out.add((dir / (c.algo + "_r" + std::to_string(c.r) + ".csv")).string(), c.trace);
            }
            out.add((dir / "summary.csv").string(), table);
            out.commit();
            std::cout << table;
            return kOk;
        }
    } catch (const Infeasible& e) {
        std::cerr << "error: infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const InputError& e) {
        std::cerr << "error: invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const ReductionError& e) {
        std::cerr << "error: invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const EnvError& e) {
        std::cerr << "error: invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: invalid input: " << e.what() << "\n";
        return kInvalid;
    }
    return kOk;
}
