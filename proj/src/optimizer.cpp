#include "cps/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <stdexcept>

namespace cps {

SearchResult pattern_search(const Objective& f, const PatternSearchConfig& cfg) {
    if (!(cfg.expand_factor > 1.0) || !(cfg.contract_factor > 0.0 && cfg.contract_factor < 1.0) ||
        !(cfg.mesh_tolerance > 0.0) || !(cfg.initial_mesh > 0.0))
        throw std::invalid_argument("pattern search: bad mesh constants");
    SearchResult res;
    auto eval = [&](double x, double y) {
        double v = f(x, y);
        return v;
    };
    double x = cfg.start_x, y = cfg.start_y, best = eval(x, y);
    if (!std::isfinite(best)) best = HUGE_VAL;
    res.log.push_back({0, cfg.initial_mesh, x, y, best, std::isfinite(best), true});
    double mesh = cfg.initial_mesh;
    const double dx[4] = {1, 0, -1, 0}, dy[4] = {0, 1, 0, -1};
    int it = 0;
    while (mesh >= cfg.mesh_tolerance) {
        ++it;
        double px[4], py[4], val[4];
        for (int k = 0; k < 4; ++k) px[k] = x + mesh * dx[k], py[k] = y + mesh * dy[k];
        if (cfg.max_parallel_polls > 1) {
            std::future<double> fut[4];
            int width = std::min(cfg.max_parallel_polls, 4);
            for (int lo = 0; lo < 4; lo += width) {
                int hi = std::min(4, lo + width);
                for (int k = lo; k < hi; ++k) fut[k] = std::async(std::launch::async, eval, px[k], py[k]);
                for (int k = lo; k < hi; ++k) val[k] = fut[k].get();
            }
        } else {
            for (int k = 0; k < 4; ++k) val[k] = eval(px[k], py[k]);
        }
        int win = -1;
        for (int k = 0; k < 4; ++k) {
            bool fin = std::isfinite(val[k]);
            if (fin && val[k] < best && (win < 0 || val[k] < val[win])) win = k;
        }
        for (int k = 0; k < 4; ++k)
            res.log.push_back({it, mesh, px[k], py[k], val[k], static_cast<bool>(std::isfinite(val[k])), k == win});
        if (win >= 0) {
            x = px[win];
            y = py[win];
            best = val[win];
            mesh *= cfg.expand_factor;
        } else {
            mesh *= cfg.contract_factor;
        }
    }
    res.x = x;
    res.y = y;
    res.value = best;
    res.iterations = it;
    return res;
}

int coverage_objective(const GraphEnv& env, WeightedPlanner planner, int r, const WeightParams& w, int t_o) {
    Plan p;
    if (planner == WeightedPlanner::sh) {
        p = plan_sh(env, r, RunLimits{t_o, true}, w);
    } else {
        ShcConfig c;
        c.horizon = t_o;
        c.stop_on_coverage = true;
        p = plan_shc(env, r, c, w);
    }
    return coverage_time(trace_plan(env, p, false), t_o);
}

WeightResult optimize_weights(const GraphEnv& env, WeightedPlanner planner, int r, const PatternSearchConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    WeightResult out;
    out.search = pattern_search(
        [&](double a, double b) { return static_cast<double>(coverage_objective(env, planner, r, {a, b}, cfg.t_o)); },
        cfg);
    out.params = {out.search.x, out.search.y};
    out.ct = static_cast<int>(out.search.value);
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace cps
