#include "cps/metrics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cps {

IdlenessTrace::IdlenessTrace(const GraphEnv& env, bool keep_series)
    : env_(&env), sensing_(env.sensing()), keep_series_(keep_series) {
    visits_.resize(sensing_.size());
    last_.assign(sensing_.size(), 0);
    stamp_.assign(sensing_.size(), -1);
    unvisited_ = static_cast<int>(sensing_.size());
    if (unvisited_ == 0) covered_at_ = 0;
}

void IdlenessTrace::record_step(const Configuration& c, int t) {
    if (t != last_t_ + 1)
        throw std::logic_error("record_step out of sequence: got t=" + std::to_string(t) + " after " +
                               std::to_string(last_t_));
    last_t_ = t;
    for (Vertex v : c) {
        int k = env_->sensing_index(v);
        if (k < 0 || stamp_[k] == t) continue;
        stamp_[k] = t;
        if (visits_[k].empty() && --unvisited_ == 0) covered_at_ = t;
        visits_[k].push_back(t);
        last_[k] = t;
    }
    if (keep_series_) series_.push_back(instantaneous_worst());
}

int IdlenessTrace::idleness(Vertex v) const {
    int k = env_->sensing_index(v);
    if (k < 0) return 0;
    return std::max(last_t_, 0) - last_[k];
}

int IdlenessTrace::instantaneous_worst() const {
    int t = std::max(last_t_, 0), w = 0;
    for (int l : last_) w = std::max(w, t - l);
    return w;
}

WindowedWI windowed_from_visits(const std::vector<Vertex>& sensing, const std::vector<std::vector<int>>& visits) {
    int worst = 0;
    for (std::size_t k = 0; k < sensing.size(); ++k) {
        const auto& v = visits[k];
        if (v.size() < 2) return InsufficientVisits{sensing[k], static_cast<int>(v.size())};
        for (std::size_t i = 1; i < v.size(); ++i) worst = std::max(worst, v[i] - v[i - 1]);
    }
    return worst;
}

WindowedWI worst_idleness_windowed(const IdlenessTrace& trace) {
    std::vector<std::vector<int>> all;
    all.reserve(trace.sensing().size());
    for (std::size_t k = 0; k < trace.sensing().size(); ++k) all.push_back(trace.visits(static_cast<int>(k)));
    return windowed_from_visits(trace.sensing(), all);
}

int coverage_time(const IdlenessTrace& trace, int t_o) {
    int c = trace.covered_at();
    if (c < 0 || c > t_o) return t_o;
    return c;
}

IdlenessTrace trace_plan(const GraphEnv& env, const Plan& plan, bool keep_series) {
    IdlenessTrace tr(env, keep_series);
    for (std::size_t t = 0; t < plan.steps.size(); ++t) tr.record_step(plan.steps[t], static_cast<int>(t));
    return tr;
}

}  // namespace cps
