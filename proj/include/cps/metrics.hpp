#pragma once

#include <variant>
#include <vector>

#include "cps/env.hpp"

namespace cps {

class IdlenessTrace {
  public:
    explicit IdlenessTrace(const GraphEnv& env, bool keep_series = true);

    // t must be previous t + 1, or 0 for the first call
    void record_step(const Configuration& c, int t);

    int last_step() const { return last_t_; }
    int idleness(Vertex v) const;  // I_t(v) at the last recorded step
    int instantaneous_worst() const;
    bool all_visited() const { return unvisited_ == 0; }
    int covered_at() const { return covered_at_; }  // -1 until every sensing vertex was seen

    const std::vector<Vertex>& sensing() const { return sensing_; }
    const std::vector<int>& visits(int sensing_idx) const { return visits_[sensing_idx]; }
    const std::vector<int>& series() const { return series_; }  // WI_t per recorded step
    const std::vector<int>& last_visit() const { return last_; }  // by sensing index

  private:
    const GraphEnv* env_;
    std::vector<Vertex> sensing_;
    std::vector<std::vector<int>> visits_;
    std::vector<int> last_;  // last visit, 0 before the first one
    std::vector<int> stamp_;
    std::vector<int> series_;
    bool keep_series_;
    int last_t_ = -1;
    int unvisited_ = 0;
    int covered_at_ = -1;
};

struct InsufficientVisits {
    Vertex vertex;
    int visits;
};

using WindowedWI = std::variant<int, InsufficientVisits>;

WindowedWI worst_idleness_windowed(const IdlenessTrace& trace);
int coverage_time(const IdlenessTrace& trace, int t_o);

// plain helpers on visit lists, shared with tests
WindowedWI windowed_from_visits(const std::vector<Vertex>& sensing, const std::vector<std::vector<int>>& visits);

IdlenessTrace trace_plan(const GraphEnv& env, const Plan& plan, bool keep_series = true);

}  // namespace cps
