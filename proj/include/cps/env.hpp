#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cps {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;
using Configuration = std::vector<Vertex>;  // index = robot id
using Hops = std::optional<int>;            // nullopt = unreachable

enum class GraphSel { movement, connectivity };

struct Cell {
    int x = 1, y = 1;
    bool operator==(const Cell&) const = default;
};

struct GridSpec {
    int width = 1, height = 1;
    Cell base_cell{1, 1};
    std::vector<Cell> sensing_cells;  // empty + all_sensing => every cell
    bool all_sensing = false;
    double r_com = 1.0;
};

struct GridGeom {
    int width = 0, height = 0;
    double r_com = 0;
    Vertex id(int x, int y) const { return (y - 1) * width + (x - 1); }
    Vertex id(Cell c) const { return id(c.x, c.y); }
    Cell cell(Vertex v) const { return {v % width + 1, v / width + 1}; }
    bool inside(int x, int y) const { return x >= 1 && y >= 1 && x <= width && y <= height; }
};

class EnvError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class GraphEnv {
  public:
    GraphEnv(int n, std::vector<Edge> movement, std::vector<Edge> connectivity, Vertex base,
             std::vector<Vertex> sensing, std::vector<std::string> names = {});

    int size() const { return n_; }
    Vertex base() const { return base_; }
    const std::vector<Vertex>& sensing() const { return sensing_; }
    bool is_sensing(Vertex v) const { return sensing_index_[v] >= 0; }
    int sensing_index(Vertex v) const { return sensing_index_[v]; }
    bool valid(Vertex v) const { return v >= 0 && v < n_; }

    const std::vector<Vertex>& neighbors(GraphSel g, Vertex v) const { return adj_[idx(g)][v]; }
    bool adjacent(GraphSel g, Vertex a, Vertex b) const;
    const std::vector<Edge>& edges(GraphSel g) const { return edges_[idx(g)]; }

    Hops dist(GraphSel g, Vertex s, Vertex d) const;
    // hop counts from s, -1 where unreachable; cached per source
    const std::vector<int>& bfs_row(GraphSel g, Vertex s) const;

    const std::optional<GridGeom>& grid() const { return grid_; }
    void set_grid(GridGeom g) { grid_ = g; }
    std::string name(Vertex v) const;
    Vertex find(const std::string& name) const;  // -1 if absent
    std::uint64_t hash() const;

  private:
    static int idx(GraphSel g) { return g == GraphSel::movement ? 0 : 1; }
    void build_row(int g, Vertex s) const;

    int n_;
    Vertex base_;
    std::vector<Vertex> sensing_;
    std::vector<int> sensing_index_;
    std::vector<std::string> names_;
    std::vector<Edge> edges_[2];
    std::vector<std::vector<Vertex>> adj_[2];
    std::vector<std::uint64_t> bits_[2];
    std::optional<GridGeom> grid_;

    struct Table {
        std::unique_ptr<std::once_flag[]> once;
        std::vector<std::vector<int>> d;  // -1 internally for unreachable
    };
    std::unique_ptr<Table> tables_[2];
};

GraphEnv build_grid_env(const GridSpec& spec);

// N(v) ∪ {v}, sorted by id
std::vector<Vertex> movement_neighbors(const GraphEnv& env, Vertex v);

bool is_connected_config(const GraphEnv& env, const Configuration& c);
// same check over an explicit vertex list (base is added)
bool is_connected_set(const GraphEnv& env, const Vertex* vs, std::size_t k);

Hops dist(const GraphEnv& env, GraphSel g, Vertex s, Vertex d);

struct Plan {
    std::vector<Configuration> steps;
    std::uint64_t env_hash = 0;
    int robots() const { return steps.empty() ? 0 : static_cast<int>(steps.front().size()); }
    int horizon() const { return static_cast<int>(steps.size()) - 1; }
};

}  // namespace cps
