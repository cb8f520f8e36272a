#include "cps/env.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace cps {

namespace {

constexpr int kBitLimit = 20000;

std::vector<Edge> normalise(std::vector<Edge> es, int n, const char* what) {
    for (auto& e : es) {
        if (e.first < 0 || e.first >= n || e.second < 0 || e.second >= n)
            throw EnvError(std::string(what) + " edge endpoint out of range: " + std::to_string(e.first) +
                           "-" + std::to_string(e.second));
        if (e.first == e.second)
            throw EnvError(std::string(what) + " self-loop at vertex " + std::to_string(e.first));
        if (e.first > e.second) std::swap(e.first, e.second);
    }
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    return es;
}

}  // namespace

GraphEnv::GraphEnv(int n, std::vector<Edge> movement, std::vector<Edge> connectivity, Vertex base,
                   std::vector<Vertex> sensing, std::vector<std::string> names)
    : n_(n), base_(base), names_(std::move(names)) {
    if (n < 1) throw EnvError("environment needs at least one vertex");
    if (base < 0 || base >= n) throw EnvError("base vertex out of range: " + std::to_string(base));
    edges_[0] = normalise(std::move(movement), n, "movement");
    edges_[1] = normalise(std::move(connectivity), n, "connectivity");
    sensing_index_.assign(n, -1);
    std::sort(sensing.begin(), sensing.end());
    sensing.erase(std::unique(sensing.begin(), sensing.end()), sensing.end());
    for (Vertex v : sensing) {
        if (v < 0 || v >= n) throw EnvError("sensing vertex out of range: " + std::to_string(v));
        sensing_index_[v] = static_cast<int>(sensing_.size());
        sensing_.push_back(v);
    }
    if (!names_.empty() && static_cast<int>(names_.size()) != n)
        throw EnvError("vertex name list has wrong length");
    for (int g = 0; g < 2; ++g) {
        adj_[g].assign(n, {});
        for (auto [a, b] : edges_[g]) {
            adj_[g][a].push_back(b);
            adj_[g][b].push_back(a);
        }
        for (auto& l : adj_[g]) std::sort(l.begin(), l.end());
        if (n <= kBitLimit) {
            std::size_t words = (static_cast<std::size_t>(n) * n + 63) / 64;
            bits_[g].assign(words, 0);
            for (auto [a, b] : edges_[g]) {
                std::size_t i = static_cast<std::size_t>(a) * n + b, j = static_cast<std::size_t>(b) * n + a;
                bits_[g][i >> 6] |= 1ULL << (i & 63);
                bits_[g][j >> 6] |= 1ULL << (j & 63);
            }
        }
        tables_[g] = std::make_unique<Table>();
        tables_[g]->once = std::make_unique<std::once_flag[]>(n);
        tables_[g]->d.resize(n);
    }
}

bool GraphEnv::adjacent(GraphSel g, Vertex a, Vertex b) const {
    int k = idx(g);
    if (!bits_[k].empty()) {
        std::size_t i = static_cast<std::size_t>(a) * n_ + b;
        return (bits_[k][i >> 6] >> (i & 63)) & 1ULL;
    }
    const auto& l = adj_[k][a];
    return std::binary_search(l.begin(), l.end(), b);
}

void GraphEnv::build_row(int g, Vertex s) const {
    std::vector<int> d(n_, -1);
    std::deque<Vertex> q{s};
    d[s] = 0;
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop_front();
        for (Vertex w : adj_[g][u])
            if (d[w] < 0) {
                d[w] = d[u] + 1;
                q.push_back(w);
            }
    }
    tables_[g]->d[s] = std::move(d);
}

const std::vector<int>& GraphEnv::bfs_row(GraphSel sel, Vertex s) const {
    int g = idx(sel);
    if (s < 0 || s >= n_) throw EnvError("unknown vertex " + std::to_string(s));
    std::call_once(tables_[g]->once[s], [&] { build_row(g, s); });
    return tables_[g]->d[s];
}

Hops GraphEnv::dist(GraphSel g, Vertex s, Vertex d) const {
    if (d < 0 || d >= n_) throw EnvError("unknown vertex " + std::to_string(d));
    int h = bfs_row(g, s)[d];
    if (h < 0) return std::nullopt;
    return h;
}

std::string GraphEnv::name(Vertex v) const {
    if (!names_.empty()) return names_[v];
    if (grid_) {
        Cell c = grid_->cell(v);
        return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
    }
    return std::to_string(v);
}

Vertex GraphEnv::find(const std::string& nm) const {
    for (int v = 0; v < n_; ++v)
        if (name(v) == nm) return v;
    return -1;
}

std::uint64_t GraphEnv::hash() const {
    // FNV-1a over the canonical edge lists
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    mix(n_);
    mix(base_);
    for (int g = 0; g < 2; ++g) {
        mix(edges_[g].size());
        for (auto [a, b] : edges_[g]) mix((static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b));
    }
    mix(sensing_.size());
    for (Vertex v : sensing_) mix(v);
    return h;
}

GraphEnv build_grid_env(const GridSpec& spec) {
    if (spec.width < 1 || spec.height < 1) throw EnvError("grid dimensions must be positive");
    if (!(spec.r_com > 0) || !std::isfinite(spec.r_com)) throw EnvError("r_com must be positive");
    GridGeom geo{spec.width, spec.height, spec.r_com};
    auto check = [&](Cell c) {
        if (!geo.inside(c.x, c.y))
            throw EnvError("cell (" + std::to_string(c.x) + "," + std::to_string(c.y) + ") outside " +
                           std::to_string(spec.width) + "x" + std::to_string(spec.height) + " grid");
    };
    check(spec.base_cell);
    for (Cell c : spec.sensing_cells) check(c);

    int n = spec.width * spec.height;
    std::vector<Edge> em, ec;
    int reach = static_cast<int>(std::floor(spec.r_com + 1e-9));
    double r2 = spec.r_com * spec.r_com + 1e-9;
    for (int y = 1; y <= spec.height; ++y)
        for (int x = 1; x <= spec.width; ++x) {
            Vertex a = geo.id(x, y);
            for (int dy = 0; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dy == 0 && dx <= 0) continue;
                    if (geo.inside(x + dx, y + dy)) em.emplace_back(a, geo.id(x + dx, y + dy));
                }
            for (int dy = 0; dy <= reach; ++dy)
                for (int dx = -reach; dx <= reach; ++dx) {
                    if (dy == 0 && dx <= 0) continue;
                    if (!geo.inside(x + dx, y + dy)) continue;
                    if (dx * dx + dy * dy <= r2) ec.emplace_back(a, geo.id(x + dx, y + dy));
                }
        }
    std::vector<Vertex> sens;
    if (spec.all_sensing) {
        sens.resize(n);
        std::iota(sens.begin(), sens.end(), 0);
    } else {
        for (Cell c : spec.sensing_cells) sens.push_back(geo.id(c));
    }
    GraphEnv env(n, std::move(em), std::move(ec), geo.id(spec.base_cell), std::move(sens));
    env.set_grid(geo);
    return env;
}

std::vector<Vertex> movement_neighbors(const GraphEnv& env, Vertex v) {
    if (!env.valid(v)) throw EnvError("unknown vertex " + std::to_string(v));
    std::vector<Vertex> out = env.neighbors(GraphSel::movement, v);
    out.insert(std::lower_bound(out.begin(), out.end(), v), v);
    return out;
}

bool is_connected_set(const GraphEnv& env, const Vertex* vs, std::size_t k) {
    // distinct vertices plus base; flood from base with pairwise adjacency tests
    Vertex buf[64];
    std::vector<Vertex> big;
    Vertex* nodes = buf;
    if (k + 1 > 64) {
        big.resize(k + 1);
        nodes = big.data();
    }
    std::size_t m = 0;
    nodes[m++] = env.base();
    for (std::size_t i = 0; i < k; ++i) {
        bool seen = false;
        for (std::size_t j = 0; j < m; ++j)
            if (nodes[j] == vs[i]) {
                seen = true;
                break;
            }
        if (!seen) nodes[m++] = vs[i];
    }
    std::size_t reached = 1;  // nodes[0..reached) are connected to base
    for (std::size_t head = 0; head < reached; ++head) {
        for (std::size_t j = reached; j < m; ++j) {
            if (env.adjacent(GraphSel::connectivity, nodes[head], nodes[j])) {
                std::swap(nodes[j], nodes[reached]);
                ++reached;
            }
        }
    }
    return reached == m;
}

bool is_connected_config(const GraphEnv& env, const Configuration& c) {
    return is_connected_set(env, c.data(), c.size());
}

Hops dist(const GraphEnv& env, GraphSel g, Vertex s, Vertex d) { return env.dist(g, s, d); }

}  // namespace cps
