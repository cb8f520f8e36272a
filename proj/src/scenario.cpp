#include "cps/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace cps {

using nlohmann::json;

namespace {

Cell cell_of(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw InputError(std::string(what) + ": expected [x, y]");
    return {j[0].get<int>(), j[1].get<int>()};
}

struct Names {
    std::vector<std::string> names;
    int n = 0;

    Vertex operator()(const json& j, const char* what) const {
        if (j.is_number_integer()) {
            int v = j.get<int>();
            if (v < 0 || v >= n) throw InputError(std::string(what) + ": vertex " + std::to_string(v) + " out of range");
            return v;
        }
        if (j.is_string()) {
            for (int v = 0; v < static_cast<int>(names.size()); ++v)
                if (names[v] == j.get<std::string>()) return v;
            throw InputError(std::string(what) + ": unknown vertex '" + j.get<std::string>() + "'");
        }
        throw InputError(std::string(what) + ": vertex must be an id or a name");
    }
};

std::vector<Edge> edges_of(const json& j, const Names& nm, const char* what) {
    std::vector<Edge> out;
    if (!j.is_array()) throw InputError(std::string(what) + " must be a list");
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) throw InputError(std::string(what) + ": expected pairs");
        out.emplace_back(nm(e[0], what), nm(e[1], what));
    }
    return out;
}

void read_extras(const json& root, const Names& nm, ScenarioExtras& x) {
    if (!root.contains("instance")) return;
    const auto& in = root["instance"];
    if (in.contains("robots")) x.robots = in["robots"].get<int>();
    if (in.contains("horizon")) x.horizon = in["horizon"].get<int>();
    if (in.contains("start")) {
        Configuration c;
        for (const auto& v : in["start"]) c.push_back(nm(v, "instance.start"));
        x.start = c;
    }
    if (in.contains("goal")) x.goal = nm(in["goal"], "instance.goal");
    if (in.contains("path"))
        for (const auto& v : in["path"]) x.path.push_back(nm(v, "instance.path"));
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("scenario is not valid JSON: ") + e.what());
    }
    Scenario sc;
    try {
        if (root.contains("grid")) {
            const auto& g = root["grid"];
            GridSpec spec;
            spec.width = g.at("width").get<int>();
            spec.height = g.at("height").get<int>();
            spec.base_cell = g.contains("base") ? cell_of(g["base"], "grid.base") : Cell{1, 1};
            spec.r_com = g.at("r_com").get<double>();
            const auto& s = g.at("sensing");
            if (s.is_string()) {
                if (s.get<std::string>() != "all") throw InputError("grid.sensing: expected \"all\" or a cell list");
                spec.all_sensing = true;
            } else {
                for (const auto& c : s) spec.sensing_cells.push_back(cell_of(c, "grid.sensing"));
            }
            sc.env = std::make_shared<GraphEnv>(build_grid_env(spec));
            sc.grid = spec;
        } else if (root.contains("graph")) {
            const auto& g = root["graph"];
            Names nm;
            const auto& vs = g.at("vertices");
            if (vs.is_number_integer()) {
                nm.n = vs.get<int>();
            } else {
                for (const auto& v : vs) nm.names.push_back(v.get<std::string>());
                nm.n = static_cast<int>(nm.names.size());
            }
            if (nm.n < 1) throw InputError("graph.vertices: need at least one vertex");
            auto em = edges_of(g.at("movement_edges"), nm, "graph.movement_edges");
            auto ec = edges_of(g.at("connectivity_edges"), nm, "graph.connectivity_edges");
            Vertex base = nm(g.at("base"), "graph.base");
            std::vector<Vertex> sensing;
            const auto& s = g.at("sensing");
            if (s.is_string() && s.get<std::string>() == "all") {
                for (int v = 0; v < nm.n; ++v) sensing.push_back(v);
            } else {
                for (const auto& v : s) sensing.push_back(nm(v, "graph.sensing"));
            }
            sc.env = std::make_shared<GraphEnv>(nm.n, em, ec, base, sensing, nm.names);
            read_extras(root, nm, sc.extras);
        } else {
            throw InputError("scenario needs a \"grid\" or a \"graph\" object");
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("scenario: ") + e.what());
    } catch (const EnvError& e) {
        throw InputError(std::string("scenario: ") + e.what());
    }
    return sc;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Scenario load_scenario(const std::string& path) { return parse_scenario(read_file(path)); }

std::string scenario_json(const GraphEnv& env, const ScenarioExtras& x) {
    json g;
    std::vector<std::string> names;
    for (Vertex v = 0; v < env.size(); ++v) names.push_back(env.name(v));
    g["vertices"] = names;
    auto edges = [&](GraphSel s) {
        json a = json::array();
        for (auto [p, q] : env.edges(s)) a.push_back({names[p], names[q]});
        return a;
    };
    g["movement_edges"] = edges(GraphSel::movement);
    g["connectivity_edges"] = edges(GraphSel::connectivity);
    g["base"] = names[env.base()];
    json s = json::array();
    for (Vertex v : env.sensing()) s.push_back(names[v]);
    g["sensing"] = s;
    json root;
    root["graph"] = g;
    json in = json::object();
    if (x.robots) in["robots"] = *x.robots;
    if (x.horizon) in["horizon"] = *x.horizon;
    if (x.start) {
        json a = json::array();
        for (Vertex v : *x.start) a.push_back(names[v]);
        in["start"] = a;
    }
    if (x.goal) in["goal"] = names[*x.goal];
    if (!x.path.empty()) {
        json a = json::array();
        for (Vertex v : x.path) a.push_back(names[v]);
        in["path"] = a;
    }
    if (!in.empty()) root["instance"] = in;
    return root.dump(2) + "\n";
}

std::string partition_tree_json(const PartitionTree& tree, int robots, int horizon, int max_k) {
    json nodes = json::array();
    for (int p = 0; p < tree.size(); ++p) {
        json nd;
        nd["name"] = tree.name[p];
        nd["parent"] = tree.parent[p];
        nd["A"] = tree.A[p];
        nd["B"] = tree.B[p];
        nd["Delta"] = tree.Delta[p];
        nd["sensing"] = tree.has_sensing[p] != 0;
        json gm = json::array();
        for (int k = 1; k <= std::max(1, max_k); ++k) gm.push_back(tree.gamma ? tree.gamma(p, k) : 0);
        nd["gamma"] = gm;
        nodes.push_back(nd);
    }
    json root;
    root["partition_tree"] = {{"nodes", nodes}, {"robots", robots}, {"horizon", horizon}};
    return root.dump(2) + "\n";
}

PartitionTreeFile parse_partition_tree(const std::string& text) {
    PartitionTreeFile out;
    try {
        json root = json::parse(text);
        const auto& pt = root.at("partition_tree");
        for (const auto& nd : pt.at("nodes")) {
            int par = nd.at("parent").get<int>();
            if (par >= out.tree.size()) throw InputError("partition_tree: parent must precede its children");
            out.tree.add(nd.at("name").get<std::string>(), par, nd.at("A").get<int>(), nd.at("B").get<int>(),
                         nd.at("Delta").get<int>(), nd.at("sensing").get<bool>());
            out.gamma.push_back(nd.at("gamma").get<std::vector<int>>());
            if (out.gamma.back().empty()) throw InputError("partition_tree: empty gamma list");
        }
        out.robots = pt.at("robots").get<int>();
        out.horizon = pt.value("horizon", 0);
    } catch (const json::exception& e) {
        throw InputError(std::string("partition tree: ") + e.what());
    }
    auto g = out.gamma;
    out.tree.gamma = [g](int p, int k) {
        const auto& row = g[p];
        return row[std::clamp(k, 1, static_cast<int>(row.size())) - 1];
    };
    return out;
}

std::string plan_text(const Plan& plan) {
    std::ostringstream os;
    os << "env_hash " << std::hex << std::setw(16) << std::setfill('0') << plan.env_hash << std::dec << "\n";
    os << "robots " << plan.robots() << "\n";
    os << "horizon " << plan.horizon() << "\n";
    for (const auto& c : plan.steps) {
        for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
        os << "\n";
    }
    return os.str();
}

Plan parse_plan(std::istream& in) {
    Plan plan;
    std::string line;
    int line_no = 0, robots = -1, horizon = -1;
    bool have_hash = false;
    auto fail = [&](const std::string& m) { throw InputError("plan line " + std::to_string(line_no) + ": " + m); };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        if (std::isalpha(static_cast<unsigned char>(line[0]))) {
            std::string key, val;
            if (!(ls >> key >> val)) fail("malformed header");
            try {
                if (key == "env_hash") {
                    plan.env_hash = std::stoull(val, nullptr, 16);
                    have_hash = true;
                } else if (key == "robots") {
                    robots = std::stoi(val);
                } else if (key == "horizon") {
                    horizon = std::stoi(val);
                } else {
                    fail("unknown header '" + key + "'");
                }
            } catch (const std::logic_error&) {
                fail("bad value for '" + key + "'");
            }
            continue;
        }
        Configuration c;
        std::string tok;
        while (std::getline(ls, tok, ',')) {
            try {
                std::size_t used = 0;
                int v = std::stoi(tok, &used);
                while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
                if (used != tok.size()) fail("bad vertex id '" + tok + "'");
                c.push_back(v);
            } catch (const std::logic_error&) {
                fail("bad vertex id '" + tok + "'");
            }
        }
        if (robots >= 0 && static_cast<int>(c.size()) != robots)
            fail("expected " + std::to_string(robots) + " positions, got " + std::to_string(c.size()));
        plan.steps.push_back(std::move(c));
    }
    if (!have_hash) throw InputError("plan: missing env_hash header");
    if (plan.steps.empty()) throw InputError("plan: no steps");
    if (horizon >= 0 && horizon != plan.horizon())
        throw InputError("plan: header horizon " + std::to_string(horizon) + " but " +
                         std::to_string(plan.horizon()) + " steps follow");
    return plan;
}

}  // namespace cps
