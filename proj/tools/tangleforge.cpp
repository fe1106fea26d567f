// tangleforge command-line tool: reads a graph (JSON document, graph6 or edge list) from
// standard input or --input, runs one pipeline step, and writes JSON (or DOT / graph6).
// Exit status: 0 success, 1 invalid input or property violation, 2 resource limit.
#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tangleforge/tangleforge.hpp"

using namespace tangleforge;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "tangleforge/1";

struct Options {
    std::string format = "json";
    std::string input;
    long long budget = kTangleSearchBudget;
    unsigned seed = 1;
};

/// Graph plus the action that came with it (empty generators when none was given).
struct Input {
    Graph graph;
    GroupAction action;
    bool has_action = false;
};

std::string slurp(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::invalid_input, "cannot open '" + path + "'");
    return slurp(in);
}

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::parse, what + ": " + e.what());
    }
}

json to_json(const Separation& s) { return {{"Y", s.Y}, {"S", s.S}, {"Z", s.Z}}; }

json to_json(const std::vector<Separation>& seps) {
    json out = json::array();
    for (const auto& s : seps) out.push_back(to_json(s));
    return out;
}

json to_json(const std::vector<Edge>& edges) {
    json out = json::array();
    for (auto [u, v] : edges) out.push_back({u, v});
    return out;
}

json to_json(const Graph& g) {
    json out = {{"n", g.n()}, {"edges", to_json(g.edges())}};
    if (!g.labels().empty()) out["labels"] = g.labels();
    return out;
}

json to_json(const TreeDecomposition& td, const Graph& g) {
    TdReport r = validate_td(g, td);
    json nodes = json::array();
    for (int t = 0; t < td.size(); ++t) nodes.push_back({{"id", t}, {"bag", td.bags[t]}});
    return {{"nodes", nodes}, {"tree_edges", to_json(td.tree_edges)}, {"adhesion", r.adhesion}, {"width", r.width}};
}

Graph graph_from_json(const json& j) {
    try {
        int n = j.at("n").get<int>();
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            int u = e.at(0).get<int>(), v = e.at(1).get<int>();
            if (u < 0 || v < 0 || u >= n || v >= n || u == v) fail(ErrorKind::invalid_input, "graph JSON: bad edge");
            edges.emplace_back(std::min(u, v), std::max(u, v));
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) fail(ErrorKind::invalid_input, "graph JSON: parallel edge");
        Graph g(n, edges);
        if (j.contains("labels")) g.set_labels(j.at("labels").get<std::vector<std::string>>());
        return g;
    } catch (const json::exception& e) {
        fail(ErrorKind::parse, std::string("graph JSON: ") + e.what());
    }
}

/// Generators as permutation arrays, or a list of cycle-notation strings.
GroupAction action_from_json(const json& j, int n) {
    GroupAction a{n, {}};
    const json& gens = j.is_object() ? j.at("generators") : j;
    for (const auto& gen : gens) {
        Permutation p = gen.is_string() ? parse_cycle_notation(gen.get<std::string>(), n) : gen.get<Permutation>();
        if (!is_permutation_of(p, n)) fail(ErrorKind::invalid_input, "action generator is not a permutation of the vertices");
        a.generators.push_back(std::move(p));
    }
    return a;
}

/// Action file: JSON (see action_from_json) or one cycle-notation generator per line.
GroupAction load_action(const std::string& path, int n) {
    std::string text = read_file(path);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (text[first] == '{' || text[first] == '['))
        return action_from_json(parse_json(text, "action file"), n);
    GroupAction a{n, {}};
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);)
        if (line.find_first_not_of(" \t\r") != std::string::npos) a.generators.push_back(parse_cycle_notation(line, n));
    return a;
}

TreeDecomposition td_from_json(const json& doc) {
    try {
        const json& j = doc.contains("td") ? doc.at("td") : doc;
        TreeDecomposition td;
        const auto& nodes = j.at("nodes");
        td.bags.resize(nodes.size());
        for (const auto& node : nodes) {
            int id = node.at("id").get<int>();
            if (id < 0 || id >= static_cast<int>(nodes.size())) fail(ErrorKind::invalid_input, "TD JSON: node id out of range");
            td.bags[id] = normalized(node.at("bag").get<VertexSet>());
        }
        for (const auto& e : j.at("tree_edges")) td.tree_edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        return td;
    } catch (const json::exception& e) {
        fail(ErrorKind::parse, std::string("TD JSON: ") + e.what());
    }
}

bool looks_like_graph6(const std::string& text) {
    std::istringstream in(text);
    std::string tok, extra;
    if (!(in >> tok) || (in >> extra)) return false;
    if (tok.rfind(">>graph6<<", 0) == 0) return true;
    return std::all_of(tok.begin(), tok.end(), [](char c) { return c >= 63 && c <= 126; });
}

Input read_input(const Options& o) {
    std::string text = o.input.empty() || o.input == "-" ? slurp(std::cin) : read_file(o.input);
    Input in;
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json doc = parse_json(text, "input");
        in.graph = graph_from_json(doc.contains("graph") ? doc.at("graph") : doc);
        if (doc.contains("action")) {
            in.action = action_from_json(doc.at("action"), in.graph.n());
            in.has_action = true;
        }
    } else if (looks_like_graph6(text)) {
        std::string tok;
        std::istringstream(text) >> tok;
        if (tok.rfind(">>graph6<<", 0) == 0) tok = tok.substr(10);
        in.graph = graph6_decode(tok);
    } else {
        in.graph = parse_edge_list(text);
    }
    if (!in.has_action) in.action = GroupAction{in.graph.n(), {}};
    return in;
}

GroupAction action_or_automorphisms(const Input& in) { return in.has_action ? in.action : automorphisms(in.graph).action; }

json document() { return {{"schema", kSchema}}; }

std::string graph_dot(const Graph& g) {
    std::string out = "graph G {\n";
    for (int v = 0; v < g.n(); ++v) out += "  " + std::to_string(v) + ";\n";
    for (auto [u, v] : g.edges()) out += "  " + std::to_string(u) + " -- " + std::to_string(v) + ";\n";
    return out + "}\n";
}

/// Writes a result whose primary payload is a graph.
void emit_graph(const Options& o, const Graph& g, json doc) {
    if (o.format == "graph6")
        std::cout << graph6_encode(g) << '\n';
    else if (o.format == "dot")
        std::cout << graph_dot(g);
    else
        std::cout << doc.dump(2) << '\n';
}

/// Writes a result whose primary payload is a tree-decomposition.
void emit_td(const Options& o, const TreeDecomposition& td, const json& doc) {
    if (o.format == "dot")
        std::cout << td_to_dot(td);
    else if (o.format == "graph6")
        fail(ErrorKind::invalid_input, "graph6 output is only available for graphs");
    else
        std::cout << doc.dump(2) << '\n';
}

void emit_json(const Options& o, const json& doc) {
    if (o.format != "json") fail(ErrorKind::invalid_input, "this command only writes JSON");
    std::cout << doc.dump(2) << '\n';
}

std::vector<Edge> parse_edges(const std::string& text) {
    std::vector<Edge> out;
    std::string cleaned = text;
    for (char& c : cleaned)
        if (c == ',' || c == '-' || c == ';' || c == ':') c = ' ';
    std::istringstream in(cleaned);
    std::vector<int> nums;
    for (std::string tok; in >> tok;) {
        try {
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            nums.push_back(v);
        } catch (const std::logic_error&) {
            fail(ErrorKind::parse, "--edges: '" + tok + "' is not a vertex number");
        }
    }
    if (nums.size() % 2 != 0) fail(ErrorKind::parse, "--edges needs pairs of vertices");
    for (std::size_t i = 0; i < nums.size(); i += 2) out.emplace_back(std::min(nums[i], nums[i + 1]), std::max(nums[i], nums[i + 1]));
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Commands

void cmd_gen(const Options& o, const std::string& family, const std::vector<int>& params) {
    Family f;
    if (family == "random") {
        // Random connected graph: params n m (edges, at least n-1), seeded by --seed.
        if (params.size() != 2) fail(ErrorKind::invalid_input, "family 'random' takes 2 parameter(s)");
        int n = params[0], m = params[1];
        if (n < 1 || m < n - 1 || m > n * (n - 1) / 2) fail(ErrorKind::invalid_input, "random: need 1 <= n and n-1 <= m <= n(n-1)/2");
        std::mt19937 rng(o.seed);
        std::vector<Edge> edges;
        for (int v = 1; v < n; ++v) {
            int u = static_cast<int>(rng() % static_cast<unsigned>(v));
            edges.emplace_back(u, v);
        }
        std::vector<Edge> rest;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (std::find(edges.begin(), edges.end(), Edge{u, v}) == edges.end()) rest.emplace_back(u, v);
        std::shuffle(rest.begin(), rest.end(), rng);
        edges.insert(edges.end(), rest.begin(), rest.begin() + (m - (n - 1)));
        std::sort(edges.begin(), edges.end());
        f.graph = Graph(n, edges);
        f.action = automorphisms(f.graph).action;
    } else {
        f = generate_family(family, params);
    }
    json doc = document();
    doc["family"] = family;
    doc["params"] = params;
    doc["graph"] = to_json(f.graph);
    doc["action"] = {{"generators", f.action.generators}};
    emit_graph(o, f.graph, doc);
}

void cmd_tangles(const Options& o, int order) {
    Input in = read_input(o);
    const Graph& g = in.graph;
    auto ts = enumerate_tangles(g, order, o.budget);
    bool structural = order == 4 && is_k_connected(g, 3);
    json list = json::array();
    for (const Tangle& t : ts) {
        json e = {{"minimal", to_json(minimal_separations(t))}};
        if (structural) {
            e["nondegenerate"] = to_json(nondegenerate_minimal(t));
            e["crossedges"] = to_json(crossedges(t));
            e["X"] = core_X(t);
            e["R"] = region_R(t);
        }
        list.push_back(e);
    }
    json doc = document();
    doc["graph"] = to_json(g);
    doc["order"] = order;
    doc["three_connected"] = is_k_connected(g, 3);
    doc["count"] = ts.size();
    doc["tangles"] = list;
    emit_json(o, doc);
}

void cmd_decompose(const Options& o, const std::string& mode, int tw_bound) {
    Input in = read_input(o);
    const Graph& g = in.graph;
    json doc = document();
    doc["mode"] = mode;
    TreeDecomposition td;
    bool ok = true;
    if (mode == "blocks") {
        td = block_cut_tree(g);
    } else if (mode == "tutte") {
        td = tutte_decomposition(g);
    } else if (mode == "distinguish") {
        auto res = tangle_distinguishing_td(g, enumerate_tangles(g, 4, o.budget), action_or_automorphisms(in));
        td = res.td;
        const auto& r = res.report;
        doc["report"] = {{"nice", r.nice},
                         {"efficient", r.efficient},
                         {"distinct", r.distinct},
                         {"nondegenerate", r.nondegenerate},
                         {"invariant", r.invariant},
                         {"all_pairs_distinguished", r.all_pairs_distinguished},
                         {"fallback_used", r.fallback_used},
                         {"subdivided_edges", r.subdivided_edges},
                         {"violations", r.violations}};
        ok = r.ok();
    } else if (mode == "grohe") {
        td = grohe_decomposition(g, o.budget);
        GroheCheck c = check_grohe_decomposition(g, td);
        json torsos = json::array();
        for (const auto& t : c.torsos)
            torsos.push_back({{"node", t.node}, {"size", t.size}, {"quasi_4_connected", t.quasi_4_connected}, {"minor_certified", t.minor_certified}});
        doc["report"] = {{"ok", c.ok}, {"violations", c.violations}, {"torsos", torsos}};
        ok = c.ok;
    } else if (mode == "structure") {
        StructureResult s = structure_decomposition(g, action_or_automorphisms(in), tw_bound, o.budget);
        td = s.td;
        json torsos = json::array();
        for (const auto& t : s.torsos)
            torsos.push_back({{"node", t.node},
                              {"size", t.size},
                              {"three_connected", t.three_connected},
                              {"order4_tangles", t.order4_tangles},
                              {"crossedges", to_json(t.crossedges)},
                              {"contracted_quasi_4_connected", t.contracted_quasi_4_connected},
                              {"planar", t.planar},
                              {"treewidth", t.treewidth},
                              {"planar_or_small", t.planar_or_small}});
        doc["report"] = {{"valid", s.validation.ok},
                         {"canonical", s.canonicity.canonical},
                         {"distinguisher_fallback_used", s.distinguisher_fallback_used},
                         {"tw_bound", tw_bound},
                         {"torsos", torsos}};
        ok = s.validation.ok && s.canonicity.canonical;
    } else {
        fail(ErrorKind::invalid_input, "unknown mode '" + mode + "'");
    }
    doc["td"] = to_json(td, g);
    emit_td(o, td, doc);
    if (!ok) fail(ErrorKind::property_violation, "decomposition postcondition failed (see report)");
}

void cmd_contract(const Options& o, const std::string& edges, int tangle_index) {
    Input in = read_input(o);
    const Graph& g = in.graph;
    json doc = document();
    std::vector<Edge> L;
    std::optional<Tangle> tangle;
    if (edges == "all-crossedges") {
        if (!is_k_connected(g, 3)) fail(ErrorKind::invalid_input, "all-crossedges needs a 3-connected graph");
        auto ts = enumerate_tangles(g, 4, o.budget);
        if (tangle_index < 0 || tangle_index >= static_cast<int>(ts.size()))
            fail(ErrorKind::invalid_input, "the graph has " + std::to_string(ts.size()) + " order-4 tangle(s); --tangle out of range");
        tangle = ts[tangle_index];
        L = crossedges(*tangle);
    } else {
        L = parse_edges(edges);
    }
    ContractionMap cm = contract_matching(g, L);
    doc["matching"] = to_json(cm.matching);
    doc["graph"] = to_json(cm.target);
    doc["forward"] = cm.forward;
    doc["backward"] = cm.backward;
    if (tangle) {
        Tangle induced = induced_tangle(*tangle, cm);
        doc["tangle"] = tangle_index;
        doc["induced_minimal"] = to_json(minimal_separations(induced));
        doc["quasi_4_connected"] = is_quasi_4_connected(cm.target);
    }
    emit_graph(o, cm.target, doc);
}

void cmd_check(const Options& o, const std::string& td_path, const std::string& action_path) {
    Input in = read_input(o);
    const Graph& g = in.graph;
    TreeDecomposition td = td_from_json(parse_json(read_file(td_path), "TD file"));
    TdReport r = validate_td(g, td);
    json doc = document();
    doc["valid"] = r.ok;
    doc["violations"] = r.violations;
    doc["adhesion"] = r.adhesion;
    doc["width"] = r.width;
    bool ok = r.ok;
    if (!action_path.empty() || in.has_action) {
        GroupAction a = action_path.empty() ? in.action : load_action(action_path, g.n());
        for (std::size_t i = 0; i < a.generators.size(); ++i)
            if (!is_automorphism(g, a.generators[i]))
                fail(ErrorKind::invalid_input, "generator " + std::to_string(i) + " is not an automorphism");
        CanonicityResult c = is_canonical_td(td, a);
        doc["canonical"] = c.canonical;
        doc["failing_generator"] = c.failing_generator;
        ok = ok && c.canonical;
    }
    emit_json(o, doc);
    if (!ok) fail(ErrorKind::property_violation, "tree-decomposition check failed");
}

void cmd_planar(const Options& o, bool witness) {
    Input in = read_input(o);
    const Graph& g = in.graph;
    bool planar = is_planar(g);
    json doc = document();
    doc["planar"] = planar;
    if (witness && !planar) {
        auto w = kuratowski_witness(g);
        if (!w) fail(ErrorKind::property_violation, "no Kuratowski witness found for a non-planar graph");
        doc["witness"] = {{"pattern", w->pattern}, {"branch_sets", w->model.branch_sets}};
    }
    emit_json(o, doc);
}

void cmd_walks(const Options& o, const std::string& td_path) {
    Input in = read_input(o);
    const Graph& g = in.graph;
    TreeDecomposition td = td_from_json(parse_json(read_file(td_path), "TD file"));
    auto walks = closed_walk_generators(g, td);
    WalkGenerationReport r = check_walk_generation(g, walks);
    json doc = document();
    doc["walks"] = walks;
    doc["verdict"] = to_string(r.verdict);
    doc["max_length"] = r.max_length;
    doc["cycles"] = r.cycles;
    doc["cycles_reached"] = r.cycles_reached;
    emit_json(o, doc);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tangleforge: tangles, contractions and canonical tree-decompositions of finite graphs"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "dot", "graph6"}));
    app.add_option("--input", o.input, "Input file (default: standard input)");
    app.add_option("--budget", o.budget, "Search-node budget for tangle enumeration")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "Seed for random instance generation");

    std::string family;
    std::vector<int> params;
    auto* gen = app.add_subcommand("gen", "Generate a family instance with its symmetry");
    gen->add_option("--family", family, "cycle | torus-grid | complete | complete-bipartite | hex-tri-torus | tri-gadget-torus | cycle-tree | random")
        ->required();
    gen->add_option("--params", params, "Integer parameters of the family");

    int order = 4;
    auto* tangles = app.add_subcommand("tangles", "Enumerate tangles with minimal separations, crossedges, X_T and R_T");
    tangles->add_option("--order", order, "Tangle order k")->check(CLI::PositiveNumber);

    std::string mode;
    int tw_bound = 3;
    auto* decompose = app.add_subcommand("decompose", "Build a tree-decomposition");
    decompose->add_option("--mode", mode)->required()->check(CLI::IsMember({"blocks", "tutte", "distinguish", "grohe", "structure"}));
    decompose->add_option("--tw-bound", tw_bound, "Treewidth bound for small torsos in structure mode");

    std::string edges;
    int tangle_index = 0;
    auto* contract = app.add_subcommand("contract", "Contract a matching");
    contract->add_option("--edges", edges, "Edge list such as 0-1,2-3, or all-crossedges")->required();
    contract->add_option("--tangle", tangle_index, "Tangle index for all-crossedges");

    std::string td_path, action_path;
    auto* check = app.add_subcommand("check", "Validate a tree-decomposition and test canonicity");
    check->add_option("--td", td_path)->required();
    check->add_option("--action", action_path, "Generators (JSON or cycle notation per line)");

    bool witness = false;
    auto* planar = app.add_subcommand("planar", "Planarity test");
    planar->add_flag("--witness", witness, "Emit a Kuratowski minor model for non-planar inputs");

    std::string walks_td;
    auto* walks = app.add_subcommand("walks", "Closed-walk generators from a tree-decomposition");
    walks->add_option("--td", walks_td)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    try {
        if (*gen) cmd_gen(o, family, params);
        if (*tangles) cmd_tangles(o, order);
        if (*decompose) cmd_decompose(o, mode, tw_bound);
        if (*contract) cmd_contract(o, edges, tangle_index);
        if (*check) cmd_check(o, td_path, action_path);
        if (*planar) cmd_planar(o, witness);
        if (*walks) cmd_walks(o, walks_td);
    } catch (const Error& e) {
        std::cout.flush();
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::resource ? 2 : 1;
    } catch (const std::exception& e) {
        std::cout.flush();
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
