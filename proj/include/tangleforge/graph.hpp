// Graph representation, ingestion, connectivity and torsos.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace tangleforge {

using VertexSet = std::vector<int>;  ///< sorted, duplicate-free
using Edge = std::pair<int, int>;    ///< stored with first < second
using Bits = boost::dynamic_bitset<std::uint64_t>;

/// Error categories; the CLI maps them onto exit codes.
enum class ErrorKind { parse, invalid_input, property_violation, resource };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

inline void require(bool condition, const std::string& message) {
    if (!condition) fail(ErrorKind::invalid_input, message);
}

// ---------------------------------------------------------------------------
// Set helpers

inline Bits to_bits(int n, const VertexSet& s) {
    Bits b(static_cast<std::size_t>(n));
    for (int v : s) b.set(static_cast<std::size_t>(v));
    return b;
}

inline VertexSet to_set(const Bits& b) {
    VertexSet out;
    out.reserve(b.count());
    for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.push_back(static_cast<int>(i));
    return out;
}

template <class F>
void for_each_bit(const Bits& b, F&& f) {
    for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) f(static_cast<int>(i));
}

inline int first_bit(const Bits& b) {
    auto i = b.find_first();
    return i == Bits::npos ? -1 : static_cast<int>(i);
}

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool is_subset(const VertexSet& a, const VertexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool contains(const VertexSet& s, int v) { return std::binary_search(s.begin(), s.end(), v); }

inline VertexSet normalized(VertexSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline VertexSet iota_set(int n) {
    VertexSet s(static_cast<std::size_t>(n));
    std::iota(s.begin(), s.end(), 0);
    return s;
}

/// Calls f(subset) for every subset of {0..n-1} with min_size <= |subset| <= max_size,
/// in order of size and then lexicographically. Stops early when f returns false.
template <class F>
bool for_each_subset(int n, int min_size, int max_size, F&& f) {
    VertexSet cur;
    for (int size = std::max(0, min_size); size <= std::min(n, max_size); ++size) {
        cur.resize(static_cast<std::size_t>(size));
        std::iota(cur.begin(), cur.end(), 0);
        while (true) {
            if (!f(static_cast<const VertexSet&>(cur))) return false;
            int i = size - 1;
            while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - size + i) --i;
            if (i < 0) break;
            ++cur[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < size; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Graph

/// Finite simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
/// Immutable after construction.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n) : adj_(static_cast<std::size_t>(n)), rows_(static_cast<std::size_t>(n), Bits(static_cast<std::size_t>(n))) {
        require(n >= 0, "vertex count must be non-negative");
    }

    /// Builds a graph from an edge list; rejects loops, parallel edges and out-of-range endpoints.
    Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
        for (auto [u, v] : edges) {
            require(u >= 0 && v >= 0 && u < n && v < n,
                    "edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
            if (u == v) fail(ErrorKind::invalid_input, "loop at vertex " + std::to_string(u));
            if (rows_[static_cast<std::size_t>(u)].test(static_cast<std::size_t>(v)))
                fail(ErrorKind::invalid_input, "parallel edge " + std::to_string(u) + " " + std::to_string(v));
            rows_[static_cast<std::size_t>(u)].set(static_cast<std::size_t>(v));
            rows_[static_cast<std::size_t>(v)].set(static_cast<std::size_t>(u));
            adj_[static_cast<std::size_t>(u)].push_back(v);
            adj_[static_cast<std::size_t>(v)].push_back(u);
            ++m_;
        }
        for (auto& a : adj_) std::sort(a.begin(), a.end());
    }

    int n() const { return static_cast<int>(adj_.size()); }
    int m() const { return m_; }
    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    const Bits& neighbor_bits(int v) const { return rows_[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
    bool has_edge(int u, int v) const {
        return rows_[static_cast<std::size_t>(u)].test(static_cast<std::size_t>(v));
    }

    /// All edges (u,v) with u < v, sorted lexicographically.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(static_cast<std::size_t>(m_));
        for (int u = 0; u < n(); ++u)
            for (int v : neighbors(u))
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> labels) {
        require(labels.empty() || static_cast<int>(labels.size()) == n(), "label count must equal vertex count");
        labels_ = std::move(labels);
    }

    Bits empty_set() const { return Bits(static_cast<std::size_t>(n())); }
    Bits full_set() const {
        Bits b(static_cast<std::size_t>(n()));
        b.set();
        return b;
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

private:
    std::vector<std::vector<int>> adj_;
    std::vector<Bits> rows_;
    int m_ = 0;
    std::vector<std::string> labels_;
};

/// A graph together with the host vertex of each of its vertices.
struct IndexedGraph {
    Graph graph;
    VertexSet to_host;  ///< to_host[i] = host vertex represented by vertex i

    /// Host vertex -> local index, or -1.
    std::vector<int> from_host(int host_n) const {
        std::vector<int> m(static_cast<std::size_t>(host_n), -1);
        for (std::size_t i = 0; i < to_host.size(); ++i) m[static_cast<std::size_t>(to_host[i])] = static_cast<int>(i);
        return m;
    }
};

// ---------------------------------------------------------------------------
// Neighborhoods and components

/// Open neighborhood N(X) = vertices outside X adjacent to X.
inline Bits neighborhood(const Graph& g, const Bits& x) {
    Bits out(static_cast<std::size_t>(g.n()));
    for_each_bit(x, [&](int v) { out |= g.neighbor_bits(v); });
    out -= x;
    return out;
}

inline VertexSet neighborhood(const Graph& g, const VertexSet& x) {
    return to_set(neighborhood(g, to_bits(g.n(), x)));
}

/// Connected components of G[allowed], sorted by smallest vertex.
inline std::vector<Bits> components_within(const Graph& g, const Bits& allowed) {
    std::vector<Bits> out;
    Bits left = allowed;
    std::vector<int> stack;
    for (int s = first_bit(left); s >= 0; s = first_bit(left)) {
        Bits comp(static_cast<std::size_t>(g.n()));
        comp.set(static_cast<std::size_t>(s));
        left.reset(static_cast<std::size_t>(s));
        stack.assign(1, s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(v)) {
                if (left.test(static_cast<std::size_t>(w))) {
                    left.reset(static_cast<std::size_t>(w));
                    comp.set(static_cast<std::size_t>(w));
                    stack.push_back(w);
                }
            }
        }
        out.push_back(std::move(comp));
    }
    return out;
}

/// Connected components of G - removed.
inline std::vector<Bits> components_without(const Graph& g, const Bits& removed) {
    Bits allowed = ~removed;
    return components_within(g, allowed);
}

/// Number of components of G - removed (cheaper than materialising them).
inline int count_components_without(const Graph& g, const Bits& removed) {
    return static_cast<int>(components_without(g, removed).size());
}

inline bool is_connected(const Graph& g) {
    return g.n() == 0 || components_within(g, g.full_set()).size() == 1;
}

inline bool is_connected_set(const Graph& g, const Bits& x) {
    return x.none() || components_within(g, x).size() == 1;
}

/// Induced subgraph G[X], vertices in increasing host order.
inline IndexedGraph induced_subgraph(const Graph& g, const VertexSet& x) {
    std::vector<int> local(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t i = 0; i < x.size(); ++i) local[static_cast<std::size_t>(x[i])] = static_cast<int>(i);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (int w : g.neighbors(x[i]))
            if (local[static_cast<std::size_t>(w)] > static_cast<int>(i)) edges.emplace_back(static_cast<int>(i), local[static_cast<std::size_t>(w)]);
    return {Graph(static_cast<int>(x.size()), edges), x};
}

/// Torso G⟦X⟧: G[X] plus an edge between any two vertices of X that both have a
/// neighbour in the same component of G - X.
inline IndexedGraph torso(const Graph& g, const VertexSet& x) {
    require(!x.empty(), "torso of an empty vertex set");
    for (int v : x) require(v >= 0 && v < g.n(), "torso vertex out of range");
    Bits xb = to_bits(g.n(), x);
    std::vector<int> local(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t i = 0; i < x.size(); ++i) local[static_cast<std::size_t>(x[i])] = static_cast<int>(i);
    std::vector<std::vector<char>> adj(x.size(), std::vector<char>(x.size(), 0));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (int w : g.neighbors(x[i]))
            if (local[static_cast<std::size_t>(w)] >= 0) adj[i][static_cast<std::size_t>(local[static_cast<std::size_t>(w)])] = 1;
    for (const Bits& comp : components_without(g, xb)) {
        VertexSet attach = to_set(neighborhood(g, comp));
        for (std::size_t i = 0; i < attach.size(); ++i)
            for (std::size_t j = i + 1; j < attach.size(); ++j) {
                auto a = static_cast<std::size_t>(local[static_cast<std::size_t>(attach[i])]);
                auto b = static_cast<std::size_t>(local[static_cast<std::size_t>(attach[j])]);
                adj[a][b] = adj[b][a] = 1;
            }
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (adj[i][j]) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return {Graph(static_cast<int>(x.size()), edges), x};
}

/// True iff |V| >= k+1 and deleting fewer than k vertices never disconnects G.
inline bool is_k_connected(const Graph& g, int k) {
    require(k >= 0, "connectivity parameter must be non-negative");
    if (g.n() < k + 1) return false;
    if (!is_connected(g)) return false;
    return for_each_subset(g.n(), 1, k - 1, [&](const VertexSet& s) {
        return count_components_without(g, to_bits(g.n(), s)) <= 1;
    });
}

/// 3-connected, and every 3-separator leaves exactly two components, one of them a single vertex.
inline bool is_quasi_4_connected(const Graph& g) {
    if (!is_k_connected(g, 3)) return false;
    return for_each_subset(g.n(), 3, 3, [&](const VertexSet& s) {
        auto comps = components_without(g, to_bits(g.n(), s));
        if (comps.size() <= 1) return true;
        return comps.size() == 2 && (comps[0].count() == 1 || comps[1].count() == 1);
    });
}

/// Graph with vertices permuted: vertex v of g becomes perm[v].
inline Graph relabeled(const Graph& g, const std::vector<int>& perm) {
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges()) {
        int a = perm[static_cast<std::size_t>(u)], b = perm[static_cast<std::size_t>(v)];
        edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    return Graph(g.n(), edges);
}

/// Biconnected decomposition: blocks (maximal 2-connected subgraphs or bridges, as
/// sorted vertex sets; isolated vertices form singleton blocks) and cut vertices.
struct BlockStructure {
    std::vector<VertexSet> blocks;  ///< sorted by smallest vertex, then lexicographically
    VertexSet cut_vertices;
};

inline BlockStructure biconnected_components(const Graph& g) {
    const int n = g.n();
    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<char> is_cut(static_cast<std::size_t>(n), 0);
    std::vector<Edge> edge_stack;
    BlockStructure out;
    int timer = 0;
    struct Frame {
        int v, parent;
        std::size_t next;
        int children;
    };
    for (int root = 0; root < n; ++root) {
        if (disc[static_cast<std::size_t>(root)] >= 0) continue;
        if (g.degree(root) == 0) {
            out.blocks.push_back({root});
            disc[static_cast<std::size_t>(root)] = timer++;
            continue;
        }
        std::vector<Frame> st{{root, -1, 0, 0}};
        disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
        while (!st.empty()) {
            Frame& f = st.back();
            const auto& nb = g.neighbors(f.v);
            if (f.next < nb.size()) {
                int w = nb[f.next++];
                if (disc[static_cast<std::size_t>(w)] < 0) {
                    edge_stack.emplace_back(f.v, w);
                    ++f.children;
                    disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = timer++;
                    st.push_back({w, f.v, 0, 0});
                } else if (w != f.parent && disc[static_cast<std::size_t>(w)] < disc[static_cast<std::size_t>(f.v)]) {
                    edge_stack.emplace_back(f.v, w);
                    low[static_cast<std::size_t>(f.v)] = std::min(low[static_cast<std::size_t>(f.v)], disc[static_cast<std::size_t>(w)]);
                }
                continue;
            }
            Frame done = f;
            st.pop_back();
            if (st.empty()) {
                if (done.children >= 2) is_cut[static_cast<std::size_t>(done.v)] = 1;
                continue;
            }
            Frame& parent = st.back();
            low[static_cast<std::size_t>(parent.v)] = std::min(low[static_cast<std::size_t>(parent.v)], low[static_cast<std::size_t>(done.v)]);
            if (low[static_cast<std::size_t>(done.v)] >= disc[static_cast<std::size_t>(parent.v)]) {
                if (parent.parent >= 0) is_cut[static_cast<std::size_t>(parent.v)] = 1;
                VertexSet block;
                while (true) {
                    Edge e = edge_stack.back();
                    edge_stack.pop_back();
                    block.push_back(e.first);
                    block.push_back(e.second);
                    if (e.first == parent.v && e.second == done.v) break;
                }
                out.blocks.push_back(normalized(std::move(block)));
            }
        }
    }
    std::sort(out.blocks.begin(), out.blocks.end());
    for (int v = 0; v < n; ++v)
        if (is_cut[static_cast<std::size_t>(v)]) out.cut_vertices.push_back(v);
    return out;
}

// ---------------------------------------------------------------------------
// Text formats

/// graph6 encoding (short form for n <= 62, long form above).
inline std::string graph6_encode(const Graph& g) {
    std::string out;
    int n = g.n();
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        require(n <= 258047, "graph6 supports at most 258047 vertices");
        out.push_back(126);
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    }
    int acc = 0, nbits = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = nbits = 0;
            }
        }
    if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
    return out;
}

inline Graph graph6_decode(std::string_view text) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) text.remove_suffix(1);
    if (text.rfind(">>graph6<<", 0) == 0) text.remove_prefix(10);
    auto bad = [](std::size_t offset, const std::string& why) {
        fail(ErrorKind::parse, "graph6 parse error at byte " + std::to_string(offset) + ": " + why);
    };
    if (text.empty()) bad(0, "empty input");
    for (std::size_t i = 0; i < text.size(); ++i)
        if (text[i] < 63 || text[i] > 126) bad(i, "byte outside 63..126");
    std::size_t pos = 0;
    int n = 0;
    if (text[0] != 126) {
        n = text[0] - 63;
        pos = 1;
    } else {
        if (text.size() < 4) bad(text.size(), "truncated long-form header");
        if (text[1] == 126) bad(1, "graphs with more than 258047 vertices are not supported");
        n = ((text[1] - 63) << 12) | ((text[2] - 63) << 6) | (text[3] - 63);
        pos = 4;
    }
    std::size_t nbits = static_cast<std::size_t>(n) * static_cast<std::size_t>(n > 0 ? n - 1 : 0) / 2;
    std::size_t need = (nbits + 5) / 6;
    if (text.size() - pos != need)
        bad(std::min(text.size(), pos + need), "expected " + std::to_string(need) + " data bytes, found " + std::to_string(text.size() - pos));
    std::vector<Edge> edges;
    std::size_t k = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++k) {
            int byte = text[pos + k / 6] - 63;
            if ((byte >> (5 - static_cast<int>(k % 6))) & 1) edges.emplace_back(i, j);
        }
    if (nbits % 6 != 0) {
        int last = text[pos + need - 1] - 63;
        if ((last & ((1 << (6 - nbits % 6)) - 1)) != 0) bad(pos + need - 1, "non-zero padding bits");
    }
    return Graph(n, edges);
}

/// Edge-list text: one edge "u v" per line (or a single token for an isolated vertex);
/// '#' starts a comment. Vertex tokens are renumbered by first appearance and kept as labels.
inline Graph parse_edge_list(std::string_view text) {
    std::map<std::string, int, std::less<>> ids;
    std::vector<std::string> labels;
    std::vector<Edge> edges;
    std::map<Edge, std::size_t> seen;
    auto id_of = [&](const std::string& tok) {
        auto it = ids.find(tok);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(labels.size());
        ids.emplace(tok, id);
        labels.push_back(tok);
        return id;
    };
    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) line_end = text.size();
        std::string_view line = text.substr(line_start, line_end - line_start);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        std::vector<std::pair<std::string, std::size_t>> toks;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            std::size_t b = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            if (i > b) toks.emplace_back(std::string(line.substr(b, i - b)), line_start + b);
        }
        if (toks.size() == 1) {
            id_of(toks[0].first);
        } else if (toks.size() == 2) {
            int u = id_of(toks[0].first), v = id_of(toks[1].first);
            if (u == v)
                fail(ErrorKind::parse, "edge-list parse error at byte " + std::to_string(toks[0].second) + ": loop at vertex '" + toks[0].first + "'");
            Edge e{std::min(u, v), std::max(u, v)};
            if (seen.count(e))
                fail(ErrorKind::parse, "edge-list parse error at byte " + std::to_string(toks[0].second) + ": parallel edge '" +
                                           toks[0].first + " " + toks[1].first + "'");
            seen.emplace(e, toks[0].second);
            edges.push_back(e);
        } else if (toks.size() > 2) {
            fail(ErrorKind::parse, "edge-list parse error at byte " + std::to_string(toks[2].second) + ": expected at most two tokens per line");
        }
        if (line_end == text.size()) break;
        line_start = line_end + 1;
    }
    Graph g(static_cast<int>(labels.size()), edges);
    g.set_labels(std::move(labels));
    return g;
}

inline std::string write_edge_list(const Graph& g) {
    std::ostringstream os;
    for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) == 0) os << v << '\n';
    return os.str();
}

enum class GraphFormat { graph6, edge_list };

inline Graph load_graph(GraphFormat format, std::string_view bytes) {
    return format == GraphFormat::graph6 ? graph6_decode(bytes) : parse_edge_list(bytes);
}

}  // namespace tangleforge
