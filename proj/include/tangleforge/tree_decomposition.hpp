// Tree-decompositions: the type, validation, adhesion/width, edge-separations and torsos.
#pragma once

#include <string>
#include <vector>

#include "tangleforge/graph.hpp"
#include "tangleforge/separation.hpp"

namespace tangleforge {

/// A tree with one bag per node. Node ids are 0..bags.size()-1.
struct TreeDecomposition {
    std::vector<VertexSet> bags;  ///< sorted bags
    std::vector<Edge> tree_edges; ///< (t1, t2) pairs; orientation is the one used for edge-separations

    int size() const { return static_cast<int>(bags.size()); }

    std::vector<std::vector<int>> tree_adjacency() const {
        std::vector<std::vector<int>> adj(bags.size());
        for (auto [a, b] : tree_edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        for (auto& row : adj) std::sort(row.begin(), row.end());
        return adj;
    }
};

/// The trivial decomposition: a single bag holding every vertex.
inline TreeDecomposition trivial_td(const Graph& g) { return {{iota_set(g.n())}, {}}; }

/// Result of validate_td. `violations` lists every failed axiom with its witness.
struct TdReport {
    bool ok = true;
    std::vector<std::string> violations;
    int adhesion = 0;  ///< largest adhesion set (0 for a single node)
    int width = -1;    ///< largest bag size minus one
    bool edge_separations_tight = true;
    bool edge_separations_nondegenerate = true;
    std::vector<Separation> edge_separations;  ///< one per tree edge, oriented (t1 side, S, t2 side)
};

namespace detail {

/// Empty when the node/edge structure forms a tree.
inline std::string tree_violation(const TreeDecomposition& td) {
    const int t = td.size();
    if (t == 0) return "tree has no nodes";
    if (static_cast<int>(td.tree_edges.size()) != t - 1) return "tree must have exactly nodes-1 edges";
    for (auto [a, b] : td.tree_edges)
        if (a < 0 || b < 0 || a >= t || b >= t || a == b) return "tree edge endpoint out of range or loop";
    auto adj = td.tree_adjacency();
    std::vector<char> seen(t, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    return count == t ? std::string{} : "tree is not connected";
}

/// Nodes on the t1-side of tree edge (t1, t2).
inline std::vector<char> side_of(const TreeDecomposition& td, int t1, int t2) {
    auto adj = td.tree_adjacency();
    std::vector<char> side(td.size(), 0);
    std::vector<int> stack{t1};
    side[t1] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!side[w] && !(v == t1 && w == t2)) {
                side[w] = 1;
                stack.push_back(w);
            }
    }
    return side;
}

}  // namespace detail

/// Edge-separation (Y1, S, Y2) of tree edge (t1, t2): S is the adhesion set and Y_i the
/// union of the bags on the t_i side minus S.
inline Separation edge_separation(const Graph& g, const TreeDecomposition& td, int t1, int t2) {
    auto side = detail::side_of(td, t1, t2);
    VertexSet S = set_intersection(td.bags[t1], td.bags[t2]);
    Bits y1(g.n()), y2(g.n());
    for (int t = 0; t < td.size(); ++t)
        for (int v : td.bags[t]) (side[t] ? y1 : y2).set(v);
    Bits s = to_bits(g.n(), S);
    y1 -= s;
    y2 -= s;
    return {to_set(y1), S, to_set(y2)};
}

/// Checks the three axioms (cover, subtree connectivity, edge cover) and the tree shape,
/// and classifies every edge-separation.
inline TdReport validate_td(const Graph& g, const TreeDecomposition& td) {
    TdReport r;
    auto violate = [&](const std::string& why) {
        r.ok = false;
        r.violations.push_back(why);
    };
    std::string tree = detail::tree_violation(td);
    if (!tree.empty()) {
        violate(tree);
        return r;
    }
    for (int t = 0; t < td.size(); ++t) {
        const VertexSet& b = td.bags[t];
        if (!std::is_sorted(b.begin(), b.end()) || std::adjacent_find(b.begin(), b.end()) != b.end())
            violate("bag " + std::to_string(t) + " is not sorted and duplicate-free");
        for (int v : b)
            if (v < 0 || v >= g.n()) {
                violate("bag " + std::to_string(t) + " holds an out-of-range vertex");
                return r;
            }
        r.width = std::max(r.width, static_cast<int>(b.size()) - 1);
    }
    std::vector<std::vector<int>> holders(g.n());
    for (int t = 0; t < td.size(); ++t)
        for (int v : td.bags[t]) holders[v].push_back(t);
    for (int v = 0; v < g.n(); ++v)
        if (holders[v].empty()) violate("TD1: vertex " + std::to_string(v) + " is in no bag");
    // TD2: the nodes holding v induce a connected subtree.
    auto adj = td.tree_adjacency();
    for (int v = 0; v < g.n(); ++v) {
        if (holders[v].size() <= 1) continue;
        std::vector<char> holds(td.size(), 0), seen(td.size(), 0);
        for (int t : holders[v]) holds[t] = 1;
        std::vector<int> stack{holders[v][0]};
        seen[holders[v][0]] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            for (int w : adj[t])
                if (holds[w] && !seen[w]) {
                    seen[w] = 1;
                    ++count;
                    stack.push_back(w);
                }
        }
        if (count != holders[v].size()) violate("TD2: bags holding vertex " + std::to_string(v) + " are not connected in the tree");
    }
    for (auto [u, v] : g.edges()) {
        bool covered = false;
        for (int t : holders[u])
            if (contains(td.bags[t], v)) {
                covered = true;
                break;
            }
        if (!covered) violate("TD3: edge " + std::to_string(u) + "-" + std::to_string(v) + " is in no bag");
    }
    if (!r.ok) return r;
    for (auto [a, b] : td.tree_edges) {
        Separation s = edge_separation(g, td, a, b);
        r.adhesion = std::max(r.adhesion, s.order());
        if (!is_tight(g, s)) r.edge_separations_tight = false;
        if (is_degenerate(g, s) || is_degenerate(g, s.reversed())) r.edge_separations_nondegenerate = false;
        r.edge_separations.push_back(std::move(s));
    }
    return r;
}

/// Torso of node t: G[V_t] plus a clique on every adhesion set at t.
inline IndexedGraph td_torso(const Graph& g, const TreeDecomposition& td, int t) {
    const VertexSet& bag = td.bags[t];
    std::vector<int> local(g.n(), -1);
    for (std::size_t i = 0; i < bag.size(); ++i) local[bag[i]] = static_cast<int>(i);
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges())
        if (local[u] >= 0 && local[v] >= 0) edges.emplace_back(local[u], local[v]);
    const auto adjacency = td.tree_adjacency();
    for (int w : adjacency[t]) {
        VertexSet adh = set_intersection(bag, td.bags[w]);
        for (std::size_t i = 0; i < adh.size(); ++i)
            for (std::size_t j = i + 1; j < adh.size(); ++j) edges.emplace_back(local[adh[i]], local[adh[j]]);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return {Graph(static_cast<int>(bag.size()), edges), bag};
}

}  // namespace tangleforge
