// Small graph builders and brute-force helpers shared by the test binaries.
#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "tangleforge/graph.hpp"
#include "tangleforge/model.hpp"
#include "tangleforge/separation.hpp"

namespace tangleforge::testing {

/// Graph on n vertices whose edges are the set bits of mask over pairs (i<j) in
/// lexicographic order.
inline Graph graph_from_mask(int n, long mask) {
    std::vector<Edge> e;
    int bit = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
            if (mask >> bit & 1) e.emplace_back(i, j);
    return Graph(n, e);
}

inline Graph path_graph(int n) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, e);
}

inline Graph cycle_graph(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i) e.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
    return Graph(n, e);
}

/// Planar r×c grid, vertex (i,j) = i*c+j.
inline Graph grid_graph(int r, int c) {
    std::vector<Edge> e;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            if (j + 1 < c) e.emplace_back(i * c + j, i * c + j + 1);
            if (i + 1 < r) e.emplace_back(i * c + j, (i + 1) * c + j);
        }
    return Graph(r * c, e);
}

inline Graph petersen_graph() {
    std::vector<Edge> e;
    for (int i = 0; i < 5; ++i) {
        int a = i, b = (i + 1) % 5;
        e.emplace_back(std::min(a, b), std::max(a, b));
        int c = 5 + i, d = 5 + (i + 2) % 5;
        e.emplace_back(std::min(c, d), std::max(c, d));
        e.emplace_back(i, 5 + i);
    }
    return Graph(10, e);
}

/// Triangular prism: triangles {0,1,2}, {3,4,5}, rungs i-(i+3).
inline Graph prism_graph() {
    return Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
}

inline Graph random_graph(int n, double p, std::mt19937& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) e.emplace_back(i, j);
    return Graph(n, e);
}

/// Random connected graph: a random spanning tree plus independent extra edges.
inline Graph random_connected_graph(int n, double p, std::mt19937& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (int v = 1; v < n; ++v) {
        int u = static_cast<int>(rng() % static_cast<unsigned>(v));
        adj[u][v] = adj[v][u] = 1;
    }
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (adj[i][j] || coin(rng)) e.emplace_back(i, j);
    return Graph(n, e);
}

/// Generalized Petersen graph GP(n, k): outer cycle 0..n-1, spokes i-(n+i), inner edges
/// (n+i)-(n+(i+k) mod n). GP(4,1) is the cube, GP(5,2) Petersen, GP(10,2) the dodecahedron.
inline Graph generalized_petersen(int n, int k) {
    std::vector<Edge> e;
    auto add = [&](int a, int b) { e.emplace_back(std::min(a, b), std::max(a, b)); };
    for (int i = 0; i < n; ++i) {
        add(i, (i + 1) % n);
        add(i, n + i);
        add(n + i, n + (i + k) % n);
    }
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return Graph(2 * n, e);
}

/// Replaces every vertex of a cubic graph by a triangle (vertex 3v+i is the corner of v facing
/// its i-th neighbour). Returns the graph and the inter-triangle edges.
inline std::pair<Graph, std::vector<Edge>> truncate_cubic(const Graph& g) {
    std::vector<Edge> e, matching;
    for (int v = 0; v < g.n(); ++v) {
        require(g.degree(v) == 3, "truncation needs a cubic graph");
        e.emplace_back(3 * v, 3 * v + 1);
        e.emplace_back(3 * v, 3 * v + 2);
        e.emplace_back(3 * v + 1, 3 * v + 2);
    }
    for (auto [u, v] : g.edges()) {
        auto slot = [&](int a, int b) {
            const auto& nb = g.neighbors(a);
            return 3 * a + static_cast<int>(std::find(nb.begin(), nb.end(), b) - nb.begin());
        };
        int a = slot(u, v), b = slot(v, u);
        e.emplace_back(std::min(a, b), std::max(a, b));
        matching.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(matching.begin(), matching.end());
    return {Graph(3 * g.n(), e), matching};
}

/// Random 3-connected graph by rejection sampling.
inline Graph random_3_connected_graph(int n, double p, std::mt19937& rng) {
    while (true) {
        Graph g = random_connected_graph(n, p, rng);
        if (is_k_connected(g, 3)) return g;
    }
}

/// Every separation (Y,S,Z) of g, proper or not, from the 3^n labelings.
inline std::vector<Separation> all_separations(const Graph& g) {
    std::vector<Separation> out;
    const int n = g.n();
    std::vector<int> label(n, 0);
    while (true) {
        Separation s;
        for (int v = 0; v < n; ++v) (label[v] == 0 ? s.Y : label[v] == 1 ? s.S : s.Z).push_back(v);
        if (separation_violation(g, s).empty()) out.push_back(s);
        int i = 0;
        while (i < n && label[i] == 2) label[i++] = 0;
        if (i == n) break;
        ++label[i];
    }
    return out;
}

inline Graph theta_graph(int a, int b, int c) {
    // Two poles 0 and 1 joined by three internally disjoint paths with a, b, c inner vertices.
    std::vector<Edge> e;
    int next = 2;
    for (int len : {a, b, c}) {
        int prev = 0;
        for (int i = 0; i < len; ++i) {
            e.emplace_back(prev, next);
            prev = next++;
        }
        e.emplace_back(std::min(prev, 1), std::max(prev, 1));
    }
    return Graph(next, e);
}

inline Graph two_k6_on_triangle() {
    std::vector<Edge> e;
    VertexSet left{0, 1, 2, 3, 4, 5}, right{0, 1, 2, 6, 7, 8};
    for (const auto& side : {left, right})
        for (std::size_t i = 0; i < side.size(); ++i)
            for (std::size_t j = i + 1; j < side.size(); ++j) e.emplace_back(side[i], side[j]);
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return Graph(9, e);
}

inline Graph tree_graph(int n, std::mt19937& rng) {
    std::vector<Edge> e;
    for (int v = 1; v < n; ++v) e.emplace_back(static_cast<int>(rng() % static_cast<unsigned>(v)), v);
    return Graph(n, e);
}

/// Kagome lattice on the torus, built directly as the line graph of the honeycomb torus.
inline Graph kagome_torus(int a, int b) {
    auto hv = [&](int i, int j, int s) { return (((i % a + a) % a * b + (j % b + b) % b) * 2) + s; };
    std::vector<Edge> honeycomb;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) {
            honeycomb.emplace_back(hv(i, j, 0), hv(i, j, 1));
            honeycomb.emplace_back(hv(i + 1, j, 0), hv(i, j, 1));
            honeycomb.emplace_back(hv(i, j + 1, 0), hv(i, j, 1));
        }
    std::vector<Edge> e;
    for (std::size_t x = 0; x < honeycomb.size(); ++x)
        for (std::size_t y = x + 1; y < honeycomb.size(); ++y) {
            auto [p, q] = honeycomb[x];
            auto [r, s] = honeycomb[y];
            if (p == r || p == s || q == r || q == s) e.emplace_back(static_cast<int>(x), static_cast<int>(y));
        }
    return Graph(static_cast<int>(honeycomb.size()), e);
}

}  // namespace tangleforge::testing
