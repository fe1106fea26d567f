// Exact treewidth of small graphs by a branch-and-bound search over elimination orderings,
// and tree-decompositions built from elimination orderings.
#pragma once

#include <bit>
#include <algorithm>
#include <cstdint>
#include <set>
#include <unordered_set>
#include <vector>

#include "tangleforge/graph.hpp"
#include "tangleforge/tree_decomposition.hpp"

namespace tangleforge {

/// Largest graph accepted by treewidth_exact_small.
inline constexpr int kTreewidthExactCap = 25;
inline constexpr long long kTreewidthBudget = 20'000'000;

struct EliminationResult {
    int width = -1;
    std::vector<int> order;  ///< elimination ordering realising the width
};

namespace detail {

/// Decides "treewidth <= k" over elimination orderings of a graph with at most 64 vertices.
/// Eliminating a set S yields the same graph in every order, so failures are memoised per S.
class EliminationSearch {
public:
    EliminationSearch(const Graph& g, long long budget) : n_(g.n()), adj_(static_cast<std::size_t>(g.n()), 0), budget_(budget) {
        require(n_ <= 64, "elimination search handles at most 64 vertices");
        for (auto [u, v] : g.edges()) {
            adj_[u] |= bit(v);
            adj_[v] |= bit(u);
        }
        all_ = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    }

    /// Neighbours of v in the graph left after eliminating S (v not in S).
    std::uint64_t eliminated_neighbors(std::uint64_t s, int v) const {
        std::uint64_t seen = bit(v), todo = adj_[v] & s, reach = adj_[v];
        while (todo) {
            int x = std::countr_zero(todo);
            todo &= todo - 1;
            if (seen & bit(x)) continue;
            seen |= bit(x);
            reach |= adj_[x];
            todo |= adj_[x] & s & ~seen;
        }
        return reach & ~s & ~bit(v);
    }

    bool feasible(int k, std::vector<int>& order) {
        k_ = k;
        failed_.clear();
        order.clear();
        return go(0, order);
    }

private:
    static std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

    bool go(std::uint64_t s, std::vector<int>& order) {
        std::uint64_t rest = all_ & ~s;
        if (std::popcount(rest) <= k_ + 1) {
            for (std::uint64_t r = rest; r; r &= r - 1) order.push_back(std::countr_zero(r));
            return true;
        }
        if (failed_.count(s)) return false;
        if (--budget_ < 0) fail(ErrorKind::resource, "treewidth search budget exhausted");
        std::vector<std::pair<int, int>> cand;  // (degree, vertex)
        for (std::uint64_t r = rest; r; r &= r - 1) {
            int v = std::countr_zero(r);
            std::uint64_t nb = eliminated_neighbors(s, v);
            int d = std::popcount(nb);
            if (d > k_) continue;
            // A simplicial vertex of small degree can always be eliminated first.
            bool simplicial = true;
            for (std::uint64_t q = nb; q && simplicial; q &= q - 1) {
                int u = std::countr_zero(q);
                std::uint64_t others = nb & ~bit(u);
                if ((eliminated_neighbors(s, u) & others) != others) simplicial = false;
            }
            if (simplicial) {
                order.push_back(v);
                if (go(s | bit(v), order)) return true;
                order.pop_back();
                failed_.insert(s);
                return false;
            }
            cand.emplace_back(d, v);
        }
        std::sort(cand.begin(), cand.end());
        for (auto [d, v] : cand) {
            order.push_back(v);
            if (go(s | bit(v), order)) return true;
            order.pop_back();
        }
        failed_.insert(s);
        return false;
    }

    int n_;
    std::vector<std::uint64_t> adj_;
    std::uint64_t all_ = 0;
    int k_ = 0;
    long long budget_;
    std::unordered_set<std::uint64_t> failed_;
};

/// Greedy minimum-degree elimination: an upper bound and its ordering.
inline EliminationResult min_degree_elimination(const Graph& g) {
    const int n = g.n();
    std::vector<Bits> adj(n);
    for (int v = 0; v < n; ++v) adj[v] = g.neighbor_bits(v);
    std::vector<char> gone(n, 0);
    EliminationResult r;
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!gone[v] && (best < 0 || adj[v].count() < adj[best].count())) best = v;
        r.width = std::max(r.width, static_cast<int>(adj[best].count()));
        r.order.push_back(best);
        gone[best] = 1;
        VertexSet nb = to_set(adj[best]);
        for (int a : nb) {
            adj[a].reset(best);
            for (int b : nb)
                if (a != b) adj[a].set(b);
        }
    }
    return r;
}

/// Minimum-degree lower bound: the largest minimum degree met while deleting min-degree vertices.
inline int degeneracy_lower_bound(const Graph& g) {
    const int n = g.n();
    std::vector<int> deg(n);
    std::vector<char> gone(n, 0);
    for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
    int lb = 0;
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!gone[v] && (best < 0 || deg[v] < deg[best])) best = v;
        lb = std::max(lb, deg[best]);
        gone[best] = 1;
        for (int w : g.neighbors(best))
            if (!gone[w]) --deg[w];
    }
    return lb;
}

}  // namespace detail

/// Exact treewidth with an optimal elimination ordering, for graphs with at most 64 vertices.
/// Empty graph: width -1.
inline EliminationResult treewidth_elimination(const Graph& g, long long budget = kTreewidthBudget) {
    if (g.n() == 0) return {};
    EliminationResult ub = detail::min_degree_elimination(g);
    int lb = detail::degeneracy_lower_bound(g);
    if (lb >= ub.width) return ub;
    detail::EliminationSearch search(g, budget);
    for (int k = lb; k < ub.width; ++k) {
        std::vector<int> order;
        if (search.feasible(k, order)) return {k, order};
    }
    return ub;
}

/// Exact treewidth; hard cap of 25 vertices.
inline int treewidth_exact_small(const Graph& g, long long budget = kTreewidthBudget) {
    if (g.n() > kTreewidthExactCap)
        fail(ErrorKind::invalid_input, "exact treewidth is limited to " + std::to_string(kTreewidthExactCap) + " vertices");
    return treewidth_elimination(g, budget).width;
}

/// Tree-decomposition from an elimination ordering: the bag of v is v with its later
/// neighbours in the filled graph, hung below the earliest of them. Bags contained in a
/// neighbouring bag are merged away, so adhesion never exceeds the width.
inline TreeDecomposition td_from_elimination(const Graph& g, const std::vector<int>& order) {
    const int n = g.n();
    require(static_cast<int>(order.size()) == n, "elimination ordering must list every vertex once");
    if (n == 0) return {};
    std::vector<int> pos(n, -1);
    for (int i = 0; i < n; ++i) {
        require(order[i] >= 0 && order[i] < n && pos[order[i]] < 0, "elimination ordering must list every vertex once");
        pos[order[i]] = i;
    }
    std::vector<Bits> adj(n);
    for (int v = 0; v < n; ++v) adj[v] = g.neighbor_bits(v);
    std::vector<VertexSet> bags(n);
    std::vector<int> parent(n, -1);
    for (int v : order) {
        VertexSet later;
        for (int w : to_set(adj[v]))
            if (pos[w] > pos[v]) later.push_back(w);
        for (int a : later)
            for (int b : later)
                if (a != b) adj[a].set(b);
        bags[v] = set_union({v}, later);
        for (int w : later)
            if (parent[v] < 0 || pos[w] < pos[parent[v]]) parent[v] = w;
    }
    // Node i is the bag of order[i]; roots of a forest are chained with empty adhesion.
    std::vector<std::set<int>> adjt(n);
    int prev_root = -1;
    for (int v : order) {
        if (parent[v] >= 0) {
            adjt[v].insert(parent[v]);
            adjt[parent[v]].insert(v);
        } else {
            if (prev_root >= 0) {
                adjt[v].insert(prev_root);
                adjt[prev_root].insert(v);
            }
            prev_root = v;
        }
    }
    std::vector<char> alive(n, 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v : order) {
            if (!alive[v]) continue;
            int into = -1;
            for (int w : adjt[v])
                if (is_subset(bags[v], bags[w])) {
                    into = w;
                    break;
                }
            if (into < 0) continue;
            for (int x : adjt[v])
                if (x != into) {
                    adjt[x].erase(v);
                    adjt[x].insert(into);
                    adjt[into].insert(x);
                }
            adjt[into].erase(v);
            adjt[v].clear();
            alive[v] = 0;
            changed = true;
        }
    }
    std::vector<int> id(n, -1);
    TreeDecomposition td;
    for (int v : order)
        if (alive[v]) {
            id[v] = td.size();
            td.bags.push_back(bags[v]);
        }
    for (int v : order)
        if (alive[v])
            for (int w : adjt[v])
                if (id[v] < id[w]) td.tree_edges.emplace_back(id[v], id[w]);
    return td;
}

}  // namespace tangleforge
