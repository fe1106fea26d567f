// Generating sets of closed walks from a tree-decomposition, and a bounded-length closure check
// that a set of closed walks generates every cycle of the graph.
#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tangleforge/graph.hpp"
#include "tangleforge/tree_decomposition.hpp"

namespace tangleforge {

/// A closed walk as its cyclic vertex sequence (the return to the first vertex is implicit);
/// consecutive vertices, including last and first, are adjacent.
using ClosedWalk = std::vector<int>;

/// Throws invalid_input unless w is a closed walk of g.
inline void validate_walk(const Graph& g, const ClosedWalk& w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        int a = w[i], b = w[(i + 1) % w.size()];
        if (a < 0 || a >= g.n() || b < 0 || b >= g.n()) fail(ErrorKind::invalid_input, "walk vertex out of range");
        if (w.size() > 1 && a != b && !g.has_edge(a, b))
            fail(ErrorKind::invalid_input, "walk steps along a non-edge " + std::to_string(a) + "-" + std::to_string(b));
    }
}

/// Deletes repetitions and spurs, cyclically, until none is left.
inline ClosedWalk reduce_walk(const ClosedWalk& w) {
    std::vector<int> st;
    for (int v : w) {
        if (!st.empty() && st.back() == v) continue;
        if (st.size() >= 2 && st[st.size() - 2] == v) {
            st.pop_back();
            continue;
        }
        st.push_back(v);
    }
    // Cyclic cleanup at the seam.
    std::deque<int> d(st.begin(), st.end());
    bool changed = true;
    while (changed && d.size() >= 2) {
        changed = false;
        if (d.front() == d.back()) {
            d.pop_back();
            changed = true;
        } else if (d.size() >= 3 && d[1] == d.back()) {  // spur at the first vertex
            d.pop_front();
            d.pop_back();
            changed = true;
        } else if (d.size() >= 3 && d[d.size() - 2] == d.front()) {  // spur at the last vertex
            d.pop_back();
            d.pop_back();
            changed = true;
        }
    }
    if (d.size() <= 2) return {};  // a point or a single spur
    return {d.begin(), d.end()};
}

/// Representative of a reduced walk under rotations and reflection: the smallest rotation of
/// the walk or of its reverse.
inline ClosedWalk canonical_walk(const ClosedWalk& w) {
    ClosedWalk best = w;
    ClosedWalk r(w.rbegin(), w.rend());
    for (const ClosedWalk* x : std::initializer_list<const ClosedWalk*>{&w, &r})
        for (std::size_t i = 0; i < x->size(); ++i) {
            ClosedWalk rot(x->begin() + static_cast<std::ptrdiff_t>(i), x->end());
            rot.insert(rot.end(), x->begin(), x->begin() + static_cast<std::ptrdiff_t>(i));
            if (rot < best) best = std::move(rot);
        }
    return best;
}

namespace detail {

/// Breadth-first tree of g from `root` restricted to `allowed`: parent per vertex (-1 at roots
/// and outside), neighbours in sorted order.
inline std::vector<int> bfs_parents(const Graph& g, int root, std::vector<char>& seen) {
    std::vector<int> parent(g.n(), -1);
    std::vector<int> queue{root};
    seen[root] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (int w : g.neighbors(queue[i]))
            if (!seen[w]) {
                seen[w] = 1;
                parent[w] = queue[i];
                queue.push_back(w);
            }
    return parent;
}

/// Fixed shortest path from min(x,y) to max(x,y) in g (interior and endpoints).
inline std::vector<int> fixed_path(const Graph& g, int x, int y) {
    int a = std::min(x, y), b = std::max(x, y);
    std::vector<char> seen(g.n(), 0);
    std::vector<int> parent = bfs_parents(g, a, seen);
    if (!seen[b]) fail(ErrorKind::invalid_input, "adhesion vertices are not joined by a path");
    std::vector<int> path{b};
    while (path.back() != a) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    if (x > y) std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace detail

/// Closed walks of g generating all closed walks: per node, the fundamental cycles of a
/// breadth-first tree of the torso, with every virtual torso edge xy replaced by one fixed
/// shortest x–y path of g. Because each virtual edge has a single image path, no correction
/// walks are needed. Walks are reduced, canonical and deduplicated. A forest yields none.
inline std::vector<ClosedWalk> closed_walk_generators(const Graph& g, const TreeDecomposition& td) {
    TdReport r = validate_td(g, td);
    if (!r.ok) fail(ErrorKind::invalid_input, "not a tree-decomposition: " + r.violations[0]);
    std::set<ClosedWalk> out;
    for (int t = 0; t < td.size(); ++t) {
        IndexedGraph tor = td_torso(g, td, t);
        const Graph& h = tor.graph;
        std::vector<char> seen(h.n(), 0);
        std::vector<int> parent(h.n(), -1), depth(h.n(), 0);
        for (int root = 0; root < h.n(); ++root) {
            if (seen[root]) continue;
            std::vector<int> p = detail::bfs_parents(h, root, seen);
            for (int v = 0; v < h.n(); ++v)
                if (p[v] >= 0) parent[v] = p[v];
        }
        std::function<int(int)> dep = [&](int v) { return parent[v] < 0 ? 0 : 1 + dep(parent[v]); };
        for (int v = 0; v < h.n(); ++v) depth[v] = dep(v);
        for (auto [a, b] : h.edges()) {
            if (parent[a] == b || parent[b] == a) continue;
            // Tree path a -> lca -> b, closed by the edge b-a.
            std::vector<int> up_a{a}, up_b{b};
            int x = a, y = b;
            while (depth[x] > depth[y]) up_a.push_back(x = parent[x]);
            while (depth[y] > depth[x]) up_b.push_back(y = parent[y]);
            while (x != y) {
                up_a.push_back(x = parent[x]);
                up_b.push_back(y = parent[y]);
            }
            up_b.pop_back();
            std::vector<int> local = up_a;
            local.insert(local.end(), up_b.rbegin(), up_b.rend());
            ClosedWalk w;
            for (std::size_t i = 0; i < local.size(); ++i) {
                int u = tor.to_host[local[i]], v = tor.to_host[local[(i + 1) % local.size()]];
                w.push_back(u);
                if (!g.has_edge(u, v)) {
                    std::vector<int> path = detail::fixed_path(g, u, v);
                    w.insert(w.end(), path.begin() + 1, path.end() - 1);
                }
            }
            ClosedWalk red = reduce_walk(w);
            if (!red.empty()) out.insert(canonical_walk(red));
        }
    }
    return {out.begin(), out.end()};
}

/// Every cycle of g as a canonical closed walk, up to `cap` cycles (nullopt beyond).
inline std::optional<std::vector<ClosedWalk>> simple_cycles(const Graph& g, std::size_t cap = 100'000) {
    std::set<ClosedWalk> out;
    std::vector<int> path;
    std::vector<char> on(g.n(), 0);
    bool overflow = false;
    std::function<void(int, int)> go = [&](int start, int v) {
        if (overflow) return;
        for (int w : g.neighbors(v)) {
            if (w == start && path.size() >= 3) {
                out.insert(canonical_walk(path));
                if (out.size() > cap) overflow = true;
            }
            if (w <= start || on[w]) continue;
            on[w] = 1;
            path.push_back(w);
            go(start, w);
            path.pop_back();
            on[w] = 0;
        }
    };
    for (int s = 0; s < g.n() && !overflow; ++s) {
        path = {s};
        on[s] = 1;
        go(s, s);
        on[s] = 0;
    }
    if (overflow) return std::nullopt;
    return std::vector<ClosedWalk>(out.begin(), out.end());
}

enum class WalkGeneration { generates, inconclusive };

inline std::string to_string(WalkGeneration w) { return w == WalkGeneration::generates ? "generates" : "inconclusive"; }

struct WalkGenerationReport {
    WalkGeneration verdict = WalkGeneration::inconclusive;
    int max_length = 0;
    std::size_t cycles = 0;        ///< number of target cycles
    std::size_t cycles_reached = 0;
    std::size_t words = 0;         ///< reduced walks produced by the closure
};

/// Closes the walks under sums at shared vertices (with reflections and rotations), deleting
/// spurs and repetitions, keeping reduced walks of length at most max_length (default 2|E|).
/// Reports "generates" once every cycle of g has been produced; otherwise "inconclusive",
/// since a longer intermediate walk might still be needed.
inline WalkGenerationReport check_walk_generation(const Graph& g, const std::vector<ClosedWalk>& walks, int max_length = -1,
                                                  std::size_t word_cap = 200'000) {
    WalkGenerationReport rep;
    rep.max_length = max_length < 0 ? 2 * g.m() : max_length;
    for (const auto& w : walks) validate_walk(g, w);
    auto cycles = simple_cycles(g);
    if (!cycles) return rep;
    rep.cycles = cycles->size();
    std::set<ClosedWalk> target(cycles->begin(), cycles->end());
    std::set<ClosedWalk> words;
    std::vector<ClosedWalk> queue;
    auto add = [&](const ClosedWalk& w) {
        ClosedWalk red = reduce_walk(w);
        if (red.empty() || static_cast<int>(red.size()) > rep.max_length) return;
        ClosedWalk c = canonical_walk(red);
        if (words.insert(c).second) {
            queue.push_back(c);
            if (target.count(c)) ++rep.cycles_reached;
        }
    };
    for (const auto& w : walks) add(w);
    auto rotated = [](const ClosedWalk& w, std::size_t i) {
        ClosedWalk r(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
        r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        return r;
    };
    for (std::size_t q = 0; q < queue.size() && rep.cycles_reached < target.size(); ++q) {
        if (words.size() > word_cap) break;
        for (std::size_t p = 0; p <= q && rep.cycles_reached < target.size(); ++p) {
            const ClosedWalk a = queue[q], b = queue[p];
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t j = 0; j < b.size(); ++j) {
                    if (a[i] != b[j]) continue;
                    ClosedWalk ra = rotated(a, i), rb = rotated(b, j);
                    ClosedWalk sum = ra;
                    sum.insert(sum.end(), rb.begin(), rb.end());
                    add(sum);
                    ClosedWalk back(rb.rbegin(), rb.rend());  // reflection, rotated back to the shared vertex
                    std::rotate(back.begin(), back.end() - 1, back.end());
                    sum = ra;
                    sum.insert(sum.end(), back.begin(), back.end());
                    add(sum);
                }
        }
    }
    rep.words = words.size();
    if (rep.cycles_reached == target.size()) rep.verdict = WalkGeneration::generates;
    return rep;
}

}  // namespace tangleforge
