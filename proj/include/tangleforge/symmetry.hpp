// Automorphism groups of finite graphs (refinement search plus an exhaustive oracle),
// orbits, invariance of separation families, isomorphism, and canonicity of
// tree-decompositions.
#pragma once

#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tangleforge/graph.hpp"
#include "tangleforge/separation.hpp"
#include "tangleforge/tree_decomposition.hpp"

namespace tangleforge {

/// A vertex permutation: perm[v] is the image of v.
using Permutation = std::vector<int>;

/// Largest number of group elements enumerated by closure.
inline constexpr std::size_t kGroupElementCap = 1'000'000;

/// Permutations acting on the vertices of a host graph. Every generator is an automorphism.
struct GroupAction {
    int n = 0;
    std::vector<Permutation> generators;
};

inline bool is_permutation_of(const Permutation& p, int n) {
    if (static_cast<int>(p.size()) != n) return false;
    std::vector<char> hit(n, 0);
    for (int x : p) {
        if (x < 0 || x >= n || hit[x]) return false;
        hit[x] = 1;
    }
    return true;
}

inline bool is_automorphism(const Graph& g, const Permutation& p) {
    if (!is_permutation_of(p, g.n())) return false;
    for (auto [u, v] : g.edges())
        if (!g.has_edge(p[u], p[v])) return false;
    return true;  // a bijection mapping edges into edges of a finite graph preserves non-edges too
}

/// Validates every generator against the host and builds the action.
inline GroupAction make_action(const Graph& g, std::vector<Permutation> generators) {
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (!is_automorphism(g, generators[i]))
            fail(ErrorKind::invalid_input, "generator " + std::to_string(i) + " is not an automorphism of the host graph");
    return {g.n(), std::move(generators)};
}

inline Permutation identity_permutation(int n) { return iota_set(n); }

/// (a∘b)(v) = a(b(v)).
inline Permutation compose(const Permutation& a, const Permutation& b) {
    Permutation c(b.size());
    for (std::size_t v = 0; v < b.size(); ++v) c[v] = a[b[v]];
    return c;
}

inline Permutation inverse(const Permutation& p) {
    Permutation q(p.size());
    for (std::size_t v = 0; v < p.size(); ++v) q[p[v]] = static_cast<int>(v);
    return q;
}

inline VertexSet image(const Permutation& p, const VertexSet& x) {
    VertexSet out;
    out.reserve(x.size());
    for (int v : x) out.push_back(p[v]);
    std::sort(out.begin(), out.end());
    return out;
}

inline Separation image(const Permutation& p, const Separation& s) { return {image(p, s.Y), image(p, s.S), image(p, s.Z)}; }

/// Parses one-line cycle notation such as "(0 1 2)(3 4)" into a permutation of {0..n-1}.
inline Permutation parse_cycle_notation(std::string_view text, int n) {
    Permutation p = identity_permutation(n);
    std::vector<char> moved(n, 0);
    std::size_t i = 0;
    auto bad = [&](const std::string& why) {
        fail(ErrorKind::parse, "cycle notation parse error at byte " + std::to_string(i) + ": " + why);
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            ++i;
            continue;
        }
        if (c != '(') bad("expected '('");
        ++i;
        std::vector<int> cycle;
        while (true) {
            while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
            if (i >= text.size()) bad("unterminated cycle");
            if (text[i] == ')') {
                ++i;
                break;
            }
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) bad("expected a vertex number");
            int v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                v = v * 10 + (text[i] - '0');
                if (v >= n) bad("vertex out of range");
                ++i;
            }
            if (moved[v]) bad("vertex repeated across cycles");
            moved[v] = 1;
            cycle.push_back(v);
        }
        for (std::size_t k = 0; k < cycle.size(); ++k) p[cycle[k]] = cycle[(k + 1) % cycle.size()];
    }
    return p;
}

inline std::string to_cycle_notation(const Permutation& p) {
    std::string out;
    std::vector<char> seen(p.size(), 0);
    for (std::size_t v = 0; v < p.size(); ++v) {
        if (seen[v] || p[v] == static_cast<int>(v)) continue;
        out += '(';
        for (int x = static_cast<int>(v); !seen[x]; x = p[x]) {
            seen[x] = 1;
            if (out.back() != '(') out += ' ';
            out += std::to_string(x);
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

// ---------------------------------------------------------------------------
// Orbits and closure

/// Vertex orbits (sorted, listed by smallest member).
inline std::vector<VertexSet> vertex_orbits(const GroupAction& action) {
    std::vector<int> parent = iota_set(action.n);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& p : action.generators)
        for (int v = 0; v < action.n; ++v) parent[find(v)] = find(p[v]);
    std::map<int, VertexSet> groups;
    for (int v = 0; v < action.n; ++v) groups[find(v)].push_back(v);
    std::vector<VertexSet> out;
    for (auto& [root, members] : groups) out.push_back(members);
    std::sort(out.begin(), out.end());
    return out;
}

/// Orbit of a single object under the generators, by breadth-first closure.
template <class T>
std::vector<T> orbit_of(const GroupAction& action, const T& x, std::size_t cap = kGroupElementCap) {
    std::set<T> seen{x};
    std::vector<T> queue{x};
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (const auto& p : action.generators) {
            T y = image(p, queue[i]);
            if (seen.insert(y).second) {
                if (seen.size() > cap) fail(ErrorKind::resource, "orbit closure exceeded the element cap");
                queue.push_back(std::move(y));
            }
        }
    return {seen.begin(), seen.end()};
}

/// Orbit partition of a list of separations, each orbit sorted; orbits listed by their
/// smallest member. Orbits may contain separations outside the input when it is not invariant.
inline std::vector<std::vector<Separation>> separation_orbits(const GroupAction& action, const std::vector<Separation>& seps) {
    std::set<Separation> done;
    std::vector<std::vector<Separation>> out;
    std::vector<Separation> sorted = seps;
    std::sort(sorted.begin(), sorted.end());
    for (const Separation& s : sorted) {
        if (done.count(s)) continue;
        auto orb = orbit_of(action, s);
        done.insert(orb.begin(), orb.end());
        out.push_back(std::move(orb));
    }
    return out;
}

/// Setwise invariance of a family of separations under every generator.
inline bool invariant_family(const GroupAction& action, const std::vector<Separation>& seps) {
    std::set<Separation> family(seps.begin(), seps.end());
    for (const auto& p : action.generators)
        for (const Separation& s : seps)
            if (!family.count(image(p, s))) return false;
    return true;
}

/// Every element of the generated group (breadth-first closure); resource error past `cap`.
inline std::vector<Permutation> enumerate_group(const GroupAction& action, std::size_t cap = kGroupElementCap) {
    Permutation id = identity_permutation(action.n);
    std::set<Permutation> seen{id};
    std::vector<Permutation> queue{id};
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (const auto& p : action.generators) {
            Permutation q = compose(p, queue[i]);
            if (seen.insert(q).second) {
                if (seen.size() > cap) fail(ErrorKind::resource, "group closure exceeded the element cap");
                queue.push_back(std::move(q));
            }
        }
    return queue;
}

// ---------------------------------------------------------------------------
// Automorphism search

namespace detail {

/// Equitable refinement: repeatedly splits colour classes by the multiset of neighbour
/// colours. New colours are ranks of signatures, so the procedure commutes with
/// isomorphisms; `trace` records a digest of every round for pruning comparisons.
inline void refine(const Graph& g, std::vector<int>& color, std::vector<std::size_t>& trace) {
    const int n = g.n();
    int classes = n == 0 ? 0 : *std::max_element(color.begin(), color.end()) + 1;
    while (true) {
        std::vector<std::pair<int, std::vector<int>>> sig(n);
        for (int v = 0; v < n; ++v) {
            sig[v].first = color[v];
            for (int w : g.neighbors(v)) sig[v].second.push_back(color[w]);
            std::sort(sig[v].second.begin(), sig[v].second.end());
        }
        std::map<std::pair<int, std::vector<int>>, int> rank;
        for (auto& s : sig) rank.emplace(s, 0);
        int r = 0;
        std::size_t digest = rank.size();
        for (auto& [s, id] : rank) {
            id = r++;
            std::size_t h = std::hash<int>{}(s.first);
            for (int c : s.second) h = h * 1000003u ^ std::hash<int>{}(c);
            digest = digest * 31u + h;
        }
        for (int v = 0; v < n; ++v) color[v] = rank[sig[v]];
        std::vector<int> counts(r, 0);
        for (int v = 0; v < n; ++v) ++counts[color[v]];
        for (int c : counts) digest = digest * 131u + static_cast<std::size_t>(c);
        trace.push_back(digest);
        if (r == classes) return;
        classes = r;
    }
}

/// Gives v a colour of its own (placed just before its old class), then refines.
inline std::vector<int> individualize(const Graph& g, const std::vector<int>& color, int v, std::vector<std::size_t>& trace) {
    std::vector<int> c(color.size());
    for (std::size_t u = 0; u < color.size(); ++u) c[u] = 2 * color[u] + (static_cast<int>(u) == v ? 0 : 1);
    std::vector<int> vals(c);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    for (int& x : c) x = static_cast<int>(std::lower_bound(vals.begin(), vals.end(), x) - vals.begin());
    refine(g, c, trace);
    return c;
}

/// Target cell: the smallest non-singleton colour class (lowest colour on ties); -1 when discrete.
inline int target_cell(const std::vector<int>& color) {
    std::map<int, int> size;
    for (int c : color) ++size[c];
    int best = -1, best_size = 0;
    for (auto [c, s] : size)
        if (s > 1 && (best < 0 || s < best_size)) {
            best = c;
            best_size = s;
        }
    return best;
}

class AutomorphismSearch {
public:
    explicit AutomorphismSearch(const Graph& g, long long budget) : g_(g), budget_(budget) {}

    /// Extends equal-trace colourings (left, right) to an automorphism mapping left cells to right cells.
    std::optional<Permutation> extend(const std::vector<int>& left, const std::vector<int>& right) {
        if (++nodes_ > budget_) fail(ErrorKind::resource, "automorphism search budget exceeded");
        int cell = target_cell(left);
        if (cell < 0) {
            Permutation p(g_.n());
            std::vector<int> by_color(g_.n());
            for (int v = 0; v < g_.n(); ++v) by_color[right[v]] = v;
            for (int v = 0; v < g_.n(); ++v) p[v] = by_color[left[v]];
            if (is_automorphism(g_, p)) return p;
            return std::nullopt;
        }
        int v = -1;
        for (int u = 0; u < g_.n() && v < 0; ++u)
            if (left[u] == cell) v = u;
        std::vector<std::size_t> lt;
        auto l2 = individualize(g_, left, v, lt);
        for (int w = 0; w < g_.n(); ++w) {
            if (right[w] != cell) continue;
            std::vector<std::size_t> rt;
            auto r2 = individualize(g_, right, w, rt);
            if (rt != lt) continue;
            if (auto p = extend(l2, r2)) return p;
        }
        return std::nullopt;
    }

private:
    const Graph& g_;
    long long budget_;
    long long nodes_ = 0;
};

}  // namespace detail

/// Automorphism group: a generating set together with the exact group order.
struct AutomorphismGroup {
    GroupAction action;
    boost::multiprecision::cpp_int order;
};

inline constexpr long long kAutomorphismBudget = 20'000'000;

/// Generators of Aut(G) by individualisation-refinement along a stabiliser chain; the
/// group order is the product of the basic orbit lengths.
inline AutomorphismGroup automorphisms(const Graph& g, long long budget = kAutomorphismBudget) {
    const int n = g.n();
    detail::AutomorphismSearch search(g, budget);
    std::vector<std::vector<int>> levels;  // colouring with the first i base points individualized
    std::vector<int> base;
    std::vector<std::size_t> trace;
    std::vector<int> color(n, 0);
    detail::refine(g, color, trace);
    levels.push_back(color);
    while (true) {
        int cell = detail::target_cell(levels.back());
        if (cell < 0) break;
        int v = -1;
        for (int u = 0; u < n && v < 0; ++u)
            if (levels.back()[u] == cell) v = u;
        base.push_back(v);
        std::vector<std::size_t> t;
        levels.push_back(detail::individualize(g, levels.back(), v, t));
    }
    AutomorphismGroup out{{n, {}}, 1};
    for (int i = static_cast<int>(base.size()) - 1; i >= 0; --i) {
        const auto& parent = levels[i];
        const int b = base[i];
        std::vector<std::size_t> lt;
        auto left = detail::individualize(g, parent, b, lt);
        std::vector<char> excluded(n, 0);
        auto orbit_members = [&] { return orbit_of(out.action, VertexSet{b}); };
        for (int w = 0; w < n; ++w) {
            if (w == b || parent[w] != parent[b] || excluded[w]) continue;
            bool in_orbit = false;
            for (auto& o : orbit_members())
                if (o[0] == w) in_orbit = true;
            if (in_orbit) continue;
            std::vector<std::size_t> rt;
            auto right = detail::individualize(g, parent, w, rt);
            std::optional<Permutation> p;
            if (rt == lt) p = search.extend(left, right);
            if (p) {
                out.action.generators.push_back(*p);
            } else {
                for (auto& o : orbit_of(out.action, VertexSet{w})) excluded[o[0]] = 1;
            }
        }
        out.order *= static_cast<unsigned>(orbit_members().size());
    }
    return out;
}

/// Independent oracle: every automorphism by backtracking over all vertex images (n <= 10).
inline std::vector<Permutation> automorphisms_exhaustive(const Graph& g) {
    const int n = g.n();
    require(n <= 10, "exhaustive automorphism enumeration is limited to 10 vertices");
    std::vector<Permutation> out;
    Permutation p(n, -1);
    std::vector<char> used(n, 0);
    std::function<void(int)> go = [&](int v) {
        if (v == n) {
            out.push_back(p);
            return;
        }
        for (int w = 0; w < n; ++w) {
            if (used[w]) continue;
            bool ok = true;
            for (int u = 0; u < v && ok; ++u) ok = g.has_edge(u, v) == g.has_edge(p[u], w);
            if (!ok) continue;
            p[v] = w;
            used[w] = 1;
            go(v + 1);
            used[w] = 0;
        }
        p[v] = -1;
    };
    go(0);
    return out;
}

/// Disjoint union of g (vertices 0..n-1) and h (shifted by g.n()).
inline Graph disjoint_union(const Graph& g, const Graph& h) {
    std::vector<Edge> e = g.edges();
    for (auto [u, v] : h.edges()) e.emplace_back(u + g.n(), v + g.n());
    return Graph(g.n() + h.n(), e);
}

/// Isomorphism test: for connected inputs, some automorphism of the disjoint union maps a
/// vertex of g into h; disconnected inputs are matched component by component.
inline bool is_isomorphic(const Graph& g, const Graph& h) {
    if (g.n() != h.n() || g.m() != h.m()) return false;
    std::vector<int> dg, dh;
    for (int v = 0; v < g.n(); ++v) {
        dg.push_back(g.degree(v));
        dh.push_back(h.degree(v));
    }
    std::sort(dg.begin(), dg.end());
    std::sort(dh.begin(), dh.end());
    if (dg != dh) return false;
    if (g.n() == 0) return true;
    if (!is_connected(g) || !is_connected(h)) {
        auto parts = [](const Graph& x) {
            std::vector<Graph> out;
            for (const Bits& c : components_within(x, x.full_set())) out.push_back(induced_subgraph(x, to_set(c)).graph);
            return out;
        };
        auto pg = parts(g), ph = parts(h);
        if (pg.size() != ph.size()) return false;
        std::vector<char> used(ph.size(), 0);
        for (const Graph& a : pg) {
            bool matched = false;
            for (std::size_t j = 0; j < ph.size() && !matched; ++j)
                if (!used[j] && is_isomorphic(a, ph[j])) used[j] = matched = true;
            if (!matched) return false;
        }
        return true;
    }
    for (const VertexSet& orbit : vertex_orbits(automorphisms(disjoint_union(g, h)).action))
        if (orbit.front() < g.n() && orbit.back() >= g.n()) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Canonicity of tree-decompositions

/// Outcome of is_canonical_td: one tree automorphism per generator, or the failing generator.
struct CanonicityResult {
    bool canonical = true;
    int failing_generator = -1;
    std::vector<std::vector<int>> node_maps;  ///< node_maps[i][t] = σ_i(t)
};

/// Searches a tree automorphism σ with bag(σ(t)) = p(bag(t)) for every node t.
inline std::optional<std::vector<int>> lift_to_tree(const TreeDecomposition& td, const Permutation& p) {
    const int t = td.size();
    std::map<VertexSet, std::vector<int>> by_bag;
    for (int i = 0; i < t; ++i) by_bag[td.bags[i]].push_back(i);
    std::vector<std::vector<int>> cand(t);
    for (int i = 0; i < t; ++i) {
        auto it = by_bag.find(image(p, td.bags[i]));
        if (it == by_bag.end()) return std::nullopt;
        cand[i] = it->second;
    }
    auto adj = td.tree_adjacency();
    std::vector<int> order{0}, parent(t, -1);
    std::vector<char> seen(t, 0);
    seen[0] = 1;
    for (std::size_t k = 0; k < order.size(); ++k)
        for (int w : adj[order[k]])
            if (!seen[w]) {
                seen[w] = 1;
                parent[w] = order[k];
                order.push_back(w);
            }
    std::vector<int> sigma(t, -1);
    std::vector<char> used(t, 0);
    std::vector<std::set<int>> adj_set(t);
    for (int i = 0; i < t; ++i) adj_set[i] = {adj[i].begin(), adj[i].end()};
    std::function<bool(std::size_t)> go = [&](std::size_t k) {
        if (k == order.size()) return true;
        int node = order[k];
        for (int c : cand[node]) {
            if (used[c]) continue;
            if (parent[node] >= 0 && !adj_set[sigma[parent[node]]].count(c)) continue;
            sigma[node] = c;
            used[c] = 1;
            if (go(k + 1)) return true;
            used[c] = 0;
        }
        sigma[node] = -1;
        return false;
    };
    if (!go(0)) return std::nullopt;
    return sigma;
}

inline CanonicityResult is_canonical_td(const TreeDecomposition& td, const GroupAction& action) {
    CanonicityResult r;
    for (std::size_t i = 0; i < action.generators.size(); ++i) {
        auto sigma = lift_to_tree(td, action.generators[i]);
        if (!sigma) {
            r.canonical = false;
            r.failing_generator = static_cast<int>(i);
            r.node_maps.clear();
            return r;
        }
        r.node_maps.push_back(*sigma);
    }
    return r;
}

}  // namespace tangleforge
