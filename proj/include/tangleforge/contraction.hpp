// Contraction of a matching: the contracted graph, projection and expansion of vertex sets
// and separations, and the tangle induced on the contracted graph.
#pragma once

#include <string>
#include <vector>

#include "tangleforge/graph.hpp"
#include "tangleforge/model.hpp"
#include "tangleforge/separation.hpp"
#include "tangleforge/tangle.hpp"

namespace tangleforge {

/// Contraction of a matching L of `source`. Target vertices are ordered by their smallest
/// preimage, so contracting the edges of L in any order yields the same indexing.
struct ContractionMap {
    Graph source;
    std::vector<Edge> matching;                ///< sorted, each (min, max)
    Graph target;
    std::vector<int> forward;                  ///< source vertex -> target vertex
    std::vector<VertexSet> backward;           ///< target vertex -> sorted preimage (1 or 2 vertices)

    /// The model of the target in the source with branch sets {v}^∧.
    MinorModel model() const { return {backward}; }

    /// Target vertex created from a merged edge, or -1 when (u, v) is not in L.
    int merged_vertex(int u, int v) const {
        Edge e{std::min(u, v), std::max(u, v)};
        return std::binary_search(matching.begin(), matching.end(), e) ? forward[u] : -1;
    }
};

/// Contracts every edge of the matching L. Errors when L is not a matching of edges of G.
inline ContractionMap contract_matching(const Graph& g, const std::vector<Edge>& L) {
    ContractionMap cm;
    cm.source = g;
    std::vector<int> partner(g.n(), -1);
    for (auto [u, v] : L) {
        if (u < 0 || v < 0 || u >= g.n() || v >= g.n() || !g.has_edge(u, v))
            fail(ErrorKind::invalid_input, "contracted pair " + std::to_string(u) + "-" + std::to_string(v) + " is not an edge");
        if (partner[u] >= 0 || partner[v] >= 0)
            fail(ErrorKind::invalid_input, "contracted edges do not form a matching at vertex " + std::to_string(partner[u] >= 0 ? u : v));
        partner[u] = v;
        partner[v] = u;
        cm.matching.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(cm.matching.begin(), cm.matching.end());
    cm.forward.assign(g.n(), -1);
    for (int v = 0; v < g.n(); ++v) {
        if (cm.forward[v] >= 0) continue;
        int id = static_cast<int>(cm.backward.size());
        cm.forward[v] = id;
        if (partner[v] >= 0) {
            cm.forward[partner[v]] = id;
            cm.backward.push_back(normalized({v, partner[v]}));
        } else {
            cm.backward.push_back({v});
        }
    }
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges()) {
        int a = cm.forward[u], b = cm.forward[v];
        if (a != b) edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    cm.target = Graph(static_cast<int>(cm.backward.size()), edges);
    return cm;
}

/// X^∨: the image of a source vertex set.
inline VertexSet project_set(const ContractionMap& cm, const VertexSet& x) {
    VertexSet out;
    for (int v : x) out.push_back(cm.forward[v]);
    return normalized(out);
}

/// X'^∧: the largest source set projecting onto X'.
inline VertexSet expand_set(const ContractionMap& cm, const VertexSet& x) {
    VertexSet out;
    for (int v : x) out.insert(out.end(), cm.backward[v].begin(), cm.backward[v].end());
    return normalized(out);
}

/// (Y^∨ ∖ S^∨, S^∨, Z^∨ ∖ S^∨).
inline Separation project_separation(const ContractionMap& cm, const Separation& s) {
    VertexSet S = project_set(cm, s.S);
    Separation out{set_difference(project_set(cm, s.Y), S), S, set_difference(project_set(cm, s.Z), S)};
    std::string why = separation_violation(cm.target, out);
    if (!why.empty()) fail(ErrorKind::property_violation, "projected separation is invalid: " + why);
    return out;
}

/// Composition: first `a`, then `b` on a's target. The result is indexed like a direct
/// contraction of the union of both matchings.
inline ContractionMap compose(const ContractionMap& a, const ContractionMap& b) {
    std::vector<Edge> all = a.matching;
    for (auto [u, v] : b.matching) {
        VertexSet pre = expand_set(a, {u, v});
        if (pre.size() != 2) fail(ErrorKind::invalid_input, "composed contraction is not a matching contraction");
        all.emplace_back(pre[0], pre[1]);
    }
    return contract_matching(a.source, all);
}

/// The tangle of the contracted graph containing the projection of every member of T. The
/// search is restricted to components compatible with the projected minimal members; more
/// than one or no match is a property violation. L must consist of crossedges of T.
inline Tangle induced_tangle(const Tangle& t, const ContractionMap& cm) {
    if (!(cm.source == t.graph())) fail(ErrorKind::invalid_input, "contraction source differs from the tangle's graph");
    if (!cm.matching.empty()) {
        auto ex = crossedges(t);
        for (const Edge& e : cm.matching)
            if (!std::binary_search(ex.begin(), ex.end(), e))
                fail(ErrorKind::invalid_input, "edge " + std::to_string(e.first) + "-" + std::to_string(e.second) + " is not a crossedge");
    } else {
        return t;
    }
    std::vector<Separation> required;
    const auto& u = t.universe();
    for (std::size_t i = 0; i < u.separators.size(); ++i) required.push_back(project_separation(cm, t.minimal_member(static_cast<int>(i))));
    auto found = tangles_containing(cm.target, t.order(), required);
    if (found.size() != 1)
        fail(ErrorKind::property_violation, "projection is contained in " + std::to_string(found.size()) + " tangles of the contracted graph");
    validate_tangle(found[0]);
    return found[0];
}

/// Contract the edges one at a time in the given order, carrying the tangle along.
/// Returns the final map (indexed like a direct contraction) and tangle.
inline std::pair<ContractionMap, Tangle> contract_sequence(const Tangle& t, const std::vector<Edge>& order) {
    ContractionMap total = contract_matching(t.graph(), {});
    Tangle cur = t;
    for (auto [a, b] : order) {
        int u = total.forward[a], v = total.forward[b];
        ContractionMap step = contract_matching(cur.graph(), {{u, v}});
        cur = induced_tangle(cur, step);
        total = compose(total, step);
    }
    return {total, cur};
}

/// The tangle induced on the target of cm (all edges of cm at once).
inline Tangle induced_tangle(const Graph& g, const Tangle& t, const std::vector<Edge>& L) {
    if (!(g == t.graph())) fail(ErrorKind::invalid_input, "tangle does not belong to the graph");
    return induced_tangle(t, contract_matching(g, L));
}

}  // namespace tangleforge
