#include <gtest/gtest.h>

#include <random>

#include "tangleforge/contraction.hpp"
#include "tangleforge/generators.hpp"
#include "tangleforge/planarity_preservation.hpp"
#include "tangleforge/symmetry.hpp"
#include "test_support.hpp"

using namespace tangleforge;
using namespace tangleforge::testing;

namespace {

std::vector<Edge> mapped(const ContractionMap& cm, const std::vector<Edge>& edges) {
    std::vector<Edge> out;
    for (auto [u, v] : edges) {
        if (cm.forward[u] == cm.forward[v]) continue;
        int a = cm.forward[u], b = cm.forward[v];
        out.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(Contraction, BasicMaps) {
    ContractionMap k4 = contract_matching(complete_graph(4), {{0, 1}});
    EXPECT_EQ(k4.target, complete_graph(3));
    EXPECT_EQ(k4.forward, (std::vector<int>{0, 0, 1, 2}));
    Graph p = petersen_graph();
    ContractionMap id = contract_matching(p, {});
    EXPECT_EQ(id.target, p);
    EXPECT_THROW(contract_matching(p, {{0, 1}, {1, 2}}), Error);
    EXPECT_THROW(contract_matching(p, {{0, 2}}), Error);
    ContractionMap cm = contract_matching(p, {{0, 1}, {7, 9}});
    EXPECT_EQ(cm.target.n(), 8);
    EXPECT_EQ(expand_set(cm, project_set(cm, {0})), (VertexSet{0, 1}));
    EXPECT_EQ(expand_set(cm, {2, 3}), (VertexSet{3, 4}));
}

TEST(Contraction, ProjectionRoundTripsAndModelAgreement) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = random_connected_graph(9, 0.4, rng);
        // Random maximal matching.
        std::vector<Edge> L;
        std::vector<char> used(g.n(), 0);
        auto edges = g.edges();
        std::shuffle(edges.begin(), edges.end(), rng);
        for (auto [u, v] : edges)
            if (!used[u] && !used[v] && rng() % 2) {
                used[u] = used[v] = 1;
                L.emplace_back(u, v);
            }
        ContractionMap cm = contract_matching(g, L);
        EXPECT_EQ(cm.target.n(), g.n() - static_cast<int>(L.size()));
        for (int s = 0; s < 20; ++s) {
            VertexSet x;
            for (int v = 0; v < g.n(); ++v)
                if (rng() % 3 == 0) x.push_back(v);
            EXPECT_TRUE(is_subset(x, expand_set(cm, project_set(cm, x))));
            VertexSet y;
            for (int v = 0; v < cm.target.n(); ++v)
                if (rng() % 3 == 0) y.push_back(v);
            EXPECT_EQ(project_set(cm, expand_set(cm, y)), y);
        }
        for (const Separation& s : enumerate_tight_separations(g, 3))
            EXPECT_EQ(project_separation(cm, s), project_by_model(cm.model(), s, g.n()));
        // Merged vertex adjacency.
        for (auto [u, v] : L) {
            VertexSet expected = set_difference(set_union(g.neighbors(u), g.neighbors(v)), {u, v});
            EXPECT_EQ(project_set(cm, expected), cm.target.neighbors(cm.forward[u]));
        }
        // Contraction order does not matter.
        if (L.size() >= 2) {
            ContractionMap first = contract_matching(g, {L[0]});
            std::vector<Edge> rest;
            for (std::size_t i = 1; i < L.size(); ++i) rest.push_back({first.forward[L[i].first], first.forward[L[i].second]});
            ContractionMap two = compose(first, contract_matching(first.target, rest));
            EXPECT_EQ(two.target, cm.target);
            EXPECT_EQ(two.forward, cm.forward);
        }
    }
    Graph g = complete_graph(5);
    ContractionMap cm = contract_matching(g, {{1, 2}});
    EXPECT_EQ(project_separation(cm, Separation{{}, {}, iota_set(5)}), (Separation{{}, {}, iota_set(4)}));
}

TEST(Contraction, HexTriSingleEdgeAndPermutations) {
    Family f = make_hex_tri_torus(3, 3);
    auto t = enumerate_tangles(f.graph, 4).at(0);
    auto ex = crossedges(t);
    // One crossedge: Ex shrinks by exactly that edge; the target stays 3-connected.
    ContractionMap one = contract_matching(f.graph, {ex[0]});
    EXPECT_TRUE(is_k_connected(one.target, 3));
    Tangle t1 = induced_tangle(t, one);
    std::vector<Edge> rest(ex.begin() + 1, ex.end());
    EXPECT_EQ(crossedges(t1), mapped(one, rest));
    // Independent check: filter a full enumeration of the target's tangles.
    auto all = enumerate_tangles(one.target, 4);
    int matches = 0;
    for (const auto& cand : all) {
        bool ok = true;
        for (std::size_t i = 0; i < t.universe().separators.size() && ok; ++i)
            ok = cand.contains(project_separation(one, t.minimal_member(static_cast<int>(i))));
        matches += ok;
        if (ok) {
            EXPECT_EQ(cand, t1);
        }
    }
    EXPECT_EQ(matches, 1);
    // Minimal separations transfer.
    std::vector<Separation> expected;
    for (const Separation& s : minimal_separations(t)) {
        Separation p = project_separation(one, s);
        if (count_components_without(one.target, to_bits(one.target.n(), p.S)) >= 2) expected.push_back(p);
    }
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    EXPECT_EQ(minimal_separations(t1), expected);
    // Order independence on three crossedges.
    std::vector<Edge> L{ex[0], ex[3], ex[7]};
    std::sort(L.begin(), L.end());
    std::optional<Tangle> reference;
    do {
        auto [cm, tl] = contract_sequence(t, L);
        if (!reference) {
            reference = tl;
            EXPECT_EQ(tl, induced_tangle(f.graph, t, L));
        }
        EXPECT_EQ(tl, *reference);
    } while (std::next_permutation(L.begin(), L.end()));
}

TEST(Contraction, HexTriFullContractionIsKagome) {
    for (int d = 3; d <= 4; ++d) {
        Family f = make_hex_tri_torus(d, d);
        auto t = enumerate_tangles(f.graph, 4).at(0);
        auto ex = crossedges(t);
        ContractionMap cm = contract_matching(f.graph, ex);
        EXPECT_TRUE(is_k_connected(cm.target, 3));
        EXPECT_TRUE(is_quasi_4_connected(cm.target));
        EXPECT_TRUE(is_isomorphic(cm.target, kagome_torus(d, d)));
        Tangle full = induced_tangle(t, cm);
        EXPECT_TRUE(crossedges(full).empty());
        EXPECT_EQ(region_R(full), iota_set(cm.target.n()));
    }
}

TEST(Contraction, RejectsNonCrossedges) {
    Family f = make_hex_tri_torus(3, 3);
    auto t = enumerate_tangles(f.graph, 4).at(0);
    EXPECT_THROW(induced_tangle(f.graph, t, {{0, 1}}), Error);
    EXPECT_EQ(induced_tangle(f.graph, t, {}), t);
}

TEST(PlanarityPreservation, HexTriTorus) {
    Family f = make_hex_tri_torus(3, 3);
    auto t = enumerate_tangles(f.graph, 4).at(0);
    auto r = check_planarity_preservation(t);
    EXPECT_TRUE(r.ok) << (r.violations.empty() ? "" : r.violations[0]);
    EXPECT_FALSE(r.torso_planar);
    EXPECT_FALSE(r.contracted_torso_planar);
    EXPECT_EQ(r.crossedge_checks.size(), 27u);
    for (auto& c : r.crossedge_checks) {
        EXPECT_TRUE(c.neighborhood_ok);
        EXPECT_TRUE(c.fence_triangles_ok);
    }
    for (auto& s : r.steps) EXPECT_NE(s.witness_transfer, "failed");
}

TEST(PlanarityPreservation, TruncatedPolyhedra) {
    for (auto [n, k] : std::vector<std::pair<int, int>>{{10, 2}, {6, 1}, {8, 3}, {5, 2}}) {
        auto [g, matching] = truncate_cubic(generalized_petersen(n, k));
        auto ts = enumerate_tangles(g, 4);
        ASSERT_EQ(ts.size(), 1u) << n << "," << k;
        EXPECT_EQ(crossedges(ts[0]), matching);
        auto r = check_planarity_preservation(ts[0], true);
        EXPECT_TRUE(r.ok) << (r.violations.empty() ? "" : r.violations[0]);
        EXPECT_EQ(r.torso_planar, is_planar(generalized_petersen(n, k)));
        EXPECT_EQ(r.contracted_torso_planar, r.torso_planar);
    }
}

TEST(PlanarityPreservation, WitnessTransfer) {
    // Contracting an edge of a subdivided K5 keeps a K5 model.
    Graph k5 = complete_graph(5);
    std::vector<Edge> e = k5.edges();
    e.erase(std::find(e.begin(), e.end(), Edge{0, 1}));
    e.emplace_back(0, 5);
    e.emplace_back(1, 5);
    Graph sub(6, e);
    auto w = kuratowski_witness(sub);
    ASSERT_TRUE(w);
    ContractionMap cm = contract_matching(sub, {{1, 5}});
    auto moved = transfer_witness(cm.target, cm.forward, cm.forward[1], *w);
    ASSERT_TRUE(moved);
    EXPECT_EQ(moved->pattern, "K5");
}
