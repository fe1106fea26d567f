#include <gtest/gtest.h>

#include <array>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "tangleforge/decomposition.hpp"
#include "tangleforge/generators.hpp"
#include "tangleforge/walks.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace tangleforge;
using namespace tangleforge::testing;
using tangleforge::oracle::cycle_space_rank;
using tangleforge::oracle::treewidth_oracle;
using tangleforge::oracle::tutte_oracle_bags;

namespace {

std::vector<VertexSet> sorted_bags(const TreeDecomposition& td) {
    auto b = td.bags;
    std::sort(b.begin(), b.end());
    return b;
}

Graph random_2_connected(int n, double p, std::mt19937& rng) {
    while (true) {
        Graph g = random_connected_graph(n, p, rng);
        if (is_k_connected(g, 2)) return g;
    }
}

}  // namespace

// ---------------------------------------------------------------------------

TEST(Validation, PathExamples) {
    Graph p4 = path_graph(4);
    TreeDecomposition ok{{{0, 1}, {1, 2}, {2, 3}}, {{0, 1}, {1, 2}}};
    TdReport r = validate_td(p4, ok);
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.width, 1);
    EXPECT_EQ(r.adhesion, 1);
    TreeDecomposition broken{{{0, 1}, {2, 3}, {1, 2}}, {{0, 1}, {1, 2}}};
    EXPECT_FALSE(validate_td(p4, broken).ok);  // vertex 2's bags are not connected... and 1's
    TreeDecomposition missing{{{0, 1}, {2, 3}}, {{0, 1}}};
    EXPECT_FALSE(validate_td(p4, missing).ok);  // edge 1-2 uncovered
}

TEST(BlockCutTree, Examples) {
    // Bowtie: two triangles sharing vertex 2.
    Graph bowtie(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
    TreeDecomposition bc = block_cut_tree(bowtie);
    EXPECT_EQ(sorted_bags(bc), (std::vector<VertexSet>{{0, 1, 2}, {2}, {2, 3, 4}}));
    EXPECT_TRUE(validate_td(bowtie, bc).ok);
    EXPECT_TRUE(is_canonical_td(bc, automorphisms(bowtie).action).canonical);
    std::mt19937 rng(11);
    Graph t = tree_graph(9, rng);
    TreeDecomposition tb = block_cut_tree(t);
    EXPECT_TRUE(validate_td(t, tb).ok);
    EXPECT_EQ(validate_td(t, tb).adhesion, 1);
    EXPECT_EQ(tutte_decomposition(complete_graph(4)).size(), 1);
    EXPECT_THROW(block_cut_tree(Graph(4, {{0, 1}, {2, 3}})), Error);
}

TEST(Tutte, SmallExamples) {
    // K4 minus an edge: two triangles glued on the degree-3 vertices.
    Graph k4e(4, {{0, 1}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    TreeDecomposition t = tutte_decomposition(k4e);
    EXPECT_EQ(sorted_bags(t), (std::vector<VertexSet>{{0, 1, 3}, {1, 2, 3}}));
    EXPECT_EQ(t.tree_edges.size(), 1u);
    for (int n = 4; n <= 12; ++n) EXPECT_EQ(tutte_decomposition(cycle_graph(n)).size(), 1) << n;
    // K_{2,3}: a hub bag {0,1} with three triangles... every component is a path of length 2.
    Graph k23 = complete_bipartite_graph(2, 3);
    TreeDecomposition h = tutte_decomposition(k23);
    EXPECT_EQ(h.size(), 4);
    EXPECT_TRUE(validate_td(k23, h).ok);
    EXPECT_TRUE(is_canonical_td(h, automorphisms(k23).action).canonical);
}

TEST(Tutte, MatchesSplitComponentOracle) {
    std::mt19937 rng(2024);
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 4 + static_cast<int>(rng() % 7);
        Graph g = random_2_connected(n, 0.15 + 0.3 * (rng() % 100) / 100.0, rng);
        TreeDecomposition t = tutte_decomposition(g);
        TdReport r = validate_td(g, t);
        ASSERT_TRUE(r.ok) << graph6_encode(g);
        EXPECT_LE(r.adhesion, 2);
        ASSERT_EQ(sorted_bags(t), tutte_oracle_bags(g)) << graph6_encode(g);
        for (int x = 0; x < t.size(); ++x) {
            Graph tor = td_torso(g, t, x).graph;
            bool cycle = tor.n() >= 3 && tor.m() == tor.n() && is_connected(tor) && is_k_connected(tor, 2);
            EXPECT_TRUE(tor.n() <= 2 || cycle || is_k_connected(tor, 3)) << graph6_encode(g);
        }
        EXPECT_TRUE(is_canonical_td(t, automorphisms(g).action).canonical) << graph6_encode(g);
        ++checked;
    }
    EXPECT_EQ(checked, 1000);
}

TEST(Tutte, ConnectedGraphsAreCanonical) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        Graph g = random_connected_graph(4 + static_cast<int>(rng() % 8), 0.2, rng);
        TreeDecomposition t = tutte_decomposition(g);
        TdReport r = validate_td(g, t);
        ASSERT_TRUE(r.ok);
        EXPECT_LE(r.adhesion, 2);
        EXPECT_TRUE(is_canonical_td(t, automorphisms(g).action).canonical) << graph6_encode(g);
    }
}

TEST(Nested, RejectsCrossingFamilies) {
    Graph c6 = cycle_graph(6);
    Separation a = separation_from(c6, {0, 3}, {1, 2});
    Separation b = separation_from(c6, {1, 4}, {2, 3});
    EXPECT_THROW(detail::td_from_nested(c6, {a, b}), Error);
    TreeDecomposition one = detail::td_from_nested(c6, {a, a.reversed()});
    EXPECT_EQ(one.size(), 2);
}

TEST(Refine, PerNodeAndOrbitExtension) {
    Graph bowtie(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
    TreeDecomposition bc = block_cut_tree(bowtie);
    GroupAction aut = automorphisms(bowtie).action;
    // Splitting one triangle into a path decomposition is transported to the other one.
    int tri = bc.bags[0] == VertexSet{0, 1, 2} ? 0 : 1;
    IndexedGraph tor = td_torso(bowtie, bc, tri);
    EXPECT_EQ(tor.graph.n(), 3);
    TreeDecomposition local{{{0, 1, 2}}, {}};
    TreeDecomposition out = refine_td(bowtie, bc, {{tri, local}}, aut);
    EXPECT_TRUE(validate_td(bowtie, out).ok);
    EXPECT_TRUE(detail::same_decomposition(out, bc));
    TreeDecomposition bad{{{0, 1}, {1, 2}}, {{0, 1}}};  // misses edge 0-2 of the torso
    EXPECT_THROW(refine_td(bowtie, bc, {{tri, bad}}, aut), Error);
}

TEST(Distinguishing, TwoCliquesOnATriangle) {
    Graph g = two_k6_on_triangle();
    auto ts = enumerate_tangles(g, 4);
    ASSERT_EQ(ts.size(), 2u);
    auto plain = tangle_distinguishing_td(g, ts, GroupAction{g.n(), {}});
    EXPECT_TRUE(plain.report.ok()) << plain.report.violations[0];
    EXPECT_EQ(sorted_bags(plain.td), (std::vector<VertexSet>{{0, 1, 2, 3, 4, 5}, {0, 1, 2, 6, 7, 8}}));
    auto sym = tangle_distinguishing_td(g, ts, automorphisms(g).action);
    EXPECT_TRUE(sym.report.ok());
    EXPECT_EQ(sym.report.subdivided_edges, 1);
    EXPECT_EQ(sorted_bags(sym.td), (std::vector<VertexSet>{{0, 1, 2}, {0, 1, 2, 3, 4, 5}, {0, 1, 2, 6, 7, 8}}));
    EXPECT_TRUE(is_canonical_td(sym.td, automorphisms(g).action).canonical);
    // A single tangle gives the trivial decomposition.
    EXPECT_EQ(tangle_distinguishing_td(g, {ts[0]}, GroupAction{g.n(), {}}).td.size(), 1);
}

TEST(Distinguishing, TriGadgetTorusIsAStarOnTheGrid) {
    for (int d = 3; d <= 4; ++d) {
        Family f = make_tri_gadget_torus(d, d);
        auto ts = enumerate_tangles(f.graph, 4);
        auto res = tangle_distinguishing_td(f.graph, ts, f.action);
        EXPECT_TRUE(res.report.ok()) << res.report.violations[0];
        EXPECT_TRUE(res.report.nice && res.report.efficient && res.report.invariant);
        EXPECT_FALSE(res.report.fallback_used);
        ASSERT_EQ(res.td.size(), 1 + 2 * d * d);
        int centre = -1;
        for (int t = 0; t < res.td.size(); ++t)
            if (res.td.bags[t] == tri_gadget_grid(d, d)) centre = t;
        ASSERT_GE(centre, 0);
        for (auto [a, b] : res.td.tree_edges) EXPECT_TRUE(a == centre || b == centre);
        for (int t = 0; t < res.td.size(); ++t)
            if (t != centre) {
                EXPECT_EQ(res.td.bags[t].size(), 7u);
            }
        EXPECT_TRUE(is_canonical_td(res.td, f.action).canonical);
    }
}

TEST(Distinguishing, RandomGraphsVerifyEveryProperty) {
    std::mt19937 rng(99);
    int nontrivial = 0;
    for (int trial = 0; trial < 150; ++trial) {
        Graph g = random_connected_graph(6 + static_cast<int>(rng() % 5), 0.3, rng);
        for (int k = 2; k <= 3; ++k) {
            auto ts = enumerate_tangles(g, k);
            if (ts.size() < 2) continue;
            for (const GroupAction& action : {GroupAction{g.n(), {}}, automorphisms(g).action}) {
                auto d = tangle_distinguishing_td(g, ts, action);
                EXPECT_TRUE(d.report.ok()) << graph6_encode(g) << " k=" << k << ": " << d.report.violations[0];
                EXPECT_TRUE(d.report.all_pairs_distinguished);
                EXPECT_TRUE(is_canonical_td(d.td, action).canonical) << graph6_encode(g);
            }
            ++nontrivial;
        }
    }
    EXPECT_GT(nontrivial, 20);
}

TEST(RegionStar, TriGadgetTorus) {
    for (int d = 3; d <= 4; ++d) {
        Family f = make_tri_gadget_torus(d, d);
        auto ts = enumerate_tangles(f.graph, 4);
        ASSERT_FALSE(ts.empty());
        // The tangle living on the grid.
        const Tangle* grid_tangle = nullptr;
        for (const auto& t : ts)
            if (is_subset(tri_gadget_grid(d, d), region_R(t))) grid_tangle = &t;
        ASSERT_NE(grid_tangle, nullptr);
        TreeDecomposition star = region_star_td(f.graph, *grid_tangle);
        EXPECT_TRUE(validate_td(f.graph, star).ok);
        EXPECT_EQ(validate_td(f.graph, star).adhesion, 3);
        for (auto [a, b] : star.tree_edges) EXPECT_EQ(std::min(a, b), 0);
        EXPECT_TRUE(is_canonical_td(star, f.action).canonical);
    }
}

TEST(Grohe, PostconditionOnRandomGraphs) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 5 + static_cast<int>(rng() % 8);
        Graph g = random_connected_graph(n, 0.15 + 0.35 * (rng() % 100) / 100.0, rng);
        TreeDecomposition td = grohe_decomposition(g);
        GroheCheck c = check_grohe_decomposition(g, td);
        EXPECT_TRUE(c.ok) << graph6_encode(g) << ": " << (c.violations.empty() ? "" : c.violations[0]);
    }
}

TEST(Grohe, Families) {
    for (const Graph& g : {complete_graph(6), prism_graph(), petersen_graph(), grid_graph(3, 4), two_k6_on_triangle(),
                           make_hex_tri_torus(3, 3).graph, truncate_cubic(petersen_graph()).first,
                           truncate_cubic(generalized_petersen(6, 1)).first, make_tri_gadget_torus(3, 3).graph}) {
        GroheCheck c = check_grohe_decomposition(g, grohe_decomposition(g));
        EXPECT_TRUE(c.ok) << graph6_encode(g) << ": " << (c.violations.empty() ? "" : c.violations[0]);
    }
}

TEST(Structure, TrivialCases) {
    for (int n = 4; n <= 12; ++n) {
        Family c = make_cycle(n);
        StructureResult r = structure_decomposition(c.graph, c.action, 3);
        EXPECT_EQ(r.td.size(), 1) << n;
        EXPECT_TRUE(r.canonicity.canonical);
    }
    Family hex = make_hex_tri_torus(3, 3);
    StructureResult h = structure_decomposition(hex.graph, hex.action, 3);
    EXPECT_EQ(h.td.size(), 1);
    EXPECT_TRUE(h.canonicity.canonical);
    ASSERT_EQ(h.torsos.size(), 1u);
    EXPECT_EQ(h.torsos[0].order4_tangles, 1);
    EXPECT_EQ(h.torsos[0].crossedges.size(), 27u);
    EXPECT_TRUE(h.torsos[0].contracted_quasi_4_connected);
    Graph prism = prism_graph();
    EXPECT_EQ(structure_decomposition(prism, automorphisms(prism).action, 3).td.size(), 1);
}

TEST(Structure, TwoCliquesSubdividesTheInvertedEdge) {
    Graph g = two_k6_on_triangle();
    StructureResult r = structure_decomposition(g, automorphisms(g).action, 3);
    EXPECT_TRUE(r.validation.ok);
    EXPECT_TRUE(r.canonicity.canonical);
    EXPECT_EQ(sorted_bags(r.td), (std::vector<VertexSet>{{0, 1, 2}, {0, 1, 2, 3, 4, 5}, {0, 1, 2, 6, 7, 8}}));
    OrbitBoundCheck ob = check_torso_orbit_bound(g, r.td, automorphisms(g).action);
    EXPECT_TRUE(ob.ok);
}

TEST(Structure, CycleTreeKeepsCyclesInBags) {
    for (int k = 4; k <= 8; ++k)
        for (int depth = 1; depth <= 3; ++depth) {
            Family f = make_cycle_tree(k, depth);
            StructureResult r = structure_decomposition(f.graph, f.action, 3);
            ASSERT_TRUE(r.validation.ok);
            EXPECT_TRUE(r.canonicity.canonical) << k << "," << depth;
            for (const VertexSet& cyc : cycle_tree_cycles(f)) {
                bool inside = false;
                for (const auto& b : r.td.bags) inside = inside || is_subset(cyc, b);
                EXPECT_TRUE(inside) << k << "," << depth;
            }
            EXPECT_TRUE(check_torso_orbit_bound(f.graph, r.td, f.action).ok) << k << "," << depth;
        }
}

TEST(Structure, TriGadgetTorusStar) {
    for (int d = 3; d <= 4; ++d) {
        Family f = make_tri_gadget_torus(d, d);
        StructureResult r = structure_decomposition(f.graph, f.action, 4);
        EXPECT_TRUE(r.validation.ok);
        EXPECT_TRUE(r.canonicity.canonical);
        const int faces = 2 * d * d;
        ASSERT_EQ(r.td.size(), faces + 1);
        int centres = 0;
        for (int t = 0; t < r.td.size(); ++t) {
            if (is_subset(tri_gadget_grid(d, d), r.td.bags[t])) {
                ++centres;
                continue;
            }
            // Leaf: a face gadget with its three corners; non-planar but of treewidth 4.
            const TorsoReport& leaf = r.torsos[t];
            EXPECT_EQ(leaf.size, 7);
            EXPECT_FALSE(leaf.planar);
            EXPECT_EQ(leaf.treewidth, 4);
            EXPECT_TRUE(leaf.planar_or_small);
        }
        EXPECT_EQ(centres, 1);
    }
}

TEST(Structure, RandomGraphsAreCanonical) {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        Graph g = random_connected_graph(5 + static_cast<int>(rng() % 6), 0.35, rng);
        GroupAction aut = automorphisms(g).action;
        StructureResult r = structure_decomposition(g, aut, 3);
        EXPECT_TRUE(r.validation.ok) << graph6_encode(g);
        EXPECT_TRUE(r.canonicity.canonical) << graph6_encode(g);
    }
}

TEST(Treewidth, KnownValuesAndOracle) {
    EXPECT_EQ(treewidth_exact_small(complete_graph(6)), 5);
    EXPECT_EQ(treewidth_exact_small(cycle_graph(9)), 2);
    EXPECT_EQ(treewidth_exact_small(path_graph(7)), 1);
    EXPECT_EQ(treewidth_exact_small(grid_graph(3, 3)), 3);
    EXPECT_EQ(treewidth_exact_small(grid_graph(4, 4)), 4);
    EXPECT_EQ(treewidth_exact_small(petersen_graph()), 4);
    EXPECT_THROW(treewidth_exact_small(grid_graph(5, 6)), Error);
    std::mt19937 rng(17);
    for (int trial = 0; trial < 150; ++trial) {
        Graph g = random_graph(3 + static_cast<int>(rng() % 9), 0.2 + 0.5 * (rng() % 100) / 100.0, rng);
        EliminationResult e = treewidth_elimination(g);
        ASSERT_EQ(e.width, treewidth_oracle(g)) << graph6_encode(g);
        TreeDecomposition td = td_from_elimination(g, e.order);
        TdReport r = validate_td(g, td);
        ASSERT_TRUE(r.ok) << graph6_encode(g);
        EXPECT_EQ(r.width, e.width);
    }
}

TEST(Walks, CyclesTreesAndThetas) {
    for (int n = 3; n <= 10; ++n) {
        Graph c = cycle_graph(n);
        auto w = closed_walk_generators(c, trivial_td(c));
        ASSERT_EQ(w.size(), 1u);
        EXPECT_EQ(w[0].size(), static_cast<std::size_t>(n));
        EXPECT_EQ(check_walk_generation(c, w).verdict, WalkGeneration::generates);
    }
    std::mt19937 rng(4);
    for (int n = 1; n <= 10; ++n) {
        Graph t = tree_graph(n, rng);
        EXPECT_TRUE(closed_walk_generators(t, block_cut_tree(t)).empty());
        EXPECT_EQ(check_walk_generation(t, {}).verdict, WalkGeneration::generates);
    }
    for (auto [a, b, c] : std::vector<std::array<int, 3>>{{1, 1, 1}, {1, 2, 3}, {2, 2, 2}, {0, 1, 2}, {3, 1, 2}}) {
        Graph th = theta_graph(a, b, c);
        for (const TreeDecomposition& td : {trivial_td(th), tutte_decomposition(th)}) {
            auto w = closed_walk_generators(th, td);
            EXPECT_EQ(w.size(), 2u);
            EXPECT_EQ(cycle_space_rank(th, w), th.m() - th.n() + 1);
            EXPECT_EQ(check_walk_generation(th, w).verdict, WalkGeneration::generates);
        }
    }
    // One face cycle alone does not generate the theta graph's cycles.
    Graph th = theta_graph(1, 1, 1);
    auto w = closed_walk_generators(th, trivial_td(th));
    EXPECT_EQ(check_walk_generation(th, {w[0]}).verdict, WalkGeneration::inconclusive);
}

TEST(Walks, RankMatchesCycleSpaceOnRandomGraphs) {
    std::mt19937 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        Graph g = random_connected_graph(4 + static_cast<int>(rng() % 7), 0.3, rng);
        for (const TreeDecomposition& td : {trivial_td(g), tutte_decomposition(g)}) {
            auto w = closed_walk_generators(g, td);
            for (const auto& x : w) EXPECT_NO_THROW(validate_walk(g, x));
            EXPECT_EQ(cycle_space_rank(g, w), g.m() - g.n() + 1) << graph6_encode(g);
        }
    }
}

TEST(Walks, ReductionAndCanonicalForm) {
    EXPECT_TRUE(reduce_walk({0, 1, 0}).empty());
    EXPECT_TRUE(reduce_walk({0, 1, 2, 1}).empty());
    EXPECT_EQ(reduce_walk({0, 0, 1, 2, 3, 2}), (ClosedWalk{0, 1, 2}));
    EXPECT_EQ(canonical_walk({2, 0, 1}), canonical_walk({1, 0, 2}));
    EXPECT_EQ(canonical_walk({2, 1, 0}), (ClosedWalk{0, 1, 2}));
}

TEST(Export, Dot) {
    std::string dot = td_to_dot(TreeDecomposition{{{0, 1}, {1, 2}}, {{0, 1}}});
    EXPECT_NE(dot.find("n0 -- n1"), std::string::npos);
    EXPECT_NE(dot.find("{1,2}"), std::string::npos);
}
