// Tree-decomposition constructions: block-cut tree, Tutte decomposition, canonical
// tangle-distinguishing decompositions, refinement of a decomposition by decompositions of
// its torsos, region stars, the Grohe pipeline and the canonical structure decomposition.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tangleforge/contraction.hpp"
#include "tangleforge/graph.hpp"
#include "tangleforge/minor.hpp"
#include "tangleforge/planarity.hpp"
#include "tangleforge/separation.hpp"
#include "tangleforge/symmetry.hpp"
#include "tangleforge/tangle.hpp"
#include "tangleforge/tree_decomposition.hpp"
#include "tangleforge/treewidth.hpp"

namespace tangleforge {

namespace detail {

/// The orientation of s that compares smaller; identifies the unoriented separation.
inline Separation unoriented(const Separation& s) {
    Separation r = s.reversed();
    return r < s ? r : s;
}

/// Union of the bags on t1's side of the tree edge (t1, t2).
inline Bits side_bits(int n, const std::vector<Bits>& bags, const std::vector<std::vector<int>>& adj, int t1, int t2) {
    Bits out(static_cast<std::size_t>(n));
    std::vector<int> stack{t1};
    std::vector<char> seen(bags.size(), 0);
    seen[t1] = seen[t2] = 1;
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        out |= bags[t];
        for (int w : adj[t])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return out;
}

/// The tree-decomposition whose edge-separations are exactly a nested family of proper
/// separations: start from one bag V and split, for each separation (A,B), the unique node it
/// points to into its A- and B-parts. Errors when the family is not nested.
inline TreeDecomposition td_from_nested(const Graph& g, std::vector<Separation> seps) {
    const int n = g.n();
    for (auto& s : seps) {
        validate_separation(g, s);
        if (!s.is_proper()) fail(ErrorKind::invalid_input, "nested family contains an improper separation");
        s = unoriented(s);
    }
    std::sort(seps.begin(), seps.end());
    seps.erase(std::unique(seps.begin(), seps.end()), seps.end());
    std::vector<Bits> bags{g.full_set()};
    std::vector<Edge> edges;
    for (const Separation& s : seps) {
        Bits A = to_bits(n, set_union(s.Y, s.S)), B = to_bits(n, set_union(s.S, s.Z));
        std::vector<std::vector<int>> adj(bags.size());
        for (auto [a, b] : edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        int t = 0;
        bool duplicate = false;
        std::vector<char> visited(bags.size(), 0);
        while (true) {
            visited[t] = 1;
            int next = -1;
            for (int w : adj[t]) {
                Bits P = side_bits(n, bags, adj, t, w), Q = side_bits(n, bags, adj, w, t);
                if ((P == A && Q == B) || (P == B && Q == A)) {
                    duplicate = true;
                    break;
                }
                if (visited[w]) continue;
                if ((P.is_subset_of(A) && B.is_subset_of(Q)) || (P.is_subset_of(B) && A.is_subset_of(Q))) {
                    next = w;
                    break;
                }
            }
            if (duplicate || next < 0) break;
            t = next;
        }
        if (duplicate) continue;
        Bits inA = bags[t] & A, inB = bags[t] & B;
        if (inA == bags[t] && inB == bags[t]) fail(ErrorKind::property_violation, "separation family is not nested");
        std::vector<std::pair<std::size_t, Bits>> far;  // edge index, far side
        for (std::size_t e = 0; e < edges.size(); ++e) {
            auto [a, b] = edges[e];
            if (a == t || b == t) far.emplace_back(e, side_bits(n, bags, adj, a == t ? b : a, t));
        }
        int t2 = static_cast<int>(bags.size());
        bags[t] = inA;
        bags.push_back(inB);
        for (auto& [e, q] : far) {
            if (q.is_subset_of(B) && !q.is_subset_of(A)) {
                if (edges[e].first == t)
                    edges[e].first = t2;
                else
                    edges[e].second = t2;
            } else if (!q.is_subset_of(A)) {
                fail(ErrorKind::property_violation, "separation family is not nested");
            }
        }
        edges.emplace_back(t, t2);
    }
    TreeDecomposition td;
    for (const Bits& b : bags) td.bags.push_back(to_set(b));
    td.tree_edges = edges;
    TdReport r = validate_td(g, td);
    if (!r.ok) fail(ErrorKind::property_violation, "nested family does not yield a tree-decomposition: " + r.violations[0]);
    std::vector<Separation> got;
    for (const Separation& s : r.edge_separations) got.push_back(unoriented(s));
    std::sort(got.begin(), got.end());
    if (got != seps) fail(ErrorKind::property_violation, "tree built from a nested family has different edge-separations");
    return td;
}

/// Subdivides every tree edge whose edge-separation is mapped to its reverse by some group
/// element, inserting a node whose bag is the adhesion set. Returns the number of subdivisions.
inline int subdivide_inverted_edges(const Graph& g, TreeDecomposition& td, const GroupAction& action) {
    if (action.generators.empty()) return 0;
    std::vector<Edge> edges;
    int count = 0;
    for (auto [a, b] : td.tree_edges) {
        Separation s = edge_separation(g, td, a, b);
        auto orbit = orbit_of(action, s);
        if (std::binary_search(orbit.begin(), orbit.end(), s.reversed())) {
            int mid = td.size();
            td.bags.push_back(s.S);
            edges.emplace_back(a, mid);
            edges.emplace_back(mid, b);
            ++count;
        } else {
            edges.emplace_back(a, b);
        }
    }
    td.tree_edges = edges;
    return count;
}

/// Bags mapped from torso coordinates to host coordinates.
inline TreeDecomposition to_host(TreeDecomposition local, const VertexSet& to_host_map) {
    for (auto& b : local.bags) {
        VertexSet h;
        for (int v : b) h.push_back(to_host_map[v]);
        b = normalized(h);
    }
    return local;
}

/// Decomposition compared up to node numbering: multiset of bags and of bag pairs on edges.
inline bool same_decomposition(const TreeDecomposition& a, const TreeDecomposition& b) {
    auto describe = [](const TreeDecomposition& td) {
        std::vector<VertexSet> bags = td.bags;
        std::sort(bags.begin(), bags.end());
        std::vector<std::pair<VertexSet, VertexSet>> edges;
        for (auto [x, y] : td.tree_edges) edges.emplace_back(std::min(td.bags[x], td.bags[y]), std::max(td.bags[x], td.bags[y]));
        std::sort(edges.begin(), edges.end());
        return std::make_pair(bags, edges);
    };
    return describe(a) == describe(b);
}

/// Centre of the subtree of `piece` formed by the nodes whose bag contains `adhesion`:
/// a node, or an edge (two nodes) when the subtree has two centres.
inline std::vector<int> attachment_centre(const TreeDecomposition& piece, const VertexSet& adhesion) {
    std::vector<char> holds(piece.size(), 0);
    int count = 0;
    for (int t = 0; t < piece.size(); ++t)
        if (is_subset(adhesion, piece.bags[t])) {
            holds[t] = 1;
            ++count;
        }
    if (count == 0) fail(ErrorKind::invalid_input, "an adhesion set lies in no bag of the torso decomposition");
    auto adj = piece.tree_adjacency();
    while (count > 2) {
        std::vector<int> leaves;
        for (int t = 0; t < piece.size(); ++t) {
            if (!holds[t]) continue;
            int d = 0;
            for (int w : adj[t]) d += holds[w];
            if (d <= 1) leaves.push_back(t);
        }
        for (int t : leaves) holds[t] = 0;
        count -= static_cast<int>(leaves.size());
    }
    std::vector<int> out;
    for (int t = 0; t < piece.size(); ++t)
        if (holds[t]) out.push_back(t);
    return out;
}

/// Replaces every node t of td by the tree pieces[t] (host coordinates), and joins the two
/// pieces of every tree edge at the centres of the subtrees holding the adhesion set; a
/// central edge is subdivided by its adhesion. Centres are computed on the unmodified pieces,
/// so the result is canonical whenever td and the family of pieces are.
inline TreeDecomposition glue_pieces(const Graph& g, const TreeDecomposition& td, std::vector<TreeDecomposition> pieces) {
    require(static_cast<int>(pieces.size()) == td.size(), "one piece per node is required");
    struct Attach {
        int piece;
        std::vector<int> centre;
    };
    std::vector<std::pair<Attach, Attach>> joins;
    for (auto [a, b] : td.tree_edges) {
        VertexSet adh = set_intersection(td.bags[a], td.bags[b]);
        joins.push_back({{a, attachment_centre(pieces[a], adh)}, {b, attachment_centre(pieces[b], adh)}});
    }
    // Subdivide central edges (shared between joins using the same edge).
    std::vector<std::map<Edge, int>> mids(pieces.size());
    auto resolve = [&](const Attach& at) -> int {
        if (at.centre.size() == 1) return at.centre[0];
        Edge e{std::min(at.centre[0], at.centre[1]), std::max(at.centre[0], at.centre[1])};
        auto it = mids[at.piece].find(e);
        if (it != mids[at.piece].end()) return it->second;
        TreeDecomposition& p = pieces[at.piece];
        int mid = p.size();
        p.bags.push_back(set_intersection(p.bags[e.first], p.bags[e.second]));
        for (auto& te : p.tree_edges)
            if (std::min(te.first, te.second) == e.first && std::max(te.first, te.second) == e.second) {
                int far = te.second;
                te.second = mid;
                p.tree_edges.emplace_back(mid, far);
                break;
            }
        mids[at.piece].emplace(e, mid);
        return mid;
    };
    std::vector<Edge> cross;
    for (auto& [x, y] : joins) cross.emplace_back(resolve(x), resolve(y));
    TreeDecomposition out;
    std::vector<int> offset(pieces.size());
    for (std::size_t t = 0; t < pieces.size(); ++t) {
        offset[t] = out.size();
        for (const auto& b : pieces[t].bags) out.bags.push_back(b);
        for (auto [a, b] : pieces[t].tree_edges) out.tree_edges.emplace_back(offset[t] + a, offset[t] + b);
    }
    for (std::size_t e = 0; e < td.tree_edges.size(); ++e) {
        auto [a, b] = td.tree_edges[e];
        out.tree_edges.emplace_back(offset[a] + cross[e].first, offset[b] + cross[e].second);
    }
    TdReport r = validate_td(g, out);
    if (!r.ok) fail(ErrorKind::property_violation, "glued decomposition is invalid: " + r.violations[0]);
    return out;
}

/// Node orbits of a canonical decomposition under the lifted generators; each orbit listed by
/// its smallest node. Errors when the decomposition is not canonical.
inline std::vector<std::vector<int>> node_orbits(const TreeDecomposition& td, const GroupAction& action) {
    CanonicityResult c = is_canonical_td(td, action);
    if (!c.canonical) fail(ErrorKind::invalid_input, "decomposition is not canonical under the action");
    std::vector<int> parent = iota_set(td.size());
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& m : c.node_maps)
        for (int t = 0; t < td.size(); ++t) parent[find(t)] = find(m[t]);
    std::map<int, std::vector<int>> groups;
    for (int t = 0; t < td.size(); ++t) groups[find(t)].push_back(t);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups) out.push_back(members);
    std::sort(out.begin(), out.end());
    return out;
}

/// The setwise stabilizer of `bag` restricted to it, as an action on bag-local indices.
/// `group` lists every element of the acting group.
inline GroupAction stabilizer_on(const std::vector<Permutation>& group, const VertexSet& bag) {
    std::vector<int> local(group.empty() ? 0 : group[0].size(), -1);
    for (std::size_t i = 0; i < bag.size(); ++i) local[bag[i]] = static_cast<int>(i);
    std::set<Permutation> elements;
    for (const auto& p : group) {
        if (image(p, bag) != bag) continue;
        Permutation q(bag.size());
        for (std::size_t i = 0; i < bag.size(); ++i) q[i] = local[p[bag[i]]];
        elements.insert(q);
    }
    GroupAction out{static_cast<int>(bag.size()), {}};
    std::set<Permutation> reached{identity_permutation(out.n)};
    for (const auto& q : elements) {
        if (reached.count(q)) continue;
        out.generators.push_back(q);
        auto all = enumerate_group(out);
        reached = {all.begin(), all.end()};
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Block-cut tree and Tutte decomposition

/// Block-cut tree: one node per block (bag = its vertices) and one per cut vertex (bag {c}),
/// joined when the cut vertex lies in the block. Adhesion 1; invariant under automorphisms.
inline TreeDecomposition block_cut_tree(const Graph& g) {
    if (g.n() == 0) fail(ErrorKind::invalid_input, "block-cut tree of the empty graph");
    if (!is_connected(g)) fail(ErrorKind::invalid_input, "block-cut tree needs a connected graph");
    BlockStructure bs = biconnected_components(g);
    TreeDecomposition td;
    td.bags = bs.blocks;
    const int blocks = td.size();
    for (int c : bs.cut_vertices) {
        int id = td.size();
        td.bags.push_back({c});
        for (int b = 0; b < blocks; ++b)
            if (contains(td.bags[b], c)) td.tree_edges.emplace_back(b, id);
    }
    return td;
}

namespace detail {

/// Tutte decomposition of a 2-connected graph (or K1/K2): the tree of its totally nested
/// 2-separations. (C | V∖S∖C) for a component C of G−S is totally nested exactly when no
/// 2-separator has one vertex in C and one in the rest.
inline TreeDecomposition tutte_block(const Graph& h) {
    if (h.n() <= 3 || is_k_connected(h, 3)) return trivial_td(h);
    const int n = h.n();
    std::vector<Edge> separators;
    std::vector<std::vector<Bits>> comps;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            auto c = components_without(h, to_bits(n, {u, v}));
            if (c.size() >= 2) {
                separators.emplace_back(u, v);
                comps.push_back(std::move(c));
            }
        }
    std::vector<Separation> nested;
    for (std::size_t i = 0; i < separators.size(); ++i) {
        Bits S = to_bits(n, {separators[i].first, separators[i].second});
        for (const Bits& c : comps[i]) {
            Bits rest = h.full_set() - S - c;
            bool crossed = false;
            for (auto [x, y] : separators) {
                if ((c.test(x) && rest.test(y)) || (c.test(y) && rest.test(x))) {
                    crossed = true;
                    break;
                }
            }
            if (!crossed) nested.push_back(separation_from_bits(h, S, c));
        }
    }
    return td_from_nested(h, nested);
}

}  // namespace detail

/// Canonical decomposition of adhesion <= 2 whose torsos are K1/K2, cycles or 3-connected:
/// the block-cut tree with every block replaced by its tree of totally nested 2-separations.
inline TreeDecomposition tutte_decomposition(const Graph& g) {
    TreeDecomposition bc = block_cut_tree(g);
    std::vector<TreeDecomposition> pieces;
    for (int t = 0; t < bc.size(); ++t) {
        if (bc.bags[t].size() <= 2) {
            pieces.push_back({{bc.bags[t]}, {}});
            continue;
        }
        IndexedGraph block = induced_subgraph(g, bc.bags[t]);
        pieces.push_back(detail::to_host(detail::tutte_block(block.graph), block.to_host));
    }
    if (bc.size() == 1) return pieces[0];
    return detail::glue_pieces(g, bc, std::move(pieces));
}

// ---------------------------------------------------------------------------
// Refinement

/// Refines td by decompositions of its torsos. per_node maps a node to a decomposition of its
/// torso (torso-local indices, as produced by td_torso); nodes in the same orbit as a given
/// node receive the transported decomposition (the action must be canonical on td), other
/// nodes keep their bag. Pieces are joined at the centre of the subtree holding each
/// adhesion set. Errors when a piece is not a decomposition of its torso or two transports
/// disagree.
inline TreeDecomposition refine_td(const Graph& g, const TreeDecomposition& td, const std::map<int, TreeDecomposition>& per_node,
                                   const GroupAction& action) {
    TdReport base = validate_td(g, td);
    if (!base.ok) fail(ErrorKind::invalid_input, "decomposition to refine is invalid: " + base.violations[0]);
    std::vector<std::optional<TreeDecomposition>> pieces(td.size());
    std::vector<std::vector<int>> node_maps;
    if (!action.generators.empty()) {
        CanonicityResult c = is_canonical_td(td, action);
        if (!c.canonical) fail(ErrorKind::invalid_input, "decomposition to refine is not canonical under the action");
        node_maps = c.node_maps;
    }
    for (const auto& [t, local] : per_node) {
        if (t < 0 || t >= td.size()) fail(ErrorKind::invalid_input, "per-node decomposition names a missing node");
        IndexedGraph tor = td_torso(g, td, t);
        TdReport r = validate_td(tor.graph, local);
        if (!r.ok) fail(ErrorKind::invalid_input, "per-node decomposition of node " + std::to_string(t) + " is not a decomposition of its torso");
        TreeDecomposition host = detail::to_host(local, tor.to_host);
        if (pieces[t]) {
            if (!detail::same_decomposition(*pieces[t], host))
                fail(ErrorKind::invalid_input, "orbit-extension conflict at node " + std::to_string(t));
            continue;
        }
        pieces[t] = host;
        std::vector<int> queue{t};
        for (std::size_t q = 0; q < queue.size(); ++q) {
            int x = queue[q];
            for (std::size_t i = 0; i < node_maps.size(); ++i) {
                int y = node_maps[i][x];
                TreeDecomposition img = *pieces[x];
                for (auto& b : img.bags) b = image(action.generators[i], b);
                if (!pieces[y]) {
                    pieces[y] = std::move(img);
                    queue.push_back(y);
                } else if (!detail::same_decomposition(*pieces[y], img)) {
                    fail(ErrorKind::invalid_input, "orbit-extension conflict at node " + std::to_string(y));
                }
            }
        }
    }
    std::vector<TreeDecomposition> all;
    for (int t = 0; t < td.size(); ++t) all.push_back(pieces[t] ? *pieces[t] : TreeDecomposition{{td.bags[t]}, {}});
    return detail::glue_pieces(g, td, std::move(all));
}

// ---------------------------------------------------------------------------
// Tangle-distinguishing decompositions

/// Post-hoc verification of a tangle-distinguishing decomposition.
struct DistinguishingReport {
    bool nice = true;           ///< every edge-separation distinguishes some pair of input tangles
    bool efficient = true;      ///< ... and does so efficiently
    bool distinct = true;       ///< edge-separations pairwise distinct (subdivided edges counted once)
    bool nondegenerate = true;  ///< no edge-separation is degenerate in either orientation
    bool invariant = true;      ///< edge-separation family invariant under the action
    bool all_pairs_distinguished = true;
    bool fallback_used = false;  ///< greedy choice failed and the exhaustive search decided
    int candidate_orbits = 0;
    int chosen_orbits = 0;
    int subdivided_edges = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

struct DistinguishingResult {
    TreeDecomposition td;
    DistinguishingReport report;
};

/// Largest number of candidate orbits for the exhaustive fallback.
inline constexpr int kExhaustiveOrbitCap = 20;

/// A decomposition whose edge-separations efficiently distinguish the given tangles, built
/// from a nested, action-invariant family of efficient distinguishers. Candidates are the
/// separations cutting off the component chosen by either tangle at a separator of minimum
/// distinguishing order; their orbits are taken greedily (by order, then canonical order)
/// while they stay nested; if the greedy family misses a pair and there are at most 20
/// candidate orbits, every nested union of orbits is tried (largest first, then
/// lexicographically) and the fallback is flagged. Tree edges inverted by the action are
/// subdivided. Errors when no nested invariant family distinguishes every pair.
inline DistinguishingResult tangle_distinguishing_td(const Graph& g, const std::vector<Tangle>& tangles, const GroupAction& action) {
    DistinguishingResult res;
    if (action.n != g.n()) fail(ErrorKind::invalid_input, "action does not act on the graph's vertices");
    for (std::size_t i = 0; i < action.generators.size(); ++i)
        if (!is_automorphism(g, action.generators[i]))
            fail(ErrorKind::invalid_input, "generator " + std::to_string(i) + " is not an automorphism");
    for (const auto& t : tangles) {
        if (!(t.graph() == g)) fail(ErrorKind::invalid_input, "tangle does not belong to the graph");
        if (t.order() != tangles[0].order()) fail(ErrorKind::invalid_input, "tangles must share their order");
    }
    for (std::size_t i = 0; i < tangles.size(); ++i)
        for (std::size_t j = i + 1; j < tangles.size(); ++j)
            if (tangles[i] == tangles[j]) fail(ErrorKind::invalid_input, "tangles must be pairwise distinct");
    if (tangles.size() <= 1) {
        res.td = trivial_td(g);
        return res;
    }
    const int n = g.n();
    const int T = static_cast<int>(tangles.size());
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < T; ++i)
        for (int j = i + 1; j < T; ++j) pairs.emplace_back(i, j);

    // Candidate distinguishers, then their closure under the action.
    std::set<Separation> cand;
    for (auto [i, j] : pairs) {
        const Tangle &a = tangles[i], &b = tangles[j];
        int k = distinguishing_order(a, b);
        if (k < 0) fail(ErrorKind::property_violation, "two distinct tangles are not distinguished");
        const auto& u = a.universe();
        for (std::size_t s = 0; s < u.separators.size(); ++s) {
            if (static_cast<int>(u.separators[s].size()) != k || a.choice()[s] == b.choice()[s]) continue;
            Bits S = to_bits(n, u.separators[s]);
            cand.insert(detail::unoriented(separation_from_bits(g, S, a.chosen(static_cast<int>(s)))));
            cand.insert(detail::unoriented(separation_from_bits(g, S, b.chosen(static_cast<int>(s)))));
        }
    }
    std::vector<std::vector<Separation>> orbits;
    {
        std::set<Separation> done;
        for (const Separation& s : cand) {
            if (done.count(s)) continue;
            std::set<Separation> orb{s};
            std::vector<Separation> queue{s};
            for (std::size_t q = 0; q < queue.size(); ++q)
                for (const auto& p : action.generators) {
                    Separation img = detail::unoriented(image(p, queue[q]));
                    if (orb.insert(img).second) queue.push_back(img);
                }
            done.insert(orb.begin(), orb.end());
            orbits.emplace_back(orb.begin(), orb.end());
        }
    }
    std::sort(orbits.begin(), orbits.end(), [](const auto& x, const auto& y) {
        if (x[0].order() != y[0].order()) return x[0].order() < y[0].order();
        return x[0] < y[0];
    });
    const int O = static_cast<int>(orbits.size());
    res.report.candidate_orbits = O;

    auto nested_sets = [](const std::vector<Separation>& x, const std::vector<Separation>& y) {
        for (const auto& a : x)
            for (const auto& b : y)
                if (a != b && !is_nested(a, b)) return false;
        return true;
    };
    std::vector<char> self_ok(O);
    for (int o = 0; o < O; ++o) self_ok[o] = nested_sets(orbits[o], orbits[o]);
    std::vector<std::vector<char>> compat(O, std::vector<char>(O, 0));
    for (int x = 0; x < O; ++x)
        for (int y = x + 1; y < O; ++y) compat[x][y] = compat[y][x] = nested_sets(orbits[x], orbits[y]);
    // covers[o][p]: some member of orbit o distinguishes pair p.
    std::vector<std::vector<char>> covers(O, std::vector<char>(pairs.size(), 0));
    for (int o = 0; o < O; ++o)
        for (std::size_t p = 0; p < pairs.size(); ++p)
            for (const auto& s : orbits[o])
                if (s.order() < tangles[0].order() && distinguishes(s, tangles[pairs[p].first], tangles[pairs[p].second])) {
                    covers[o][p] = 1;
                    break;
                }
    auto covers_all = [&](const std::vector<int>& chosen) {
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            bool hit = false;
            for (int o : chosen) hit = hit || covers[o][p];
            if (!hit) return false;
        }
        return true;
    };

    std::vector<int> chosen;
    for (int o = 0; o < O; ++o) {
        if (!self_ok[o]) continue;
        bool fits = true;
        for (int c : chosen) fits = fits && compat[o][c];
        if (fits) chosen.push_back(o);
    }
    if (!covers_all(chosen)) {
        if (O > kExhaustiveOrbitCap)
            fail(ErrorKind::property_violation, "greedy distinguisher search failed and there are too many candidate orbits for the exhaustive fallback");
        res.report.fallback_used = true;
        std::optional<std::vector<int>> best;
        for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << O); ++mask) {
            std::vector<int> pick;
            bool ok = true;
            for (int o = 0; o < O && ok; ++o)
                if (mask >> o & 1) {
                    ok = self_ok[o];
                    for (int c : pick) ok = ok && compat[o][c];
                    pick.push_back(o);
                }
            if (!ok || !covers_all(pick)) continue;
            if (!best || pick.size() > best->size() || (pick.size() == best->size() && pick < *best)) best = pick;
        }
        if (!best) fail(ErrorKind::property_violation, "no nested invariant family of efficient distinguishers separates every tangle pair");
        chosen = *best;
    }
    res.report.chosen_orbits = static_cast<int>(chosen.size());
    std::vector<Separation> family;
    for (int o : chosen) family.insert(family.end(), orbits[o].begin(), orbits[o].end());
    res.td = detail::td_from_nested(g, family);
    res.report.subdivided_edges = detail::subdivide_inverted_edges(g, res.td, action);

    // Verification.
    DistinguishingReport& rep = res.report;
    auto violate = [&](bool& flag, const std::string& why) {
        if (flag) rep.violations.push_back(why);
        flag = false;
    };
    TdReport tr = validate_td(g, res.td);
    if (!tr.ok) rep.violations.push_back("result is not a tree-decomposition");
    std::set<Separation> distinct;
    for (const Separation& s : tr.edge_separations) {
        distinct.insert(detail::unoriented(s));
        bool some = false, some_eff = false;
        for (auto [i, j] : pairs) {
            if (distinguishes(s, tangles[i], tangles[j])) {
                some = true;
                if (efficiently_distinguishes(s, tangles[i], tangles[j])) some_eff = true;
            }
        }
        if (!some) violate(rep.nice, "an edge-separation distinguishes no tangle pair");
        if (!some_eff) violate(rep.efficient, "an edge-separation is not an efficient distinguisher");
        if (is_degenerate(g, s) || is_degenerate(g, s.reversed())) violate(rep.nondegenerate, "an edge-separation is degenerate");
    }
    if (static_cast<int>(distinct.size()) != static_cast<int>(tr.edge_separations.size()) - rep.subdivided_edges)
        violate(rep.distinct, "edge-separations are not pairwise distinct");
    std::vector<Separation> both;
    for (const Separation& s : tr.edge_separations) {
        both.push_back(s);
        both.push_back(s.reversed());
    }
    if (!invariant_family(action, both)) violate(rep.invariant, "edge-separations are not invariant under the action");
    for (auto [i, j] : pairs) {
        bool hit = false;
        for (const Separation& s : tr.edge_separations) hit = hit || distinguishes(s, tangles[i], tangles[j]);
        if (!hit) violate(rep.all_pairs_distinguished, "a tangle pair is not distinguished");
    }
    return res;
}

// ---------------------------------------------------------------------------
// Region star

/// Star decomposition of a tangle of order 4 of a 3-connected graph: centre R_T, and one leaf
/// C ∪ N(C) per component C of G − R_T. Every leaf adhesion must be a fence.
inline TreeDecomposition region_star_td(const Graph& g, const Tangle& t) {
    if (!(t.graph() == g)) fail(ErrorKind::invalid_input, "tangle does not belong to the graph");
    detail::require_order4_3connected(t);
    const int n = g.n();
    VertexSet r = region_R(t);
    if (r.empty()) fail(ErrorKind::property_violation, "region of the tangle is empty");
    TreeDecomposition td{{r}, {}};
    auto comps = components_without(g, to_bits(n, r));
    if (comps.empty()) return td;
    auto nd = nondegenerate_minimal(t);
    std::vector<int> partner(n, -1);
    for (auto [a, b] : crossedges(t)) {
        partner[a] = b;
        partner[b] = a;
    }
    std::set<VertexSet> fences;
    for (const Separation& s : nd) {
        VertexSet f;
        for (int v : s.S) f.push_back(partner[v] >= 0 ? partner[v] : v);
        fences.insert(normalized(f));
    }
    for (const Bits& c : comps) {
        Bits nb = neighborhood(g, c);
        VertexSet adh = to_set(nb);
        if (adh.size() != 3 || !fences.count(adh)) fail(ErrorKind::property_violation, "a leaf adhesion of the region star is not a fence");
        td.tree_edges.emplace_back(0, td.size());
        td.bags.push_back(to_set(c | nb));
    }
    return td;
}

// ---------------------------------------------------------------------------
// Grohe decomposition

namespace detail {

inline bool is_cycle_graph(const Graph& h) {
    if (h.n() < 3 || !is_connected(h)) return false;
    for (int v = 0; v < h.n(); ++v)
        if (h.degree(v) != 2) return false;
    return true;
}

/// Fan triangulation of a cycle: bags {c0, c_i, c_{i+1}} along a path.
inline TreeDecomposition cycle_fan(const Graph& h) {
    std::vector<int> cyc{0};
    int prev = -1, cur = 0;
    while (static_cast<int>(cyc.size()) < h.n()) {
        int next = h.neighbors(cur)[0] != prev ? h.neighbors(cur)[0] : h.neighbors(cur)[1];
        cyc.push_back(next);
        prev = cur;
        cur = next;
    }
    TreeDecomposition td;
    for (std::size_t i = 1; i + 1 < cyc.size(); ++i) {
        td.bags.push_back(normalized({cyc[0], cyc[i], cyc[i + 1]}));
        if (i > 1) td.tree_edges.emplace_back(static_cast<int>(i) - 2, static_cast<int>(i) - 1);
    }
    return td;
}

/// Refines td (a decomposition of h) by decomposing every torso with `sub`, which receives the
/// node index and the torso. Requires every torso to be strictly smaller than h.
template <class F>
TreeDecomposition refine_by_torsos(const Graph& h, const TreeDecomposition& td, F&& sub) {
    if (td.size() == 1) return td;
    std::vector<TreeDecomposition> pieces;
    for (int t = 0; t < td.size(); ++t) {
        IndexedGraph tor = td_torso(h, td, t);
        if (tor.graph.n() >= h.n()) fail(ErrorKind::property_violation, "decomposition step made no progress");
        pieces.push_back(to_host(sub(t, tor.graph), tor.to_host));
    }
    return glue_pieces(h, td, std::move(pieces));
}

inline TreeDecomposition grohe_rec(const Graph& h, long long budget);

/// Star on the region torso k: centre = k minus the larger endpoint of every crossedge,
/// leaves = components of the rest with their neighbourhoods.
inline TreeDecomposition endpoint_selection(const Graph& k, const std::vector<Edge>& matching, long long budget) {
    if (matching.empty()) return grohe_rec(k, budget);
    Bits drop(static_cast<std::size_t>(k.n()));
    for (auto [a, b] : matching) drop.set(std::max(a, b));
    Bits keep = k.full_set() - drop;
    TreeDecomposition star{{to_set(keep)}, {}};
    for (const Bits& c : components_within(k, drop)) {
        star.tree_edges.emplace_back(0, star.size());
        star.bags.push_back(to_set(c | neighborhood(k, c)));
    }
    return refine_by_torsos(k, star, [&](int, const Graph& torso) { return grohe_rec(torso, budget); });
}

/// Decomposition of a connected graph with adhesion <= 3 whose torsos are quasi-4-connected
/// or have at most 4 vertices.
inline TreeDecomposition grohe_rec(const Graph& h, long long budget) {
    if (h.n() <= 4 || is_quasi_4_connected(h)) return trivial_td(h);
    if (!is_k_connected(h, 3)) {
        TreeDecomposition tutte = tutte_decomposition(h);
        if (tutte.size() == 1) {
            if (!is_cycle_graph(h)) fail(ErrorKind::property_violation, "Tutte torso is neither a cycle nor 3-connected");
            return cycle_fan(h);
        }
        return refine_by_torsos(h, tutte, [&](int, const Graph& torso) { return grohe_rec(torso, budget); });
    }
    auto ts = enumerate_tangles(h, 4, budget);
    if (ts.empty()) {
        EliminationResult e = treewidth_elimination(h);
        if (e.width > 3) fail(ErrorKind::property_violation, "3-connected graph without an order-4 tangle has treewidth above 3");
        return td_from_elimination(h, e.order);
    }
    if (ts.size() >= 2) {
        auto d = tangle_distinguishing_td(h, ts, GroupAction{h.n(), {}});
        return refine_by_torsos(h, d.td, [&](int, const Graph& torso) { return grohe_rec(torso, budget); });
    }
    TreeDecomposition star = region_star_td(h, ts[0]);
    const VertexSet& region = star.bags[0];
    std::vector<Edge> local;
    for (auto [a, b] : crossedges(ts[0])) {
        int la = static_cast<int>(std::lower_bound(region.begin(), region.end(), a) - region.begin());
        int lb = static_cast<int>(std::lower_bound(region.begin(), region.end(), b) - region.begin());
        local.emplace_back(la, lb);
    }
    if (star.size() == 1) return endpoint_selection(h, local, budget);
    return refine_by_torsos(h, star, [&](int t, const Graph& torso) {
        return t == 0 ? endpoint_selection(torso, local, budget) : grohe_rec(torso, budget);
    });
}

}  // namespace detail

/// Decomposition of adhesion <= 3 whose torsos are quasi-4-connected or have at most 4
/// vertices: Tutte decomposition, then per 3-connected torso a tangle-distinguishing tree,
/// a region star per single tangle, and finally one endpoint of every crossedge moved out of
/// the region (the lower-indexed endpoint stays, so this step is not canonical).
inline TreeDecomposition grohe_decomposition(const Graph& g, long long budget = kTangleSearchBudget) {
    if (g.n() == 0) fail(ErrorKind::invalid_input, "decomposition of the empty graph");
    if (!is_connected(g)) fail(ErrorKind::invalid_input, "decomposition needs a connected graph");
    return detail::grohe_rec(g, budget);
}

namespace detail {

/// Constructive faithful model of the torso at t: every torso vertex starts as its own branch
/// set; for every missing adhesion edge xy, a shortest path from x's branch set to y's through
/// unused vertices beyond that adhesion is added to x's branch set. Returns nothing when some
/// edge cannot be realised this way.
inline std::optional<MinorModel> greedy_torso_model(const Graph& g, const TreeDecomposition& td, int t) {
    const VertexSet& bag = td.bags[t];
    IndexedGraph tor = td_torso(g, td, t);
    std::vector<int> owner(g.n(), -1);
    MinorModel model;
    for (std::size_t i = 0; i < bag.size(); ++i) {
        owner[bag[i]] = static_cast<int>(i);
        model.branch_sets.push_back({bag[i]});
    }
    auto touching = [&](int x, int y) {
        for (int v : model.branch_sets[x])
            for (int w : g.neighbors(v))
                if (owner[w] == y) return true;
        return false;
    };
    const auto adjacency = td.tree_adjacency();
    for (int w : adjacency[t]) {
        auto side = side_of(td, w, t);
        Bits beyond(static_cast<std::size_t>(g.n()));
        for (int u = 0; u < td.size(); ++u)
            if (side[u])
                for (int v : td.bags[u]) beyond.set(v);
        VertexSet adh = set_intersection(bag, td.bags[w]);
        for (std::size_t i = 0; i < adh.size(); ++i)
            for (std::size_t j = i + 1; j < adh.size(); ++j) {
                int x = owner[adh[i]], y = owner[adh[j]];
                if (touching(x, y)) continue;
                std::vector<int> parent(g.n(), -2);
                std::vector<int> queue;
                for (int v : model.branch_sets[x]) {
                    parent[v] = -1;
                    queue.push_back(v);
                }
                int hit = -1;
                for (std::size_t q = 0; q < queue.size() && hit < 0; ++q)
                    for (int nb : g.neighbors(queue[q])) {
                        if (owner[nb] == y) {
                            hit = queue[q];
                            break;
                        }
                        if (parent[nb] != -2 || owner[nb] >= 0 || !beyond.test(nb)) continue;
                        parent[nb] = queue[q];
                        queue.push_back(nb);
                    }
                if (hit < 0) return std::nullopt;
                for (int v = hit; parent[v] != -1; v = parent[v]) {
                    owner[v] = x;
                    model.branch_sets[x].push_back(v);
                }
            }
    }
    for (auto& b : model.branch_sets) b = normalized(b);
    if (!is_valid_model(g, tor.graph, model)) return std::nullopt;
    return model;
}

}  // namespace detail

/// Outcome of the Grohe postcondition check for one torso.
struct TorsoCheck {
    int node = 0;
    int size = 0;
    bool quasi_4_connected = false;
    bool minor_checked = false;
    bool minor_certified = false;
};

struct GroheCheck {
    bool ok = true;
    std::vector<std::string> violations;
    TdReport td;
    std::vector<TorsoCheck> torsos;
};

/// Checks adhesion <= 3, that every torso is quasi-4-connected or has at most 4 vertices, and
/// certifies torsos with at most `minor_check_limit` vertices as minors of g.
inline GroheCheck check_grohe_decomposition(const Graph& g, const TreeDecomposition& td, int minor_check_limit = kMinorSearchFreeRootCap) {
    GroheCheck c;
    auto violate = [&](const std::string& why) {
        c.ok = false;
        c.violations.push_back(why);
    };
    c.td = validate_td(g, td);
    if (!c.td.ok) {
        violate("not a tree-decomposition: " + c.td.violations[0]);
        return c;
    }
    if (c.td.adhesion > 3) violate("adhesion exceeds 3");
    for (int t = 0; t < td.size(); ++t) {
        IndexedGraph tor = td_torso(g, td, t);
        TorsoCheck tc{t, tor.graph.n()};
        tc.quasi_4_connected = is_quasi_4_connected(tor.graph);
        if (tc.size > 4 && !tc.quasi_4_connected) violate("torso " + std::to_string(t) + " is neither small nor quasi-4-connected");
        if (tc.size <= minor_check_limit) {
            tc.minor_checked = true;
            // Faithful models (each torso vertex inside its own branch set) are tried first;
            // they are the cheap and usual certificate.
            tc.minor_certified = detail::greedy_torso_model(g, td, t).has_value() ||
                                 find_minor_model(g, tor.graph, true, tor.to_host).has_value() ||
                                 find_minor_model(g, tor.graph).has_value();
            if (!tc.minor_certified) violate("torso " + std::to_string(t) + " is not a minor of the graph");
        }
        c.torsos.push_back(tc);
    }
    return c;
}

// ---------------------------------------------------------------------------
// Structure decomposition

/// Per-torso report of the structure decomposition.
struct TorsoReport {
    int node = 0;
    int size = 0;
    bool three_connected = false;
    int order4_tangles = -1;            ///< counted on 3-connected torsos with >= 5 vertices
    std::vector<Edge> crossedges;       ///< M_H in host coordinates (unique order-4 tangle only)
    bool contracted_quasi_4_connected = false;  ///< H with M_H contracted
    bool planar = false;
    int treewidth = -1;                 ///< exact, when the torso has at most 25 vertices
    bool planar_or_small = false;       ///< planar, or treewidth within the bound
};

struct StructureResult {
    TreeDecomposition td;
    TdReport validation;
    CanonicityResult canonicity;
    std::vector<TorsoReport> torsos;
    bool distinguisher_fallback_used = false;
};

/// Canonical decomposition: Tutte decomposition, refined on every 3-connected torso with
/// several order-4 tangles by a tangle-distinguishing tree for the node stabilizer, then on
/// every 3-connected torso with a unique order-4 tangle by its region star (both endpoints of
/// every crossedge stay in the centre). Reports every torso.
inline StructureResult structure_decomposition(const Graph& g, const GroupAction& action, int tw_bound,
                                               long long budget = kTangleSearchBudget) {
    if (g.n() == 0) fail(ErrorKind::invalid_input, "decomposition of the empty graph");
    if (!is_connected(g)) fail(ErrorKind::invalid_input, "decomposition needs a connected graph");
    if (action.n != g.n()) fail(ErrorKind::invalid_input, "action does not act on the graph's vertices");
    for (std::size_t i = 0; i < action.generators.size(); ++i)
        if (!is_automorphism(g, action.generators[i]))
            fail(ErrorKind::invalid_input, "generator " + std::to_string(i) + " is not an automorphism");
    StructureResult res;
    // The whole group is enumerated only when a proper bag needs its stabilizer.
    std::optional<std::vector<Permutation>> group;
    auto stabilizer = [&](const VertexSet& bag) {
        if (static_cast<int>(bag.size()) == g.n()) return action;
        if (!group) group = enumerate_group(action);
        return detail::stabilizer_on(*group, bag);
    };
    auto candidate = [](const Graph& torso) { return torso.n() >= 5 && is_k_connected(torso, 3); };

    TreeDecomposition t0 = tutte_decomposition(g);
    std::map<int, TreeDecomposition> stage1;
    for (const auto& orbit : detail::node_orbits(t0, action)) {
        int r = orbit[0];
        IndexedGraph tor = td_torso(g, t0, r);
        if (!candidate(tor.graph)) continue;
        auto ts = enumerate_tangles(tor.graph, 4, budget);
        if (ts.size() < 2) continue;
        auto d = tangle_distinguishing_td(tor.graph, ts, stabilizer(t0.bags[r]));
        res.distinguisher_fallback_used = res.distinguisher_fallback_used || d.report.fallback_used;
        if (d.td.size() > 1) stage1.emplace(r, d.td);
    }
    TreeDecomposition t1 = stage1.empty() ? t0 : refine_td(g, t0, stage1, action);

    std::map<int, TreeDecomposition> stage2;
    for (const auto& orbit : detail::node_orbits(t1, action)) {
        int r = orbit[0];
        IndexedGraph tor = td_torso(g, t1, r);
        if (!candidate(tor.graph)) continue;
        auto ts = enumerate_tangles(tor.graph, 4, budget);
        if (ts.size() != 1) continue;
        TreeDecomposition star = region_star_td(tor.graph, ts[0]);
        if (star.size() > 1) stage2.emplace(r, star);
    }
    res.td = stage2.empty() ? t1 : refine_td(g, t1, stage2, action);
    res.validation = validate_td(g, res.td);
    res.canonicity = is_canonical_td(res.td, action);

    for (int t = 0; t < res.td.size(); ++t) {
        IndexedGraph tor = td_torso(g, res.td, t);
        TorsoReport rep;
        rep.node = t;
        rep.size = tor.graph.n();
        rep.three_connected = is_k_connected(tor.graph, 3);
        std::vector<Edge> local;
        if (candidate(tor.graph)) {
            auto ts = enumerate_tangles(tor.graph, 4, budget);
            rep.order4_tangles = static_cast<int>(ts.size());
            if (ts.size() == 1) local = crossedges(ts[0]);
        }
        for (auto [a, b] : local) rep.crossedges.emplace_back(tor.to_host[a], tor.to_host[b]);
        rep.contracted_quasi_4_connected = is_quasi_4_connected(contract_matching(tor.graph, local).target);
        rep.planar = is_planar(tor.graph);
        if (rep.size <= kTreewidthExactCap) rep.treewidth = treewidth_exact_small(tor.graph);
        rep.planar_or_small = rep.planar || (rep.treewidth >= 0 && rep.treewidth <= tw_bound);
        res.torsos.push_back(std::move(rep));
    }
    return res;
}

// ---------------------------------------------------------------------------
// Orbit bound on torsos

/// Orbit counts of node stabilizers on their bags, against the bound
/// 2·k·m + |V/Γ| with k the adhesion and m the number of tree-edge orbits.
struct OrbitBoundCheck {
    bool ok = true;
    int adhesion = 0;
    int tree_edge_orbits = 0;
    int host_orbits = 0;
    int bound = 0;
    std::vector<int> torso_orbits;  ///< per node
};

inline OrbitBoundCheck check_torso_orbit_bound(const Graph& g, const TreeDecomposition& td, const GroupAction& action) {
    OrbitBoundCheck c;
    TdReport r = validate_td(g, td);
    if (!r.ok) fail(ErrorKind::invalid_input, "not a tree-decomposition: " + r.violations[0]);
    CanonicityResult canon = is_canonical_td(td, action);
    if (!canon.canonical) fail(ErrorKind::invalid_input, "decomposition is not canonical under the action");
    c.adhesion = r.adhesion;
    c.host_orbits = static_cast<int>(vertex_orbits(action).size());
    std::map<Edge, int> edge_id;
    for (std::size_t e = 0; e < td.tree_edges.size(); ++e) {
        auto [a, b] = td.tree_edges[e];
        edge_id[{std::min(a, b), std::max(a, b)}] = static_cast<int>(e);
    }
    std::vector<int> parent = iota_set(static_cast<int>(td.tree_edges.size()));
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& m : canon.node_maps)
        for (std::size_t e = 0; e < td.tree_edges.size(); ++e) {
            auto [a, b] = td.tree_edges[e];
            int x = m[a], y = m[b];
            parent[find(static_cast<int>(e))] = find(edge_id.at({std::min(x, y), std::max(x, y)}));
        }
    std::set<int> roots;
    for (std::size_t e = 0; e < td.tree_edges.size(); ++e) roots.insert(find(static_cast<int>(e)));
    c.tree_edge_orbits = static_cast<int>(roots.size());
    c.bound = 2 * c.adhesion * c.tree_edge_orbits + c.host_orbits;
    auto group = enumerate_group(action);
    for (int t = 0; t < td.size(); ++t) {
        int orbits = static_cast<int>(vertex_orbits(detail::stabilizer_on(group, td.bags[t])).size());
        c.torso_orbits.push_back(orbits);
        if (orbits > c.bound) c.ok = false;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Export

/// Graphviz rendering of the tree with bag labels.
inline std::string td_to_dot(const TreeDecomposition& td) {
    std::string out = "graph td {\n";
    for (int t = 0; t < td.size(); ++t) {
        out += "  n" + std::to_string(t) + " [label=\"" + std::to_string(t) + ": {";
        for (std::size_t i = 0; i < td.bags[t].size(); ++i) out += (i ? "," : "") + std::to_string(td.bags[t][i]);
        out += "}\"];\n";
    }
    for (auto [a, b] : td.tree_edges) out += "  n" + std::to_string(a) + " -- n" + std::to_string(b) + ";\n";
    out += "}\n";
    return out;
}

}  // namespace tangleforge
