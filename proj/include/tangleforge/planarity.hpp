// Planarity decision by incremental path addition, and Kuratowski witnesses.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "tangleforge/graph.hpp"
#include "tangleforge/model.hpp"

namespace tangleforge {

namespace detail {

/// Path-addition planarity test for a 2-connected graph: embed a cycle, then
/// repeatedly route a path of some fragment through an admissible face, preferring
/// fragments with a single admissible face. Every face stays a cycle.
inline bool biconnected_planar(const Graph& g) {
    const int n = g.n(), m = g.m();
    if (n <= 4) return true;
    if (m > 3 * n - 6) return false;

    // Initial cycle via DFS back edge.
    std::vector<int> parent(n, -1), depth(n, -1);
    std::vector<int> cycle;
    {
        std::vector<std::pair<int, std::size_t>> st{{0, 0}};
        depth[0] = 0;
        while (!st.empty() && cycle.empty()) {
            auto& [v, i] = st.back();
            if (i < g.neighbors(v).size()) {
                int w = g.neighbors(v)[i++];
                if (depth[w] < 0) {
                    depth[w] = depth[v] + 1;
                    parent[w] = v;
                    st.emplace_back(w, 0);
                } else if (w != parent[v] && depth[w] < depth[v]) {
                    for (int x = v; x != w; x = parent[x]) cycle.push_back(x);
                    cycle.push_back(w);
                }
            } else {
                st.pop_back();
            }
        }
    }
    if (cycle.empty()) return true;  // a tree; cannot happen for 2-connected n > 2

    std::vector<char> placed(n, 0);
    std::vector<Bits> placed_edge(n, Bits(n));
    int placed_edges = 0;
    auto place_edge = [&](int a, int b) {
        placed_edge[a].set(b);
        placed_edge[b].set(a);
        ++placed_edges;
    };
    struct Face {
        std::vector<int> cyc;
        Bits members;
    };
    std::vector<Face> faces;
    auto make_face = [&](std::vector<int> cyc) {
        Face f{std::move(cyc), Bits(n)};
        for (int v : f.cyc) f.members.set(v);
        return f;
    };
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        placed[cycle[i]] = 1;
        place_edge(cycle[i], cycle[(i + 1) % cycle.size()]);
    }
    faces.push_back(make_face(cycle));
    faces.push_back(make_face(cycle));

    while (placed_edges < m) {
        // Fragments: chords between placed vertices, and components of unplaced vertices.
        struct Fragment {
            Bits attachments;
            int chord_a = -1, chord_b = -1;  // for a chord fragment
            Bits interior;                     // unplaced vertices (empty for chords)
        };
        std::vector<Fragment> frags;
        for (int u = 0; u < n; ++u) {
            if (!placed[u]) continue;
            for (int v : g.neighbors(u))
                if (u < v && placed[v] && !placed_edge[u].test(v)) {
                    Fragment f{Bits(n), u, v, Bits(n)};
                    f.attachments.set(u);
                    f.attachments.set(v);
                    frags.push_back(std::move(f));
                }
        }
        Bits unplaced(n);
        for (int v = 0; v < n; ++v)
            if (!placed[v]) unplaced.set(v);
        for (Bits& comp : components_within(g, unplaced)) {
            Fragment f{Bits(n), -1, -1, comp};
            for_each_bit(comp, [&](int v) {
                for (int w : g.neighbors(v))
                    if (placed[w]) f.attachments.set(w);
            });
            frags.push_back(std::move(f));
        }
        int chosen = -1, chosen_face = -1;
        for (std::size_t i = 0; i < frags.size(); ++i) {
            int count = 0, first = -1;
            for (std::size_t j = 0; j < faces.size(); ++j)
                if (frags[i].attachments.is_subset_of(faces[j].members)) {
                    if (first < 0) first = static_cast<int>(j);
                    ++count;
                }
            if (count == 0) return false;
            if (count == 1) {
                chosen = static_cast<int>(i);
                chosen_face = first;
                break;
            }
            if (chosen < 0) {
                chosen = static_cast<int>(i);
                chosen_face = first;
            }
        }
        const Fragment& fr = frags[chosen];
        std::vector<int> path;  // a, interior..., b
        if (fr.chord_a >= 0) {
            path = {fr.chord_a, fr.chord_b};
        } else {
            // BFS inside the fragment from one attachment to a different one.
            int a = first_bit(fr.attachments);
            std::vector<int> prev(n, -2);
            std::vector<int> queue;
            for (int w : g.neighbors(a))
                if (fr.interior.test(w)) {
                    prev[w] = a;
                    queue.push_back(w);
                }
            int end_inner = -1, b = -1;
            for (std::size_t qi = 0; qi < queue.size() && end_inner < 0; ++qi) {
                int v = queue[qi];
                for (int w : g.neighbors(v)) {
                    if (placed[w] && w != a) {
                        end_inner = v;
                        b = w;
                        break;
                    }
                    if (fr.interior.test(w) && prev[w] == -2) {
                        prev[w] = v;
                        queue.push_back(w);
                    }
                }
            }
            if (end_inner < 0) fail(ErrorKind::property_violation, "fragment with a single attachment in a 2-connected graph");
            std::vector<int> rev{b};
            for (int v = end_inner; v != a; v = prev[v]) rev.push_back(v);
            rev.push_back(a);
            path.assign(rev.rbegin(), rev.rend());
        }
        // Embed the path into the chosen face, splitting it in two.
        Face face = faces[chosen_face];
        int a = path.front(), b = path.back();
        std::size_t len = face.cyc.size(), ia = 0, ib = 0;
        for (std::size_t i = 0; i < len; ++i) {
            if (face.cyc[i] == a) ia = i;
            if (face.cyc[i] == b) ib = i;
        }
        std::vector<int> f1, f2;
        for (std::size_t i = ia;; i = (i + 1) % len) {
            f1.push_back(face.cyc[i]);
            if (i == ib) break;
        }
        for (std::size_t k = path.size() - 2; k >= 1; --k) f1.push_back(path[k]);
        for (std::size_t i = ib;; i = (i + 1) % len) {
            f2.push_back(face.cyc[i]);
            if (i == ia) break;
        }
        for (std::size_t k = 1; k + 1 < path.size(); ++k) f2.push_back(path[k]);
        for (std::size_t k = 0; k + 1 < path.size(); ++k) place_edge(path[k], path[k + 1]);
        for (int v : path) placed[v] = 1;
        faces[chosen_face] = make_face(std::move(f1));
        faces.push_back(make_face(std::move(f2)));
    }
    return true;
}

}  // namespace detail

/// Planarity decision (Euler bound as a fast negative filter, then path addition per block).
inline bool is_planar(const Graph& g) {
    if (g.n() >= 3 && g.m() > 3 * g.n() - 6) return false;
    for (const VertexSet& block : biconnected_components(g).blocks) {
        if (block.size() <= 4) continue;
        if (!detail::biconnected_planar(induced_subgraph(g, block).graph)) return false;
    }
    return true;
}

/// Second, independent planarity decision (Boyer–Myrvold from Boost.Graph), used as a
/// cross-check of is_planar.
inline bool is_planar_boyer_myrvold(const Graph& g) {
    using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    BGraph bg(static_cast<std::size_t>(g.n()));
    for (auto [u, v] : g.edges()) boost::add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v), bg);
    return boost::boyer_myrvold_planarity_test(bg);
}

/// A K5 or K3,3 minor model certifying non-planarity.
struct KuratowskiWitness {
    std::string pattern;  ///< "K5" or "K33"
    MinorModel model;

    Graph pattern_graph() const { return pattern == "K5" ? complete_graph(5) : complete_bipartite_graph(3, 3); }
};

/// Deletion-minimal non-planar subgraph, degree-2 suppression, classification, and
/// conversion into a minor model. Returns nothing for planar inputs.
inline std::optional<KuratowskiWitness> kuratowski_witness(const Graph& g) {
    if (is_planar(g)) return std::nullopt;
    std::vector<Edge> edges = g.edges();
    for (std::size_t i = 0; i < edges.size();) {
        std::vector<Edge> trial = edges;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        if (!is_planar(Graph(g.n(), trial)))
            edges = std::move(trial);
        else
            ++i;
    }
    Graph k(g.n(), edges);
    VertexSet branch;
    for (int v = 0; v < k.n(); ++v)
        if (k.degree(v) >= 3) branch.push_back(v);
    // Trace each suppressed path between branch vertices.
    std::vector<int> pattern_of(g.n(), -1);
    std::vector<std::vector<std::pair<int, std::vector<int>>>> paths(branch.size());
    for (std::size_t i = 0; i < branch.size(); ++i) pattern_of[branch[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < branch.size(); ++i) {
        for (int w : k.neighbors(branch[i])) {
            std::vector<int> interior;
            int prev = branch[i], cur = w;
            while (pattern_of[cur] < 0) {
                interior.push_back(cur);
                int next = k.neighbors(cur)[0] == prev ? k.neighbors(cur)[1] : k.neighbors(cur)[0];
                prev = cur;
                cur = next;
            }
            paths[i].emplace_back(pattern_of[cur], std::move(interior));
        }
    }
    KuratowskiWitness wit;
    std::vector<int> slot(branch.size(), -1);
    if (branch.size() == 5) {
        wit.pattern = "K5";
        for (std::size_t i = 0; i < 5; ++i) slot[i] = static_cast<int>(i);
    } else if (branch.size() == 6) {
        wit.pattern = "K33";
        std::vector<int> color(6, -1);
        color[0] = 0;
        std::vector<int> queue{0};
        for (std::size_t qi = 0; qi < queue.size(); ++qi)
            for (auto& [j, interior] : paths[queue[qi]])
                if (color[j] < 0) {
                    color[j] = 1 - color[queue[qi]];
                    queue.push_back(j);
                }
        int next[2] = {0, 3};
        for (std::size_t i = 0; i < 6; ++i) slot[i] = next[color[i]]++;
    } else {
        fail(ErrorKind::property_violation, "minimal non-planar subgraph is neither a K5 nor a K3,3 subdivision");
    }
    wit.model.branch_sets.assign(branch.size(), {});
    for (std::size_t i = 0; i < branch.size(); ++i) {
        VertexSet& bs = wit.model.branch_sets[slot[i]];
        bs.push_back(branch[i]);
        for (auto& [j, interior] : paths[i])
            if (static_cast<int>(i) < j) bs.insert(bs.end(), interior.begin(), interior.end());
    }
    for (auto& bs : wit.model.branch_sets) bs = normalized(bs);
    if (!is_valid_model(g, wit.pattern_graph(), wit.model))
        fail(ErrorKind::property_violation, "extracted Kuratowski model failed validation");
    return wit;
}

}  // namespace tangleforge
