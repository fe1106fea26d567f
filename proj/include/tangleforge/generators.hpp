// Graph families with their intended symmetry: cycles, toroidal grids, complete and
// complete bipartite graphs, the triangle-replaced hexagonal torus, the triangular torus
// with face gadgets, and truncated tree-like arrangements of cycles.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "tangleforge/graph.hpp"
#include "tangleforge/symmetry.hpp"

namespace tangleforge {

/// A generated graph together with the symmetry it was built with.
struct Family {
    Graph graph;
    GroupAction action;
};

namespace detail {

inline Graph labeled_graph(int n, std::vector<Edge> edges, std::vector<std::string> labels) {
    for (auto& [u, v] : edges)
        if (u > v) std::swap(u, v);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    Graph g(n, edges);
    g.set_labels(std::move(labels));
    return g;
}

inline int mod(int x, int m) { return ((x % m) + m) % m; }

}  // namespace detail

/// C_n with a rotation and a reflection. n >= 3.
inline Family make_cycle(int n) {
    require(n >= 3, "cycle length must be at least 3");
    std::vector<Edge> e;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
        e.emplace_back(i, (i + 1) % n);
        labels.push_back("c" + std::to_string(i));
    }
    Graph g = detail::labeled_graph(n, e, labels);
    Permutation rot(n), refl(n);
    for (int i = 0; i < n; ++i) {
        rot[i] = (i + 1) % n;
        refl[i] = (n - i) % n;
    }
    return {g, make_action(g, {rot, refl})};
}

/// Toroidal grid Z_a × Z_b (vertex (x,y) = x*b + y) with both translations and both reflections.
inline Family make_torus_grid(int a, int b) {
    require(a >= 3 && b >= 3, "torus dimensions must be at least 3");
    auto id = [&](int x, int y) { return detail::mod(x, a) * b + detail::mod(y, b); };
    std::vector<Edge> e;
    std::vector<std::string> labels;
    for (int x = 0; x < a; ++x)
        for (int y = 0; y < b; ++y) {
            e.emplace_back(id(x, y), id(x + 1, y));
            e.emplace_back(id(x, y), id(x, y + 1));
            labels.push_back("g(" + std::to_string(x) + "," + std::to_string(y) + ")");
        }
    Graph g = detail::labeled_graph(a * b, e, labels);
    Permutation tx(a * b), ty(a * b), rx(a * b), ry(a * b);
    for (int x = 0; x < a; ++x)
        for (int y = 0; y < b; ++y) {
            tx[id(x, y)] = id(x + 1, y);
            ty[id(x, y)] = id(x, y + 1);
            rx[id(x, y)] = id(-x, y);
            ry[id(x, y)] = id(x, -y);
        }
    return {g, make_action(g, {tx, ty, rx, ry})};
}

/// K_n with a transposition and an n-cycle.
inline Family make_complete(int n) {
    require(n >= 1, "complete graph needs at least one vertex");
    std::vector<Edge> e;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
        labels.push_back("k" + std::to_string(i));
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    }
    Graph g = detail::labeled_graph(n, e, labels);
    std::vector<Permutation> gens;
    if (n >= 2) {
        Permutation swap = identity_permutation(n), rot(n);
        std::swap(swap[0], swap[1]);
        for (int i = 0; i < n; ++i) rot[i] = (i + 1) % n;
        gens = {swap, rot};
    }
    return {g, make_action(g, gens)};
}

/// K_{a,b} (sides 0..a-1 and a..a+b-1) with side-wise symmetric generators, plus the side swap when a = b.
inline Family make_complete_bipartite(int a, int b) {
    require(a >= 1 && b >= 1, "complete bipartite sides must be nonempty");
    const int n = a + b;
    std::vector<Edge> e;
    std::vector<std::string> labels;
    for (int i = 0; i < a; ++i) labels.push_back("a" + std::to_string(i));
    for (int j = 0; j < b; ++j) labels.push_back("b" + std::to_string(j));
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
    Graph g = detail::labeled_graph(n, e, labels);
    std::vector<Permutation> gens;
    auto side = [&](int start, int len) {
        if (len < 2) return;
        Permutation swap = identity_permutation(n), rot = identity_permutation(n);
        std::swap(swap[start], swap[start + 1]);
        for (int i = 0; i < len; ++i) rot[start + i] = start + (i + 1) % len;
        gens.push_back(swap);
        gens.push_back(rot);
    };
    side(0, a);
    side(a, b);
    if (a == b) {
        Permutation flip(n);
        for (int i = 0; i < a; ++i) {
            flip[i] = a + i;
            flip[a + i] = i;
        }
        gens.push_back(flip);
    }
    return {g, make_action(g, gens)};
}

/// Vertex id of corner d of the triangle replacing honeycomb vertex (i,j,s) in hex_tri_torus.
inline int hex_tri_vertex(int a, int b, int i, int j, int s, int d) {
    return ((detail::mod(i, a) * b + detail::mod(j, b)) * 2 + s) * 3 + d;
}

/// Hexagonal (honeycomb) torus with each vertex replaced by a triangle. The honeycomb is the
/// brick wall on cells Z_a × Z_b: (i,j,1) is joined to (i,j,0), (i+1,j,0), (i,j+1,0) in
/// directions 0, 1, 2. Corner d of a triangle carries the single edge leaving in direction d;
/// these edges form the perfect matching between triangles. Action: both translations, the
/// point inversion, and (when a = b) the direction rotation and the reflection swapping
/// directions 1 and 2.
inline Family make_hex_tri_torus(int a, int b) {
    require(a >= 3 && b >= 3, "torus dimensions must be at least 3");
    const int n = 6 * a * b;
    auto id = [&](int i, int j, int s, int d) { return hex_tri_vertex(a, b, i, j, s, d); };
    std::vector<Edge> e;
    std::vector<std::string> labels(n);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j)
            for (int s = 0; s < 2; ++s) {
                for (int d = 0; d < 3; ++d) {
                    labels[id(i, j, s, d)] = "t(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(s) + "," +
                                             std::to_string(d) + ")";
                    e.emplace_back(id(i, j, s, d), id(i, j, s, (d + 1) % 3));
                }
                if (s == 1) {
                    e.emplace_back(id(i, j, 1, 0), id(i, j, 0, 0));
                    e.emplace_back(id(i, j, 1, 1), id(i + 1, j, 0, 1));
                    e.emplace_back(id(i, j, 1, 2), id(i, j + 1, 0, 2));
                }
            }
    Graph g = detail::labeled_graph(n, e, labels);
    Permutation ti(n), tj(n), inv(n), rot(n), refl(n);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j)
            for (int s = 0; s < 2; ++s)
                for (int d = 0; d < 3; ++d) {
                    int v = id(i, j, s, d);
                    ti[v] = id(i + 1, j, s, d);
                    tj[v] = id(i, j + 1, s, d);
                    inv[v] = id(-i, -j, 1 - s, d);
                    // Linear part M(i,j) = (-i - j, i); side 0 is shifted by e1 so that the
                    // direction offsets 0, e1, e2 are carried to e1, e2, 0.
                    rot[v] = id(-i - j + (s == 0 ? 1 : 0), i, s, (d + 1) % 3);
                    refl[v] = id(j, i, s, d == 0 ? 0 : 3 - d);
                }
    std::vector<Permutation> gens{ti, tj, inv};
    if (a == b) {
        gens.push_back(rot);
        gens.push_back(refl);
    }
    return {g, make_action(g, gens)};
}

/// The honeycomb matching edges of hex_tri_torus (the edges joining two triangles).
inline std::vector<Edge> hex_tri_matching(int a, int b) {
    std::vector<Edge> m;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) {
            int u0 = hex_tri_vertex(a, b, i, j, 1, 0), v0 = hex_tri_vertex(a, b, i, j, 0, 0);
            int u1 = hex_tri_vertex(a, b, i, j, 1, 1), v1 = hex_tri_vertex(a, b, i + 1, j, 0, 1);
            int u2 = hex_tri_vertex(a, b, i, j, 1, 2), v2 = hex_tri_vertex(a, b, i, j + 1, 0, 2);
            m.emplace_back(std::min(u0, v0), std::max(u0, v0));
            m.emplace_back(std::min(u1, v1), std::max(u1, v1));
            m.emplace_back(std::min(u2, v2), std::max(u2, v2));
        }
    std::sort(m.begin(), m.end());
    return m;
}

/// Triangular torus on Z_a × Z_b (edges along (1,0), (0,1), (1,1); vertex (x,y) = x*b + y)
/// where every triangular face {v1,v2,v3} receives a gadget: w1, w2, w3 each adjacent to
/// v1, v2, v3, and z adjacent to w1, w2, w3. Face f (up faces first, then down faces, each
/// in cell order) owns vertices a*b + 4f + {0,1,2} (the w's) and a*b + 4f + 3 (z).
/// Action: both translations, the point inversion, and the w-permutations of each gadget.
inline Family make_tri_gadget_torus(int a, int b) {
    require(a >= 3 && b >= 3, "torus dimensions must be at least 3");
    const int cells = a * b, faces = 2 * cells, n = cells + 4 * faces;
    auto vid = [&](int x, int y) { return detail::mod(x, a) * b + detail::mod(y, b); };
    auto face_corners = [&](int f) -> std::array<int, 3> {
        int c = f % cells, x = c / b, y = c % b;
        if (f < cells) return {vid(x, y), vid(x + 1, y), vid(x + 1, y + 1)};
        return {vid(x, y), vid(x, y + 1), vid(x + 1, y + 1)};
    };
    std::vector<Edge> e;
    std::vector<std::string> labels(n);
    for (int x = 0; x < a; ++x)
        for (int y = 0; y < b; ++y) {
            e.emplace_back(vid(x, y), vid(x + 1, y));
            e.emplace_back(vid(x, y), vid(x, y + 1));
            e.emplace_back(vid(x, y), vid(x + 1, y + 1));
            labels[vid(x, y)] = "v(" + std::to_string(x) + "," + std::to_string(y) + ")";
        }
    for (int f = 0; f < faces; ++f) {
        int base = cells + 4 * f;
        for (int k = 0; k < 3; ++k) {
            for (int v : face_corners(f)) e.emplace_back(base + k, v);
            e.emplace_back(base + k, base + 3);
            labels[base + k] = "w" + std::to_string(k + 1) + "[" + std::to_string(f) + "]";
        }
        labels[base + 3] = "z[" + std::to_string(f) + "]";
    }
    Graph g = detail::labeled_graph(n, e, labels);
    // Face index of the face with corner set `corners` (sorted), for building the action.
    std::map<VertexSet, int> face_of;
    for (int f = 0; f < faces; ++f) {
        auto c = face_corners(f);
        face_of[normalized({c[0], c[1], c[2]})] = f;
    }
    auto lift = [&](const std::function<int(int, int)>& grid_map) {
        Permutation p(n);
        for (int x = 0; x < a; ++x)
            for (int y = 0; y < b; ++y) p[vid(x, y)] = grid_map(x, y);
        for (int f = 0; f < faces; ++f) {
            auto c = face_corners(f);
            int image = face_of.at(normalized({p[c[0]], p[c[1]], p[c[2]]}));
            for (int k = 0; k < 4; ++k) p[cells + 4 * f + k] = cells + 4 * image + k;
        }
        return p;
    };
    std::vector<Permutation> gens;
    gens.push_back(lift([&](int x, int y) { return vid(x + 1, y); }));
    gens.push_back(lift([&](int x, int y) { return vid(x, y + 1); }));
    gens.push_back(lift([&](int x, int y) { return vid(-x, -y); }));
    for (int f = 0; f < faces; ++f) {
        int base = cells + 4 * f;
        Permutation swap = identity_permutation(n), rot = identity_permutation(n);
        std::swap(swap[base], swap[base + 1]);
        rot[base] = base + 1;
        rot[base + 1] = base + 2;
        rot[base + 2] = base;
        gens.push_back(swap);
        gens.push_back(rot);
    }
    return {g, make_action(g, gens)};
}

/// Grid vertices of tri_gadget_torus(a, b): 0..a*b-1.
inline VertexSet tri_gadget_grid(int a, int b) { return iota_set(a * b); }

/// Truncated Cayley graph of Z_k * Z = <a | a^k> * <b>: group elements whose reduced word
/// uses at most depth-1 letters b^{±1}, joined to their right multiples by a and by b.
/// The k-cycles (cosets of <a>) are arranged in a tree. Action: left multiplication by a and
/// the automorphism a -> a^{-1}, b -> b^{-1}. Vertex 0 is the identity.
inline Family make_cycle_tree(int k, int depth) {
    require(k >= 3, "cycle length must be at least 3");
    require(depth >= 1 && depth <= 6, "tree depth must lie in 1..6");
    // Reduced words: tokens -1 = b, -2 = b^{-1}, i in 1..k-1 = a^i.
    using Word = std::vector<int>;
    auto b_count = [](const Word& w) {
        int c = 0;
        for (int t : w) c += t < 0;
        return c;
    };
    auto times_a = [&](Word w) {
        if (!w.empty() && w.back() > 0) {
            w.back() = (w.back() + 1) % k;
            if (w.back() == 0) w.pop_back();
        } else {
            w.push_back(1);
        }
        return w;
    };
    auto times_b = [](Word w) {
        if (!w.empty() && w.back() == -2)
            w.pop_back();
        else
            w.push_back(-1);
        return w;
    };
    auto times_B = [](Word w) {
        if (!w.empty() && w.back() == -1)
            w.pop_back();
        else
            w.push_back(-2);
        return w;
    };
    std::map<Word, int> index{{Word{}, 0}};
    std::vector<Word> words{Word{}};
    for (std::size_t i = 0; i < words.size(); ++i) {
        for (const Word& next : {times_a(words[i]), times_b(words[i]), times_B(words[i])}) {
            if (b_count(next) > depth - 1 || index.count(next)) continue;
            index.emplace(next, static_cast<int>(words.size()));
            words.push_back(next);
        }
    }
    const int n = static_cast<int>(words.size());
    std::vector<Edge> e;
    std::vector<std::string> labels(n);
    for (int v = 0; v < n; ++v) {
        std::string s;
        for (int t : words[v]) s += t == -1 ? "b" : t == -2 ? "B" : "a" + std::to_string(t);
        labels[v] = s.empty() ? "1" : s;
        e.emplace_back(v, index.at(times_a(words[v])));
        auto it = index.find(times_b(words[v]));
        if (it != index.end()) e.emplace_back(v, it->second);
    }
    Graph g = detail::labeled_graph(n, e, labels);
    Permutation left_a(n), flip(n);
    for (int v = 0; v < n; ++v) {
        Word w = words[v];
        if (!w.empty() && w.front() > 0) {
            w.front() = (w.front() + 1) % k;
            if (w.front() == 0) w.erase(w.begin());
        } else {
            w.insert(w.begin(), 1);
        }
        left_a[v] = index.at(w);
        Word f = words[v];
        for (int& t : f) t = t == -1 ? -2 : t == -2 ? -1 : k - t;
        flip[v] = index.at(f);
    }
    return {g, make_action(g, {left_a, flip})};
}

/// The k-cycles (cosets of <a>) of cycle_tree, each as a sorted vertex set.
inline std::vector<VertexSet> cycle_tree_cycles(const Family& f) {
    std::vector<VertexSet> out;
    std::vector<char> seen(f.graph.n(), 0);
    const auto& labels = f.graph.labels();
    for (int v = 0; v < f.graph.n(); ++v) {
        if (seen[v]) continue;
        // The coset of v: vertices reachable along a-edges. a-edges join words that differ only in the trailing a-power.
        auto stem = [&](const std::string& s) {
            std::size_t cut = s.find_last_of("bB");
            return cut == std::string::npos ? std::string{} : s.substr(0, cut + 1);
        };
        std::string key = labels[v] == "1" ? "" : stem(labels[v]);
        VertexSet coset;
        for (int u = 0; u < f.graph.n(); ++u) {
            std::string lu = labels[u] == "1" ? "" : stem(labels[u]);
            if (lu == key) coset.push_back(u);
        }
        for (int u : coset) seen[u] = 1;
        out.push_back(coset);
    }
    return out;
}

/// Family dispatcher used by the CLI.
inline Family generate_family(const std::string& family, const std::vector<int>& params) {
    auto need = [&](std::size_t count) {
        if (params.size() != count)
            fail(ErrorKind::invalid_input, "family '" + family + "' takes " + std::to_string(count) + " parameter(s)");
    };
    if (family == "cycle") {
        need(1);
        return make_cycle(params[0]);
    }
    if (family == "torus-grid") {
        need(2);
        return make_torus_grid(params[0], params[1]);
    }
    if (family == "complete") {
        need(1);
        return make_complete(params[0]);
    }
    if (family == "complete-bipartite") {
        need(2);
        return make_complete_bipartite(params[0], params[1]);
    }
    if (family == "hex-tri-torus") {
        need(2);
        return make_hex_tri_torus(params[0], params[1]);
    }
    if (family == "tri-gadget-torus") {
        need(2);
        return make_tri_gadget_torus(params[0], params[1]);
    }
    if (family == "cycle-tree") {
        need(2);
        return make_cycle_tree(params[0], params[1]);
    }
    fail(ErrorKind::invalid_input, "unknown family '" + family + "'");
}

}  // namespace tangleforge
