// Brute-force reference implementations used to cross-check the library. These avoid the
// library's structural shortcuts and work directly from the definitions.
#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <numeric>
#include <set>
#include <bitset>
#include <cstdint>
#include <map>
#include <vector>

#include "tangleforge/graph.hpp"
#include "tangleforge/separation.hpp"

namespace tangleforge::oracle {

/// A separation as three vertex masks (n <= 8).
struct MaskSeparation {
    std::uint32_t y, s, z;
};

/// A tangle found by exhaustive orientation: the member of every separation pair.
using OrientedTangle = std::vector<MaskSeparation>;

/// All tangles of order k of a graph with at most 8 vertices, by backtracking over the
/// orientations of every separation of order < k with unit propagation on the triple axiom.
class ExhaustiveTangles {
public:
    ExhaustiveTangles(const Graph& g, int k) : g_(g), k_(k), n_(g.n()) {
        require(n_ <= 8, "exhaustive tangle oracle handles at most 8 vertices");
        full_ = (1u << n_) - 1;
        for (int v = 0; v < n_; ++v) {
            nb_[v] = 0;
            for (int w : g.neighbors(v)) nb_[v] |= 1u << w;
        }
        for (std::uint32_t m = 0; m <= full_; ++m) {
            closed_[m] = m;
            for (int v = 0; v < n_; ++v)
                if (m >> v & 1) closed_[m] |= nb_[v];
        }
        // Every separation of order < k, one entry per unordered pair {s, reversed s}.
        std::vector<int> side(n_, 0);
        std::map<std::array<std::uint32_t, 3>, int> seen;
        long total = 1;
        for (int i = 0; i < n_; ++i) total *= 3;
        for (long code = 0; code < total; ++code) {
            long c = code;
            std::uint32_t y = 0, s = 0, z = 0;
            for (int v = 0; v < n_; ++v, c /= 3) {
                int p = static_cast<int>(c % 3);
                (p == 0 ? y : p == 1 ? s : z) |= 1u << v;
            }
            if (std::popcount(s) >= k) continue;
            bool edge = false;
            for (int v = 0; v < n_ && !edge; ++v)
                if ((y >> v & 1) && (nb_[v] & z)) edge = true;
            if (edge) continue;
            std::array<std::uint32_t, 3> key{std::min(y, z), s, std::max(y, z)};
            if (seen.count(key)) continue;
            seen[key] = 1;
            pairs_.push_back({y, s, z});
        }
    }

    std::vector<OrientedTangle> run() {
        fail_rows_.assign(1u << (2 * n_), {});
        fail_known_.assign(1u << (2 * n_), 0);
        std::vector<int> orient(pairs_.size(), -1);
        std::vector<std::uint32_t> chosen;
        Row forbidden{};
        solve(orient, chosen, forbidden);
        return out_;
    }

    bool triple_ok(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
        if (a & b & c) return true;
        // An edge with an endpoint in each set: one endpoint lies in two of them.
        return ((a & b) & closed_[c]) || ((a & c) & closed_[b]) || ((b & c) & closed_[a]);
    }

private:
    using Row = std::bitset<256>;
    const Graph& g_;
    int k_, n_;
    std::uint32_t full_ = 0;
    std::array<std::uint32_t, 8> nb_{};
    std::array<std::uint32_t, 256> closed_{};
    std::vector<MaskSeparation> pairs_;
    std::vector<Row> fail_rows_;
    std::vector<char> fail_known_;
    std::vector<OrientedTangle> out_;

    const Row& fail_row(std::uint32_t a, std::uint32_t b) {
        std::size_t key = (static_cast<std::size_t>(a) << n_) | b;
        if (!fail_known_[key]) {
            Row r;
            for (std::uint32_t c = 0; c <= full_; ++c)
                if (!triple_ok(a, b, c)) r.set(c);
            fail_rows_[key] = r;
            fail_known_[key] = 1;
        }
        return fail_rows_[key];
    }

    static std::uint32_t z_of(const MaskSeparation& p, int o) { return o == 0 ? p.z : p.y; }

    /// Adds Z-side z to the chosen family; false if it breaks the triple axiom.
    bool add(std::uint32_t z, std::vector<std::uint32_t>& chosen, Row& forbidden) {
        if (forbidden.test(z)) return false;
        if (std::find(chosen.begin(), chosen.end(), z) != chosen.end()) return true;
        if (!triple_ok(z, z, z)) return false;
        chosen.push_back(z);
        for (std::uint32_t d : chosen) forbidden |= fail_row(z, d);
        for (std::uint32_t d : chosen)
            if (forbidden.test(d)) return false;
        return true;
    }

    void solve(std::vector<int> orient, std::vector<std::uint32_t> chosen, Row forbidden) {
        // Unit propagation.
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < pairs_.size(); ++i) {
                if (orient[i] >= 0) continue;
                bool f0 = forbidden.test(z_of(pairs_[i], 0)), f1 = forbidden.test(z_of(pairs_[i], 1));
                if (f0 && f1) return;
                if (f0 || f1) {
                    orient[i] = f0 ? 1 : 0;
                    if (!add(z_of(pairs_[i], orient[i]), chosen, forbidden)) return;
                    changed = true;
                }
            }
        }
        std::size_t open = pairs_.size();
        for (std::size_t i = 0; i < pairs_.size(); ++i)
            if (orient[i] < 0) {
                open = i;
                break;
            }
        if (open == pairs_.size()) {
            OrientedTangle t;
            for (std::size_t i = 0; i < pairs_.size(); ++i) {
                const auto& p = pairs_[i];
                t.push_back(orient[i] == 0 ? p : MaskSeparation{p.z, p.s, p.y});
            }
            out_.push_back(std::move(t));
            return;
        }
        for (int o = 0; o < 2; ++o) {
            auto orient2 = orient;
            auto chosen2 = chosen;
            Row forbidden2 = forbidden;
            orient2[open] = o;
            if (add(z_of(pairs_[open], o), chosen2, forbidden2)) solve(std::move(orient2), std::move(chosen2), forbidden2);
        }
    }
};

inline std::uint32_t to_mask(const VertexSet& s) {
    std::uint32_t m = 0;
    for (int v : s) m |= 1u << v;
    return m;
}

inline Separation to_separation(const MaskSeparation& m, int n) {
    Separation s;
    for (int v = 0; v < n; ++v) (m.y >> v & 1 ? s.Y : m.s >> v & 1 ? s.S : s.Z).push_back(v);
    return s;
}

// ---------------------------------------------------------------------------
// Triconnected components by repeated splitting of a multigraph (classical definition).

namespace detail {

struct MultiEdge {
    int u, v;
    int virtual_id;  ///< -1 for a real edge
};
using Component = std::vector<MultiEdge>;

inline std::set<int> vertices_of(const Component& c) {
    std::set<int> out;
    for (auto& e : c) {
        out.insert(e.u);
        out.insert(e.v);
    }
    return out;
}

/// Separation classes of c with respect to {a, b}: edges joined by a path avoiding a and b
/// as inner vertices.
inline std::vector<std::vector<int>> separation_classes(const Component& c, int a, int b) {
    std::vector<int> parent(c.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    std::map<int, int> first_edge;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (int x : {c[i].u, c[i].v}) {
            if (x == a || x == b) continue;
            auto [it, fresh] = first_edge.emplace(x, static_cast<int>(i));
            if (!fresh) parent[find(static_cast<int>(i))] = find(it->second);
        }
    std::map<int, std::vector<int>> groups;
    for (std::size_t i = 0; i < c.size(); ++i) groups[find(static_cast<int>(i))].push_back(static_cast<int>(i));
    std::vector<std::vector<int>> out;
    for (auto& [r, m] : groups) out.push_back(m);
    return out;
}

inline char component_kind(const Component& c) {
    auto vs = detail::vertices_of(c);
    if (vs.size() == 2) return 'P';
    if (c.size() == vs.size()) {
        std::map<int, int> deg;
        for (auto& e : c) ++deg[e.u], ++deg[e.v];
        bool cyc = true;
        for (auto& [v, d] : deg) cyc = cyc && d == 2;
        if (cyc) return 'S';
    }
    return 'R';
}

}  // namespace detail

/// Triconnected components of a 2-connected graph. Splits until every component is a triple bond, a triangle or a 3-connected simple graph;
/// then merges bonds with bonds and polygons with polygons along shared virtual edges.
/// Returns the bags: polygon and rigid vertex sets, plus {u,v} for bonds with >= 3 virtual edges.
inline std::vector<VertexSet> tutte_oracle_bags(const Graph& g) {
    if (g.n() <= 3) return {iota_set(g.n())};
    std::vector<detail::Component> done, todo{{}};
    for (auto [u, v] : g.edges()) todo[0].push_back({u, v, -1});
    int next_virtual = 0;
    while (!todo.empty()) {
        detail::Component c = todo.back();
        todo.pop_back();
        std::set<int> vs = detail::vertices_of(c);
        bool split = false;
        if (c.size() > 3) {
            for (auto ia = vs.begin(); ia != vs.end() && !split; ++ia)
                for (auto ib = std::next(ia); ib != vs.end() && !split; ++ib) {
                    auto classes = detail::separation_classes(c, *ia, *ib);
                    if (classes.size() < 2) continue;
                    if (classes.size() == 2 && (classes[0].size() == 1 || classes[1].size() == 1)) continue;
                    // Take whole classes, largest first, until this side has two edges.
                    std::stable_sort(classes.begin(), classes.end(), [](const auto& x, const auto& y) { return x.size() > y.size(); });
                    std::vector<int> side;
                    for (const auto& cl : classes) {
                        if (side.size() >= 2) break;
                        side.insert(side.end(), cl.begin(), cl.end());
                    }
                    if (c.size() - side.size() < 2) continue;
                    std::set<int> in(side.begin(), side.end());
                    detail::Component c1, c2;
                    for (std::size_t i = 0; i < c.size(); ++i) (in.count(static_cast<int>(i)) ? c1 : c2).push_back(c[i]);
                    int id = next_virtual++;
                    c1.push_back({*ia, *ib, id});
                    c2.push_back({*ia, *ib, id});
                    todo.push_back(c1);
                    todo.push_back(c2);
                    split = true;
                }
        }
        if (!split) done.push_back(c);
    }
    const int D = static_cast<int>(done.size());
    std::vector<int> parent(D);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    std::map<int, std::vector<int>> holders;
    for (int i = 0; i < D; ++i)
        for (auto& e : done[i])
            if (e.virtual_id >= 0) holders[e.virtual_id].push_back(i);
    std::set<int> merged_ids;
    for (auto& [id, hs] : holders) {
        char k = detail::component_kind(done[hs[0]]);
        if (k != 'R' && k == detail::component_kind(done[hs[1]])) {
            parent[find(hs[0])] = find(hs[1]);
            merged_ids.insert(id);
        }
    }
    std::map<int, std::pair<std::set<int>, int>> groups;  // root -> vertices, remaining virtual edges
    std::map<int, char> group_kind;
    for (int i = 0; i < D; ++i) {
        auto& [vs, nv] = groups[find(i)];
        for (int v : detail::vertices_of(done[i])) vs.insert(v);
        for (auto& e : done[i])
            if (e.virtual_id >= 0 && !merged_ids.count(e.virtual_id)) ++nv;
        group_kind[find(i)] = detail::component_kind(done[i]);
    }
    std::vector<VertexSet> bags;
    for (auto& [r, info] : groups) {
        if (group_kind[r] == 'P' && info.second < 3) continue;
        bags.emplace_back(info.first.begin(), info.first.end());
    }
    std::sort(bags.begin(), bags.end());
    return bags;
}

// ---------------------------------------------------------------------------
// Treewidth by the subset recursion TW(S) = min_v max(TW(S - v), |Q(S - v, v)|).

inline int treewidth_oracle(const Graph& g) {
    const int n = g.n();
    if (n == 0) return -1;
    const std::uint32_t full = (1u << n) - 1;
    std::vector<int> tw(full + 1, 1 << 20);
    tw[0] = -1;
    auto q = [&](std::uint32_t s, int v) {
        // Vertices outside s ∪ {v} reachable from v through s.
        std::uint32_t seen = 1u << v, stack = 1u << v, out = 0;
        while (stack) {
            int x = std::countr_zero(stack);
            stack &= stack - 1;
            for (int w : g.neighbors(x)) {
                std::uint32_t b = 1u << w;
                if (seen & b) continue;
                seen |= b;
                if (s & b)
                    stack |= b;
                else
                    out |= b;
            }
        }
        return std::popcount(out);
    };
    for (std::uint32_t s = 1; s <= full; ++s)
        for (std::uint32_t r = s; r; r &= r - 1) {
            int v = std::countr_zero(r);
            std::uint32_t rest = s & ~(1u << v);
            tw[s] = std::min(tw[s], std::max(tw[rest], q(rest, v)));
        }
    return tw[full];
}

/// Rank over GF(2) of the edge-incidence vectors of closed walks.
inline int cycle_space_rank(const Graph& g, const std::vector<std::vector<int>>& walks) {
    std::map<Edge, int> index;
    for (auto e : g.edges()) index.emplace(e, static_cast<int>(index.size()));
    std::vector<Bits> rows;
    for (const auto& w : walks) {
        Bits r(index.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            int a = w[i], b = w[(i + 1) % w.size()];
            if (a != b) r.flip(static_cast<std::size_t>(index.at({std::min(a, b), std::max(a, b)})));
        }
        rows.push_back(r);
    }
    int rank = 0;
    for (std::size_t col = 0; col < index.size(); ++col) {
        std::size_t pivot = static_cast<std::size_t>(rank);
        while (pivot < rows.size() && !rows[pivot].test(col)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[pivot], rows[static_cast<std::size_t>(rank)]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != static_cast<std::size_t>(rank) && rows[i].test(col)) rows[i] ^= rows[static_cast<std::size_t>(rank)];
        ++rank;
    }
    return rank;
}

}  // namespace tangleforge::oracle
