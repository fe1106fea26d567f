// Tangles of order at most 4: enumeration, membership, validation, minimal and
// non-degenerate separations, X_T, R_T, crossedges, fences, lifting along minor models,
// and distinguishing separations.
//
// Representation. For a separator S with |S| < k, the members of a tangle with separator
// S are exactly the separations whose Z-side contains one fixed component C_S of G - S
// (the members with separator S form a principal ultrafilter on the components of G - S).
// A tangle is therefore stored as a choice of component for every separator S whose
// removal leaves at least two components; when G - S is connected the only member is
// (∅, S, V∖S).
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tangleforge/graph.hpp"
#include "tangleforge/model.hpp"
#include "tangleforge/separation.hpp"

namespace tangleforge {

inline constexpr long long kTangleSearchBudget = 10'000'000;

/// Separators of order < k that disconnect G, with the components they leave.
struct TangleUniverse {
    Graph graph;
    int order = 0;
    std::vector<VertexSet> separators;           ///< sorted lexicographically by (size, vertices)
    std::vector<std::vector<Bits>> components;   ///< per separator, ordered by smallest vertex
    int min_branching_order = -1;                ///< smallest disconnecting separator size, or -1

    static std::uint64_t key(const VertexSet& s) {
        std::uint64_t k = s.size();
        for (int v : s) k = k * 1'000'003ULL + static_cast<std::uint64_t>(v) + 1;
        return k;
    }

    /// Index of S among the disconnecting separators, or -1.
    int find(const VertexSet& s) const {
        auto it = index_.find(key(s));
        return it == index_.end() ? -1 : it->second;
    }

    /// True iff G is 3-connected (computed from the separator scan when the order allows).
    bool three_connected() const {
        if (order >= 3) return graph.n() >= 4 && (min_branching_order < 0 || min_branching_order >= 3);
        return is_k_connected(graph, 3);
    }

    static std::shared_ptr<const TangleUniverse> build(const Graph& g, int k) {
        require(k >= 1 && k <= 4, "tangle order must lie in 1..4");
        require(is_connected(g), "tangles are enumerated on connected graphs");
        auto u = std::make_shared<TangleUniverse>();
        u->graph = g;
        u->order = k;
        for_each_subset(g.n(), 0, k - 1, [&](const VertexSet& s) {
            auto comps = components_without(g, to_bits(g.n(), s));
            if (comps.size() >= 2) {
                if (u->min_branching_order < 0) u->min_branching_order = static_cast<int>(s.size());
                u->index_.emplace(key(s), static_cast<int>(u->separators.size()));
                u->separators.push_back(s);
                u->components.push_back(std::move(comps));
            }
            return true;
        });
        return u;
    }

private:
    std::unordered_map<std::uint64_t, int> index_;
};

/// A tangle: one chosen component per disconnecting separator of the universe.
class Tangle {
public:
    Tangle(std::shared_ptr<const TangleUniverse> universe, std::vector<int> choice)
        : universe_(std::move(universe)), choice_(std::move(choice)) {}

    const Graph& graph() const { return universe_->graph; }
    int order() const { return universe_->order; }
    const TangleUniverse& universe() const { return *universe_; }
    const std::shared_ptr<const TangleUniverse>& universe_ptr() const { return universe_; }
    const std::vector<int>& choice() const { return choice_; }

    /// Component of G - S chosen by the tangle (the Z-side of its minimal member with
    /// separator S), for a disconnecting separator index.
    const Bits& chosen(int separator_index) const { return universe_->components[separator_index][choice_[separator_index]]; }

    /// Membership of a separation of order < k (T1 is built in: exactly one orientation is a member).
    bool contains(const Separation& s) const {
        if (s.order() >= order()) fail(ErrorKind::invalid_input, "separation order must be below the tangle order");
        int i = universe_->find(s.S);
        if (i < 0) return s.Y.empty();
        return chosen(i).is_subset_of(to_bits(graph().n(), s.Z));
    }

    /// Minimal member with a disconnecting separator: (V∖S∖C_S, S, C_S).
    Separation minimal_member(int separator_index) const {
        return separation_from_bits(graph(), to_bits(graph().n(), universe_->separators[separator_index]), chosen(separator_index));
    }

    friend bool operator==(const Tangle& a, const Tangle& b) {
        return a.order() == b.order() && a.choice_ == b.choice_ && a.graph() == b.graph();
    }
    friend bool operator<(const Tangle& a, const Tangle& b) { return a.choice_ < b.choice_; }

private:
    std::shared_ptr<const TangleUniverse> universe_;
    std::vector<int> choice_;
};

namespace detail {

/// Triple axiom on Z-sides: a common vertex, or an edge meeting all three.
inline bool triple_ok(const Graph& g, const Bits& z1, const Bits& z2, const Bits& z3) {
    Bits c = z1 & z2;
    if ((c & neighborhood(g, z3)).any() || (c & z3).any()) return true;
    Bits d = z1 & z3;
    if ((d & neighborhood(g, z2)).any()) return true;
    Bits e = z2 & z3;
    return (e & neighborhood(g, z1)).any();
}

/// The set W such that a Z-side avoiding W makes (z1, z2, Z) violate the triple axiom.
inline Bits pair_witness(const Graph& g, const Bits& z1, const Bits& z2) {
    Bits both = z1 & z2;
    Bits w = both | neighborhood(g, both);
    Bits only1 = z1 - z2, only2 = z2 - z1;
    w |= only1 & neighborhood(g, only2);
    w |= only2 & neighborhood(g, only1);
    return w;
}

/// True iff separators S2, S3 of size < k exist with Z ⊆ S2 ∪ S3 and every edge touching Z
/// inside S2 or inside S3; then (Z, V∖S2, V∖S3) violates the triple axiom.
inline bool covered_by_two_separators(const Graph& g, const Bits& z, int k) {
    Bits closed = z | neighborhood(g, z);
    if (static_cast<int>(closed.count()) > 2 * (k - 1)) return false;
    VertexSet pool = to_set(closed);
    std::vector<Edge> touching;
    for_each_bit(z, [&](int v) {
        for (int w : g.neighbors(v))
            if (!z.test(w) || v < w) touching.emplace_back(v, w);
    });
    const int p = static_cast<int>(pool.size());
    std::vector<std::uint32_t> small;
    for (std::uint32_t m = 0; m < (1u << p); ++m)
        if (std::popcount(m) <= k - 1) small.push_back(m);
    auto has = [&](std::uint32_t m, int v) {
        int i = static_cast<int>(std::lower_bound(pool.begin(), pool.end(), v) - pool.begin());
        return (m >> i & 1u) != 0;
    };
    std::uint32_t zmask = 0;
    for (int i = 0; i < p; ++i)
        if (z.test(pool[i])) zmask |= 1u << i;
    for (std::uint32_t a : small)
        for (std::uint32_t b : small) {
            if (a > b || ((a | b) & zmask) != zmask) continue;
            bool ok = true;
            for (auto [u, v] : touching)
                if (!((has(a, u) && has(a, v)) || (has(b, u) && has(b, v)))) {
                    ok = false;
                    break;
                }
            if (ok) return true;
        }
    return false;
}

/// True iff three separators of size < k cover V with every edge inside one of them; then
/// no tangle of order k exists.
inline bool covered_by_three_separators(const Graph& g, int k) {
    const int n = g.n();
    if (n > 3 * (k - 1)) return false;
    if (n <= k - 1) return true;
    const int s = std::min(k - 1, n);
    std::vector<VertexSet> sets;
    for_each_subset(n, s, s, [&](const VertexSet& x) {
        sets.push_back(x);
        return true;
    });
    auto edges = g.edges();
    for (std::size_t a = 0; a < sets.size(); ++a)
        for (std::size_t b = a; b < sets.size(); ++b)
            for (std::size_t c = b; c < sets.size(); ++c) {
                VertexSet all = set_union(set_union(sets[a], sets[b]), sets[c]);
                if (static_cast<int>(all.size()) != n) continue;
                bool ok = true;
                for (auto [u, v] : edges) {
                    bool in = (contains(sets[a], u) && contains(sets[a], v)) || (contains(sets[b], u) && contains(sets[b], v)) ||
                              (contains(sets[c], u) && contains(sets[c], v));
                    if (!in) {
                        ok = false;
                        break;
                    }
                }
                if (ok) return true;
            }
    return false;
}

/// Triple axiom over all triples of the inclusion-minimal sets among `zs`.
inline bool all_triples_ok(const Graph& g, std::vector<Bits> zs) {
    std::sort(zs.begin(), zs.end(), [](const Bits& a, const Bits& b) { return a.count() < b.count() || (a.count() == b.count() && a < b); });
    zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
    std::vector<Bits> minimal;
    for (const Bits& z : zs) {
        bool dominated = false;
        for (const Bits& m : minimal)
            if (m.is_subset_of(z)) {
                dominated = true;
                break;
            }
        if (!dominated) minimal.push_back(z);
    }
    const std::size_t m = minimal.size();
    std::vector<Bits> closed(m);
    for (std::size_t i = 0; i < m; ++i) closed[i] = minimal[i] | neighborhood(g, minimal[i]);
    // (Za∩Zb∩N[Zc]) ∪ (Za∩Zc∩N[Zb]) ∪ (Zb∩Zc∩N[Za]) must be non-empty.
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b) {
            Bits ab = minimal[a] & minimal[b];
            Bits a_nb = minimal[a] & closed[b], b_na = minimal[b] & closed[a];
            for (std::size_t c = b; c < m; ++c) {
                if (ab.intersects(closed[c]) || a_nb.intersects(minimal[c]) || b_na.intersects(minimal[c])) continue;
                return false;
            }
        }
    return true;
}

class TangleSearch {
public:
    /// `allow(i, j)` restricts separator i to components j it accepts (all when empty).
    using Filter = std::function<bool(int, int)>;

    TangleSearch(std::shared_ptr<const TangleUniverse> u, long long budget, Filter allow = {})
        : u_(std::move(u)), g_(u_->graph), budget_(budget), allow_(std::move(allow)) {}

    std::vector<Tangle> run() {
        const int k = u_->order;
        if (detail::covered_by_three_separators(g_, k)) return {};
        const int vars = static_cast<int>(u_->separators.size());
        // Candidates: (separator, component) pairs surviving the unary tests.
        domains_.assign(vars, {});
        for (int i = 0; i < vars; ++i) {
            for (int j = 0; j < static_cast<int>(u_->components[i].size()); ++j) {
                if (allow_ && !allow_(i, j)) continue;
                const Bits& z = u_->components[i][j];
                Bits closed = z | neighborhood(g_, z);
                if (static_cast<int>(closed.count()) < k) continue;
                if (covered_by_two_separators(g_, z, k)) continue;
                int id = static_cast<int>(cand_var_.size());
                cand_var_.push_back(i);
                cand_comp_.push_back(j);
                domains_[i].push_back(id);
            }
            if (domains_[i].empty()) return {};
        }
        const int c = static_cast<int>(cand_var_.size());
        compat_known_.assign(c, Bits(c));
        compat_.assign(c, Bits(c));
        choice_.assign(vars, -1);
        search(domains_);
        std::sort(found_.begin(), found_.end());
        std::vector<Tangle> out;
        for (auto& ch : found_) out.emplace_back(u_, ch);
        return out;
    }

private:
    std::shared_ptr<const TangleUniverse> u_;
    const Graph& g_;
    long long budget_;
    Filter allow_;
    long long nodes_ = 0;
    std::vector<std::vector<int>> domains_;
    std::vector<int> cand_var_, cand_comp_;
    std::vector<Bits> compat_known_, compat_;
    std::vector<int> choice_;
    std::vector<std::vector<int>> found_;

    const Bits& z_of(int cand) const { return u_->components[cand_var_[cand]][cand_comp_[cand]]; }

    bool compatible(int a, int b) {
        if (!compat_known_[a].test(b)) {
            bool ok = static_cast<int>(pair_witness(g_, z_of(a), z_of(b)).count()) >= u_->order;
            compat_known_[a].set(b);
            compat_known_[b].set(a);
            if (ok) {
                compat_[a].set(b);
                compat_[b].set(a);
            }
        }
        return compat_[a].test(b);
    }

    void search(std::vector<std::vector<int>> domains) {
        if (++nodes_ > budget_) fail(ErrorKind::resource, "tangle search budget exceeded");
        // Propagate singletons, then branch on the smallest open domain.
        const int vars = static_cast<int>(domains.size());
        std::vector<char> settled(vars, 0);
        bool changed = true;
        while (changed) {
            changed = false;
            for (int i = 0; i < vars; ++i) {
                if (settled[i] || domains[i].size() != 1) continue;
                settled[i] = 1;
                changed = true;
                int a = domains[i][0];
                for (int j = 0; j < vars; ++j) {
                    if (j == i) continue;
                    auto& d = domains[j];
                    d.erase(std::remove_if(d.begin(), d.end(), [&](int b) { return !compatible(a, b); }), d.end());
                    if (d.empty()) return;
                }
            }
        }
        int branch = -1;
        for (int i = 0; i < vars; ++i)
            if (domains[i].size() > 1 && (branch < 0 || domains[i].size() < domains[branch].size())) branch = i;
        if (branch < 0) {
            std::vector<Bits> zs;
            std::vector<int> choice(vars);
            for (int i = 0; i < vars; ++i) {
                choice[i] = cand_comp_[domains[i][0]];
                zs.push_back(z_of(domains[i][0]));
            }
            if (all_triples_ok(g_, std::move(zs))) found_.push_back(std::move(choice));
            return;
        }
        for (int a : std::vector<int>(domains[branch])) {
            auto next = domains;
            next[branch] = {a};
            search(std::move(next));
        }
    }
};

}  // namespace detail

/// All tangles of order k of a connected graph, canonically ordered (by chosen component
/// indices along the separator order). Resource error past `budget` search nodes.
inline std::vector<Tangle> enumerate_tangles(const Graph& g, int k, long long budget = kTangleSearchBudget) {
    auto universe = TangleUniverse::build(g, k);
    return detail::TangleSearch(universe, budget).run();
}

inline std::vector<Tangle> enumerate_tangles(std::shared_ptr<const TangleUniverse> universe, long long budget = kTangleSearchBudget) {
    return detail::TangleSearch(std::move(universe), budget).run();
}

/// Tangles of the universe all of whose chosen components pass `allow(separator, component)`.
inline std::vector<Tangle> enumerate_tangles_where(std::shared_ptr<const TangleUniverse> universe,
                                                   detail::TangleSearch::Filter allow,
                                                   long long budget = kTangleSearchBudget) {
    return detail::TangleSearch(std::move(universe), budget, std::move(allow)).run();
}

/// Tangles of order k of g containing every separation in `required` (each of order < k).
inline std::vector<Tangle> tangles_containing(const Graph& g, int k, const std::vector<Separation>& required,
                                              long long budget = kTangleSearchBudget) {
    auto u = TangleUniverse::build(g, k);
    std::vector<std::vector<Bits>> need(u->separators.size());
    for (const Separation& s : required) {
        if (s.order() >= k) fail(ErrorKind::invalid_input, "required separation has order at least k");
        int i = u->find(s.S);
        if (i < 0) {
            if (!s.Y.empty()) return {};  // (Y,S,Z) with G-S connected and Y non-empty is never a member
            continue;
        }
        need[i].push_back(to_bits(g.n(), s.Z));
    }
    return enumerate_tangles_where(
        u,
        [&](int i, int j) {
            for (const Bits& z : need[i])
                if (!u->components[i][j].is_subset_of(z)) return false;
            return true;
        },
        budget);
}

/// Independent re-check of the triple axiom. For n <= 12 every minimal Z-side of every
/// separator of order < k enters an exhaustive triple check; larger graphs use the
/// decomposition into forced and chosen Z-sides.
inline std::string tangle_violation(const Tangle& t) {
    const Graph& g = t.graph();
    const int k = t.order();
    const auto& u = t.universe();
    std::vector<Bits> chosen;
    for (std::size_t i = 0; i < u.separators.size(); ++i) {
        if (t.choice()[i] < 0 || t.choice()[i] >= static_cast<int>(u.components[i].size())) return "choice out of range";
        chosen.push_back(t.chosen(static_cast<int>(i)));
    }
    if (g.n() <= 12) {
        std::vector<Bits> zs = chosen;
        for_each_subset(g.n(), 0, k - 1, [&](const VertexSet& s) {
            zs.push_back(g.full_set() - to_bits(g.n(), s));
            return true;
        });
        for (const Bits& z : zs)
            if (z.none()) return "a member has an empty Z-side";
        return detail::all_triples_ok(g, zs) ? std::string{} : "triple axiom violated";
    }
    if (detail::covered_by_three_separators(g, k)) return "three separators cover the graph";
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        if (static_cast<int>((chosen[i] | neighborhood(g, chosen[i])).count()) < k) return "closed neighbourhood of a chosen side is too small";
        if (detail::covered_by_two_separators(g, chosen[i], k)) return "a chosen side is covered by two separators";
        for (std::size_t j = i + 1; j < chosen.size(); ++j)
            if (static_cast<int>(detail::pair_witness(g, chosen[i], chosen[j]).count()) < k) return "two chosen sides fail against a separator";
    }
    return detail::all_triples_ok(g, chosen) ? std::string{} : "triple axiom violated";
}

inline void validate_tangle(const Tangle& t) {
    std::string why = tangle_violation(t);
    if (!why.empty()) fail(ErrorKind::property_violation, "tangle axioms violated: " + why);
}

/// The ≼-minimal members of the tangle, canonically sorted.
inline std::vector<Separation> minimal_separations(const Tangle& t) {
    const auto& u = t.universe();
    const Graph& g = t.graph();
    const int b = static_cast<int>(u.separators.size());
    if (b == 0) return {Separation{{}, {}, iota_set(g.n())}};
    std::vector<Bits> sz(b), s(b);
    for (int i = 0; i < b; ++i) {
        s[i] = to_bits(g.n(), u.separators[i]);
        sz[i] = s[i] | t.chosen(i);
    }
    std::vector<Separation> out;
    for (int i = 0; i < b; ++i) {
        bool minimal = true;
        for (int j = 0; j < b && minimal; ++j) {
            if (j == i || !sz[j].is_subset_of(sz[i])) continue;
            if (sz[j] != sz[i] || s[j].is_subset_of(s[i])) minimal = false;
        }
        if (minimal) out.push_back(t.minimal_member(i));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Minimal members that are not degenerate (order-4 tangles only).
inline std::vector<Separation> nondegenerate_minimal(const Tangle& t) {
    if (t.order() != 4) fail(ErrorKind::invalid_input, "non-degenerate minimal separations are defined for order-4 tangles");
    std::vector<Separation> out;
    for (auto& s : minimal_separations(t))
        if (!is_degenerate(t.graph(), s)) out.push_back(s);
    return out;
}

namespace detail {
inline void require_order4_3connected(const Tangle& t) {
    if (t.order() != 4) fail(ErrorKind::invalid_input, "operation needs a tangle of order 4");
    if (!t.universe().three_connected()) fail(ErrorKind::invalid_input, "operation needs a 3-connected host graph");
}
}  // namespace detail

/// X_T: the intersection of Z∪S over the non-degenerate minimal separations.
inline VertexSet core_X(const Tangle& t) {
    detail::require_order4_3connected(t);
    VertexSet x = iota_set(t.graph().n());
    for (auto& s : nondegenerate_minimal(t)) x = set_intersection(x, set_union(s.Z, s.S));
    return x;
}

/// R_T: the union of separators of T_nd together with the intersection of their Z-sides.
inline VertexSet region_R(const Tangle& t) {
    detail::require_order4_3connected(t);
    VertexSet un, in = iota_set(t.graph().n());
    for (auto& s : nondegenerate_minimal(t)) {
        un = set_union(un, s.S);
        in = set_intersection(in, s.Z);
    }
    return set_union(un, in);
}

/// Crossedges among pairs of T_nd (sorted, each as (min,max)); property violation if they
/// fail to form a matching.
inline std::vector<Edge> crossedges(const Tangle& t) {
    detail::require_order4_3connected(t);
    auto nd = nondegenerate_minimal(t);
    std::vector<Edge> out;
    for (std::size_t i = 0; i < nd.size(); ++i)
        for (std::size_t j = i + 1; j < nd.size(); ++j) {
            PairClass pc = classify_pair(t.graph(), nd[i], nd[j]);
            if (pc.kind == PairKind::crossing) {
                auto [a, b] = *pc.crossedge;
                out.emplace_back(std::min(a, b), std::max(a, b));
            }
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::vector<char> used(t.graph().n(), 0);
    for (auto [a, b] : out) {
        if (used[a] || used[b])
            fail(ErrorKind::property_violation, "crossedges do not form a matching at vertex " + std::to_string(used[a] ? a : b));
        used[a] = used[b] = 1;
    }
    return out;
}

/// Fence of the separator of s ∈ T_nd: separator vertices off crossedges, plus the crossedge
/// partners of separator vertices on crossedges.
inline VertexSet fence(const Tangle& t, const Separation& s) {
    auto nd = nondegenerate_minimal(t);
    if (std::find(nd.begin(), nd.end(), s) == nd.end())
        fail(ErrorKind::invalid_input, "fence is defined for non-degenerate minimal separations only");
    std::vector<int> partner(t.graph().n(), -1);
    for (auto [a, b] : crossedges(t)) {
        partner[a] = b;
        partner[b] = a;
    }
    VertexSet out;
    for (int v : s.S) out.push_back(partner[v] >= 0 ? partner[v] : v);
    out = normalized(out);
    if (out.size() != 3) fail(ErrorKind::property_violation, "fence does not have exactly three vertices");
    return out;
}

/// Projection π_M of a host separation onto the pattern of a model.
inline Separation project_by_model(const MinorModel& model, const Separation& s, int host_n) {
    std::vector<char> side(host_n, 0);
    for (int v : s.Y) side[v] = 1;
    for (int v : s.S) side[v] = 2;
    for (int v : s.Z) side[v] = 3;
    Separation out;
    for (int p = 0; p < static_cast<int>(model.branch_sets.size()); ++p) {
        bool all_y = true, all_z = true, meets_s = false;
        for (int x : model.branch_sets[p]) {
            all_y = all_y && side[x] == 1;
            all_z = all_z && side[x] == 3;
            meets_s = meets_s || side[x] == 2;
        }
        if (meets_s)
            out.S.push_back(p);
        else if (all_y)
            out.Y.push_back(p);
        else if (all_z)
            out.Z.push_back(p);
        else
            fail(ErrorKind::property_violation, "connected branch set straddles a separation");
    }
    return out;
}

/// Lifting of a pattern tangle to the host along a model: (Y,S,Z) is a member iff its
/// projection is a member of the pattern tangle. The result is re-validated.
inline Tangle lift_tangle(const Graph& host, const MinorModel& model, const Tangle& pattern_tangle) {
    std::string why = model_violation(host, pattern_tangle.graph(), model);
    if (!why.empty()) fail(ErrorKind::invalid_input, "invalid model: " + why);
    auto u = TangleUniverse::build(host, pattern_tangle.order());
    std::vector<int> choice(u->separators.size(), -1);
    for (std::size_t i = 0; i < u->separators.size(); ++i) {
        Bits s = to_bits(host.n(), u->separators[i]);
        for (std::size_t j = 0; j < u->components[i].size(); ++j) {
            Separation sep = separation_from_bits(host, s, u->components[i][j]);
            if (pattern_tangle.contains(project_by_model(model, sep, host.n()))) {
                if (choice[i] >= 0) fail(ErrorKind::property_violation, "lifting contains two members with one separator");
                choice[i] = static_cast<int>(j);
            }
        }
        if (choice[i] < 0) fail(ErrorKind::property_violation, "lifting misses a separator");
    }
    Tangle lifted(u, std::move(choice));
    validate_tangle(lifted);
    return lifted;
}

/// s distinguishes a and b when one tangle contains s and the other its reverse.
inline bool distinguishes(const Separation& s, const Tangle& a, const Tangle& b) {
    if (s.order() >= a.order() || s.order() >= b.order()) return false;
    return (a.contains(s) && b.contains(s.reversed())) || (a.contains(s.reversed()) && b.contains(s));
}

/// Smallest order of a separation distinguishing a and b, or -1 when none does.
inline int distinguishing_order(const Tangle& a, const Tangle& b) {
    require(a.graph() == b.graph() && a.order() == b.order(), "tangles must share host and order");
    const auto& u = a.universe();
    int best = -1;
    for (std::size_t i = 0; i < u.separators.size(); ++i)
        if (a.choice()[i] != b.choice()[i]) {
            int o = static_cast<int>(u.separators[i].size());
            if (best < 0 || o < best) best = o;
        }
    return best;
}

/// Distinguishes a and b, and no separation of smaller order does.
inline bool efficiently_distinguishes(const Separation& s, const Tangle& a, const Tangle& b) {
    return distinguishes(s, a, b) && s.order() == distinguishing_order(a, b);
}

/// FNV-1a hash of the graph6 encoding, as 16 hex digits.
inline std::string host_hash(const Graph& g) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : graph6_encode(g)) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[i] = hex[h & 15];
    return out;
}

}  // namespace tangleforge
