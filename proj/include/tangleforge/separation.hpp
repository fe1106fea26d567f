// Separations (Y,S,Z): tightness, degeneracy, the order ≼, pairwise classification,
// nestedness, and enumeration of tight separations of bounded order.
#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "tangleforge/graph.hpp"

namespace tangleforge {

/// A partition (Y,S,Z) of the vertex set with no edge between Y and Z. Order = |S|.
struct Separation {
    VertexSet Y, S, Z;

    int order() const { return static_cast<int>(S.size()); }
    bool is_proper() const { return !Y.empty() && !Z.empty(); }
    Separation reversed() const { return {Z, S, Y}; }

    friend bool operator==(const Separation& a, const Separation& b) {
        return a.Y == b.Y && a.S == b.S && a.Z == b.Z;
    }
    friend bool operator!=(const Separation& a, const Separation& b) { return !(a == b); }
    /// Canonical order: by S, then Y, then Z (lexicographic on sorted vectors).
    friend bool operator<(const Separation& a, const Separation& b) {
        return std::tie(a.S, a.Y, a.Z) < std::tie(b.S, b.Y, b.Z);
    }
};

/// Empty string when s is a separation of g, else the violated invariant.
inline std::string separation_violation(const Graph& g, const Separation& s) {
    std::vector<int> part(g.n(), -1);
    const VertexSet* parts[3] = {&s.Y, &s.S, &s.Z};
    for (int p = 0; p < 3; ++p) {
        const VertexSet& x = *parts[p];
        if (!std::is_sorted(x.begin(), x.end()) || std::adjacent_find(x.begin(), x.end()) != x.end())
            return "sides must be sorted and duplicate-free";
        for (int v : x) {
            if (v < 0 || v >= g.n()) return "vertex out of range";
            if (part[v] >= 0) return "sides are not disjoint";
            part[v] = p;
        }
    }
    for (int v = 0; v < g.n(); ++v)
        if (part[v] < 0) return "sides do not cover the vertex set";
    for (int y : s.Y)
        for (int w : g.neighbors(y))
            if (part[w] == 2) return "edge between Y and Z";
    return {};
}

inline void validate_separation(const Graph& g, const Separation& s) {
    std::string why = separation_violation(g, s);
    if (!why.empty()) fail(ErrorKind::invalid_input, "invalid separation: " + why);
}

/// Separation with separator S and Z-side z; Y is the rest.
inline Separation separation_from(const Graph& g, const VertexSet& S, const VertexSet& Z) {
    VertexSet Y = set_difference(set_difference(iota_set(g.n()), S), Z);
    return {Y, S, Z};
}

inline Separation separation_from_bits(const Graph& g, const Bits& S, const Bits& Z) {
    Bits Y = g.full_set() - S - Z;
    return {to_set(Y), to_set(S), to_set(Z)};
}

/// Tight: some component of G[Y] and some component of G[Z] both have neighbourhood exactly S.
inline bool is_tight(const Graph& g, const Separation& s) {
    Bits S = to_bits(g.n(), s.S);
    auto has_full = [&](const VertexSet& side) {
        for (const Bits& c : components_within(g, to_bits(g.n(), side)))
            if (neighborhood(g, c) == S) return true;
        return false;
    };
    return has_full(s.Y) && has_full(s.Z);
}

/// Degenerate: order 3, independent separator, and |Y| = 1.
inline bool is_degenerate(const Graph& g, const Separation& s) {
    if (s.order() != 3 || s.Y.size() != 1) return false;
    for (int a : s.S)
        for (int b : s.S)
            if (a < b && g.has_edge(a, b)) return false;
    return true;
}

enum class Relation { less, equal, greater, incomparable };

/// The order ≼: s1 ≼ s2 iff S1∪Z1 ⊊ S2∪Z2, or S1∪Z1 = S2∪Z2 and S1 ⊆ S2.
inline Relation compare(const Separation& a, const Separation& b) {
    if (a == b) return Relation::equal;
    VertexSet A = set_union(a.S, a.Z), B = set_union(b.S, b.Z);
    if (A == B) {
        if (is_subset(a.S, b.S)) return Relation::less;
        if (is_subset(b.S, a.S)) return Relation::greater;
        return Relation::incomparable;
    }
    if (is_subset(A, B)) return Relation::less;
    if (is_subset(B, A)) return Relation::greater;
    return Relation::incomparable;
}

inline bool precedes_or_equal(const Separation& a, const Separation& b) {
    Relation r = compare(a, b);
    return r == Relation::less || r == Relation::equal;
}

enum class PairKind { orthogonal, crossing, neither };

struct PairClass {
    PairKind kind = PairKind::neither;
    std::optional<Edge> crossedge;  ///< (s1, s2) with s1 ∈ S1, s2 ∈ S2, when crossing
};

/// Orthogonal: (Y1∪S1) ∩ (Y2∪S2) ⊆ S1∩S2. Crossing: Y1∩Y2 = S1∩S2 = ∅ and an edge s1s2
/// with S1∩Y2 = {s1}, S2∩Y1 = {s2}.
inline PairClass classify_pair(const Graph& g, const Separation& a, const Separation& b) {
    VertexSet lhs = set_intersection(set_union(a.Y, a.S), set_union(b.Y, b.S));
    if (is_subset(lhs, set_intersection(a.S, b.S))) return {PairKind::orthogonal, std::nullopt};
    if (set_intersection(a.Y, b.Y).empty() && set_intersection(a.S, b.S).empty()) {
        VertexSet s1 = set_intersection(a.S, b.Y), s2 = set_intersection(b.S, a.Y);
        if (s1.size() == 1 && s2.size() == 1 && g.has_edge(s1[0], s2[0]))
            return {PairKind::crossing, Edge{s1[0], s2[0]}};
    }
    return {PairKind::neither, std::nullopt};
}

/// Nested: some orientations satisfy A1 ⊆ A2 and B1 ⊇ B2, where A = Y∪S, B = S∪Z.
inline bool is_nested(const Separation& a, const Separation& b) {
    VertexSet A1 = set_union(a.Y, a.S), B1 = set_union(a.S, a.Z);
    VertexSet A2 = set_union(b.Y, b.S), B2 = set_union(b.S, b.Z);
    return (is_subset(A1, A2) && is_subset(B2, B1)) || (is_subset(A1, B2) && is_subset(A2, B1)) ||
           (is_subset(B1, A2) && is_subset(B2, A1)) || (is_subset(B1, B2) && is_subset(A2, A1));
}

/// Every tight proper separation of order <= max_order, both orientations, sorted canonically.
inline std::vector<Separation> enumerate_tight_separations(const Graph& g, int max_order) {
    require(max_order >= 0 && max_order <= 3, "maximum separation order must lie in 0..3");
    require(is_connected(g), "separation enumeration needs a connected graph");
    std::vector<Separation> out;
    for_each_subset(g.n(), 0, max_order, [&](const VertexSet& S) {
        Bits Sb = to_bits(g.n(), S);
        auto comps = components_without(g, Sb);
        if (comps.size() < 2) return true;
        std::vector<char> full(comps.size());
        for (std::size_t i = 0; i < comps.size(); ++i) full[i] = neighborhood(g, comps[i]) == Sb;
        const std::size_t c = comps.size();
        require(c < 31, "too many components for bipartition enumeration");
        for (std::uint32_t mask = 1; mask + 1 < (1u << c); ++mask) {
            bool yfull = false, zfull = false;
            Bits Z(g.n());
            for (std::size_t i = 0; i < c; ++i) {
                if (mask >> i & 1) {
                    Z |= comps[i];
                    zfull = zfull || full[i];
                } else {
                    yfull = yfull || full[i];
                }
            }
            if (yfull && zfull) out.push_back(separation_from_bits(g, Sb, Z));
        }
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace tangleforge
