// Planarity under uncontraction of crossedges: the torso on R_T is planar whenever the
// torso of the fully contracted graph is. The harness walks the single-edge contractions,
// checks the implication at every step with two planarity procedures, carries Kuratowski
// models across each contraction, and checks the local structure around every crossedge.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tangleforge/contraction.hpp"
#include "tangleforge/planarity.hpp"
#include "tangleforge/tangle.hpp"

namespace tangleforge {

/// Carries a K5/K3,3 model of h across the contraction of one edge whose endpoints map to
/// `merged` in h2 (fwd maps h's vertices to h2's). Tries the projected sets, then dropping the
/// merged vertex from one of the two sets holding it, then the K5 built around the merged
/// vertex; every candidate is validated. Returns the transferred witness or nothing.
inline std::optional<KuratowskiWitness> transfer_witness(const Graph& h2, const std::vector<int>& fwd, int merged,
                                                         const KuratowskiWitness& w) {
    std::vector<VertexSet> sets;
    for (const VertexSet& b : w.model.branch_sets) {
        VertexSet img;
        for (int v : b) img.push_back(fwd[v]);
        sets.push_back(normalized(img));
    }
    auto attempt = [&](const std::string& pattern, std::vector<VertexSet> bs) -> std::optional<KuratowskiWitness> {
        KuratowskiWitness out{pattern, {std::move(bs)}};
        if (is_valid_model(h2, out.pattern_graph(), out.model)) return out;
        return std::nullopt;
    };
    std::vector<int> holders;
    for (std::size_t i = 0; i < sets.size(); ++i)
        if (contains(sets[i], merged)) holders.push_back(static_cast<int>(i));
    if (holders.size() <= 1) return attempt(w.pattern, sets);
    for (int keep = 0; keep < 2; ++keep) {
        auto bs = sets;
        VertexSet& drop = bs[holders[1 - keep]];
        drop.erase(std::find(drop.begin(), drop.end(), merged));
        if (drop.empty()) continue;
        if (auto r = attempt(w.pattern, bs)) return r;
    }
    if (w.pattern == "K33") {
        std::vector<VertexSet> bs{{merged}};
        for (std::size_t i = 0; i < sets.size(); ++i)
            if (static_cast<int>(i) != holders[0] && static_cast<int>(i) != holders[1]) bs.push_back(sets[i]);
        if (auto r = attempt("K5", bs)) return r;
    }
    return std::nullopt;
}

struct PreservationStep {
    Edge crossedge;               ///< in the original graph
    bool source_planar = false;   ///< torso before this contraction
    bool target_planar = false;   ///< torso after it
    bool implication_ok = true;   ///< target planar ⇒ source planar
    bool procedures_agree = true; ///< path addition and Boyer–Myrvold agree on the source torso
    std::string witness_transfer; ///< "", or "K5->K5", "K33->K33", "K33->K5", "failed"
};

struct CrossedgeCheck {
    Edge crossedge;
    bool neighborhood_ok = false;  ///< N_H(s1) = {s2} ∪ (fence(S2) ∖ {s1}), and symmetrically
    bool fence_triangles_ok = false;
};

struct PlanarityPreservationReport {
    bool ok = true;
    std::vector<std::string> violations;
    VertexSet region;                 ///< R_T
    bool torso_planar = false;        ///< G⟦R_T⟧
    bool contracted_torso_planar = false;
    bool end_to_end_ok = true;
    std::vector<PreservationStep> steps;
    std::vector<CrossedgeCheck> crossedge_checks;
    bool region_projection_checked = false;  ///< R of each intermediate tangle recomputed
};

/// Runs the harness for a tangle of order 4 of a 3-connected graph. When
/// `check_intermediate_regions` is set, the tangle is carried along each contraction and its
/// region is checked to equal the projected region.
inline PlanarityPreservationReport check_planarity_preservation(const Tangle& t, bool check_intermediate_regions = false) {
    PlanarityPreservationReport r;
    auto violate = [&](const std::string& why) {
        r.ok = false;
        r.violations.push_back(why);
    };
    const Graph& g = t.graph();
    r.region = region_R(t);
    auto ex = crossedges(t);
    IndexedGraph h0 = torso(g, r.region);
    r.torso_planar = is_planar(h0.graph);

    // Local structure of H = G⟦R⟧ around every crossedge.
    auto nd = nondegenerate_minimal(t);
    auto adjacent_in_h = [&](int a, int b) {
        int la = static_cast<int>(std::lower_bound(r.region.begin(), r.region.end(), a) - r.region.begin());
        int lb = static_cast<int>(std::lower_bound(r.region.begin(), r.region.end(), b) - r.region.begin());
        return h0.graph.has_edge(la, lb);
    };
    auto h_neighbors = [&](int a) {
        int la = static_cast<int>(std::lower_bound(r.region.begin(), r.region.end(), a) - r.region.begin());
        VertexSet out;
        for (int w : h0.graph.neighbors(la)) out.push_back(r.region[w]);
        return out;
    };
    for (const Edge& e : ex) {
        CrossedgeCheck c{e};
        const Separation* sep_of[2] = {nullptr, nullptr};  // separator containing e.first / e.second
        for (std::size_t i = 0; i < nd.size(); ++i)
            for (std::size_t j = 0; j < nd.size(); ++j) {
                if (i == j) continue;
                PairClass pc = classify_pair(g, nd[i], nd[j]);
                if (pc.kind == PairKind::crossing && pc.crossedge->first == e.first && pc.crossedge->second == e.second) {
                    sep_of[0] = &nd[i];
                    sep_of[1] = &nd[j];
                }
            }
        if (!sep_of[0]) {
            violate("no crossing pair found for crossedge " + std::to_string(e.first) + "-" + std::to_string(e.second));
            r.crossedge_checks.push_back(c);
            continue;
        }
        c.neighborhood_ok = c.fence_triangles_ok = true;
        int ends[2] = {e.first, e.second};
        for (int side = 0; side < 2; ++side) {
            int s = ends[side], partner = ends[1 - side];
            VertexSet fc = fence(t, *sep_of[1 - side]);
            VertexSet expected = set_union({partner}, set_difference(fc, {s}));
            if (h_neighbors(s) != expected) c.neighborhood_ok = false;
            for (std::size_t a = 0; a < fc.size(); ++a)
                for (std::size_t b = a + 1; b < fc.size(); ++b)
                    if (!contains(r.region, fc[a]) || !contains(r.region, fc[b]) || !adjacent_in_h(fc[a], fc[b])) c.fence_triangles_ok = false;
        }
        if (!c.neighborhood_ok) violate("neighbourhood claim fails at crossedge " + std::to_string(e.first) + "-" + std::to_string(e.second));
        if (!c.fence_triangles_ok) violate("fence is not a triangle at crossedge " + std::to_string(e.first) + "-" + std::to_string(e.second));
        r.crossedge_checks.push_back(c);
    }

    // Single-edge contractions in sorted order.
    ContractionMap total = contract_matching(g, {});
    std::optional<Tangle> cur;
    if (check_intermediate_regions) cur = t;
    IndexedGraph h = h0;
    bool h_planar = r.torso_planar;
    for (const Edge& e : ex) {
        PreservationStep st;
        st.crossedge = e;
        st.source_planar = h_planar;
        st.procedures_agree = is_planar_boyer_myrvold(h.graph) == h_planar;
        if (!st.procedures_agree) violate("planarity procedures disagree on an intermediate torso");
        ContractionMap step = contract_matching(total.target, {{total.forward[e.first], total.forward[e.second]}});
        ContractionMap next_total = compose(total, step);
        VertexSet region2 = project_set(next_total, r.region);
        IndexedGraph h2 = torso(next_total.target, region2);
        st.target_planar = is_planar(h2.graph);
        st.implication_ok = !st.target_planar || st.source_planar;
        if (!st.implication_ok) violate("planarity not preserved when uncontracting " + std::to_string(e.first) + "-" + std::to_string(e.second));
        if (!st.source_planar) {
            auto w = kuratowski_witness(h.graph);
            // Map h's local vertices to h2's local vertices.
            std::vector<int> fwd(h.graph.n());
            for (int v = 0; v < h.graph.n(); ++v) {
                int img = step.forward[h.to_host[v]];
                fwd[v] = static_cast<int>(std::lower_bound(region2.begin(), region2.end(), img) - region2.begin());
            }
            int merged_host = step.forward[total.forward[e.first]];
            int merged = static_cast<int>(std::lower_bound(region2.begin(), region2.end(), merged_host) - region2.begin());
            auto moved = transfer_witness(h2.graph, fwd, merged, *w);
            st.witness_transfer = moved ? w->pattern + "->" + moved->pattern : "failed";
            if (!moved) violate("Kuratowski model could not be carried across " + std::to_string(e.first) + "-" + std::to_string(e.second));
        }
        if (cur) {
            cur = induced_tangle(*cur, step);
            if (region_R(*cur) != region2) violate("region of the contracted tangle differs from the projected region");
        }
        r.steps.push_back(st);
        total = std::move(next_total);
        h = std::move(h2);
        h_planar = r.steps.back().target_planar;
    }
    r.region_projection_checked = check_intermediate_regions;
    r.contracted_torso_planar = h_planar;
    r.end_to_end_ok = !r.contracted_torso_planar || r.torso_planar;
    if (!r.end_to_end_ok) violate("contracted torso planar but original torso is not");
    return r;
}

}  // namespace tangleforge
