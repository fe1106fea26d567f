// Minor models: branch sets of a pattern graph inside a host graph.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tangleforge/graph.hpp"

namespace tangleforge {

/// A model of pattern H in host G: one branch set per pattern vertex.
struct MinorModel {
    std::vector<VertexSet> branch_sets;  ///< branch_sets[v] = host vertices of V_v (sorted)
};

/// Returns an empty string when `model` is a valid model of `pattern` in `host`,
/// otherwise a description of the first violated invariant.
inline std::string model_violation(const Graph& host, const Graph& pattern, const MinorModel& model) {
    if (static_cast<int>(model.branch_sets.size()) != pattern.n()) return "branch set count differs from pattern order";
    std::vector<int> owner(host.n(), -1);
    for (int v = 0; v < pattern.n(); ++v) {
        const VertexSet& bs = model.branch_sets[v];
        if (bs.empty()) return "empty branch set for pattern vertex " + std::to_string(v);
        for (int x : bs) {
            if (x < 0 || x >= host.n()) return "branch set vertex out of range";
            if (owner[x] >= 0) return "branch sets of " + std::to_string(owner[x]) + " and " + std::to_string(v) + " intersect";
            owner[x] = v;
        }
        if (!is_connected_set(host, to_bits(host.n(), bs)))
            return "branch set of pattern vertex " + std::to_string(v) + " is not connected";
    }
    for (auto [a, b] : pattern.edges()) {
        bool realized = false;
        for (int x : model.branch_sets[a]) {
            for (int y : host.neighbors(x))
                if (owner[y] == b) {
                    realized = true;
                    break;
                }
            if (realized) break;
        }
        if (!realized) return "pattern edge " + std::to_string(a) + "-" + std::to_string(b) + " is not realized";
    }
    return {};
}

inline bool is_valid_model(const Graph& host, const Graph& pattern, const MinorModel& model) {
    return model_violation(host, pattern, model).empty();
}

/// Faithful: pattern vertex v lies in its own branch set, where `to_host[v]` names the
/// host vertex that v stands for (identity when empty).
inline bool is_faithful(const MinorModel& model, const VertexSet& to_host = {}) {
    for (std::size_t v = 0; v < model.branch_sets.size(); ++v) {
        int h = to_host.empty() ? static_cast<int>(v) : to_host[v];
        if (!contains(model.branch_sets[v], h)) return false;
    }
    return true;
}

inline Graph complete_graph(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph(n, e);
}

inline Graph complete_bipartite_graph(int a, int b) {
    std::vector<Edge> e;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
    return Graph(a + b, e);
}

}  // namespace tangleforge
