// Minor-model search by branch-set growing backtracking.
#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "tangleforge/graph.hpp"
#include "tangleforge/model.hpp"
#include "tangleforge/planarity.hpp"

namespace tangleforge {

/// Largest number of pattern vertices whose branch-set roots the search chooses freely.
inline constexpr int kMinorSearchFreeRootCap = 8;
inline constexpr long long kMinorSearchBudget = 50'000'000;

namespace detail {

class MinorSearch {
public:
    MinorSearch(const Graph& g, const Graph& h, std::vector<int> roots, long long budget)
        : g_(g), h_(h), roots_(std::move(roots)), budget_(budget), owner_(g.n(), -1), sets_(h.n()) {}

    std::optional<MinorModel> run() {
        order_pattern();
        if (!place(0)) return std::nullopt;
        return result_;
    }

private:
    const Graph& g_;
    const Graph& h_;
    std::vector<int> roots_;
    long long budget_;
    long long nodes_ = 0;
    std::vector<int> owner_;
    std::vector<std::vector<int>> sets_;
    std::vector<int> order_, position_;
    int free_count_ = 0;
    MinorModel result_;

    void order_pattern() {
        const int k = h_.n();
        position_.assign(k, -1);
        std::vector<int> linked(k, 0);
        for (int step = 0; step < k; ++step) {
            int best = -1;
            auto key = [&](int v) {
                return std::make_tuple(roots_[v] >= 0 ? 1 : 0, linked[v], h_.degree(v), -v);
            };
            for (int v = 0; v < k; ++v)
                if (position_[v] < 0 && (best < 0 || key(v) > key(best))) best = v;
            position_[best] = step;
            order_.push_back(best);
            for (int w : h_.neighbors(best)) ++linked[w];
        }
        free_count_ = g_.n();
    }

    void tick() {
        if (++nodes_ > budget_) fail(ErrorKind::resource, "minor search budget exceeded");
    }

    bool adjacent_sets(int a, int b) const {
        for (int x : sets_[a])
            for (int y : g_.neighbors(x))
                if (owner_[y] == b) return true;
        return false;
    }

    bool touches(int v, int p) const {
        for (int y : g_.neighbors(v))
            if (owner_[y] == p) return true;
        return false;
    }

    void assign(int v, int p) {
        owner_[v] = p;
        sets_[p].push_back(v);
        --free_count_;
    }

    void unassign(int v, int p) {
        owner_[v] = -1;
        sets_[p].pop_back();
        ++free_count_;
    }

    /// Free vertices reachable from branch set p through free vertices.
    bool reaches_free_or(int p, int target) const {
        std::vector<char> seen(g_.n(), 0);
        std::vector<int> queue;
        for (int x : sets_[p])
            for (int y : g_.neighbors(x))
                if (owner_[y] < 0 && !seen[y]) {
                    seen[y] = 1;
                    queue.push_back(y);
                }
        for (std::size_t i = 0; i < queue.size(); ++i) {
            int v = queue[i];
            if (v == target) return true;
            for (int w : g_.neighbors(v))
                if (owner_[w] < 0 && !seen[w]) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
        }
        return target < 0 && !queue.empty();
    }

    bool place(int i) {
        tick();
        if (i == h_.n()) {
            result_.branch_sets.clear();
            for (auto& set : sets_) result_.branch_sets.push_back(normalized(set));
            return true;
        }
        if (free_count_ < h_.n() - i) return false;
        int p = order_[i];
        std::vector<int> earlier;
        for (int q : h_.neighbors(p))
            if (position_[q] < i) earlier.push_back(q);
        std::vector<int> candidates;
        if (roots_[p] >= 0) {
            if (owner_[roots_[p]] >= 0) return false;
            candidates.push_back(roots_[p]);
        } else {
            for (int r = 0; r < g_.n(); ++r)
                if (owner_[r] < 0) candidates.push_back(r);
        }
        for (int r : candidates) {
            if (!earlier.empty() && roots_[p] < 0) {
                int q = earlier[0];
                if (!touches(r, q) && !reaches_free_or(q, r)) continue;
            }
            assign(r, p);
            bool ok = realize(i, p, earlier, 0);
            unassign(r, p);
            if (ok) return true;
        }
        return false;
    }

    /// Realises the pattern edges p-earlier[j..] by growing branch sets along free paths.
    bool realize(int i, int p, const std::vector<int>& earlier, std::size_t j) {
        tick();
        if (j == earlier.size()) return place(i + 1);
        int q = earlier[j];
        if (adjacent_sets(p, q)) return realize(i, p, earlier, j + 1);
        // Enumerate free paths y1..yk from set p to set q with no shortcut to either end.
        std::vector<int> path;
        std::vector<char> on_path(g_.n(), 0);
        std::function<bool(int)> extend = [&](int v) -> bool {
            tick();
            path.push_back(v);
            on_path[v] = 1;
            bool found = false;
            if (touches(v, q)) {
                // Try every split: y1..ys join p, the rest join q.
                for (std::size_t s = path.size() + 1; s-- > 0 && !found;) {
                    for (std::size_t t = 0; t < path.size(); ++t) assign(path[t], t < s ? p : q);
                    found = realize(i, p, earlier, j + 1);
                    for (std::size_t t = path.size(); t-- > 0;) unassign(path[t], t < s ? p : q);
                }
            } else {
                for (int w : g_.neighbors(v)) {
                    if (owner_[w] >= 0 || on_path[w] || touches(w, p)) continue;
                    if (extend(w)) {
                        found = true;
                        break;
                    }
                }
            }
            on_path[v] = 0;
            path.pop_back();
            return found;
        };
        std::vector<int> starts;
        for (int x : sets_[p])
            for (int y : g_.neighbors(x))
                if (owner_[y] < 0) starts.push_back(y);
        starts = normalized(starts);
        for (int y : starts)
            if (extend(y)) return true;
        return false;
    }
};

}  // namespace detail

/// Searches for a model of `pattern` in `host`. With `faithful`, pattern vertex v must lie in
/// its own branch set, where v names host vertex root_map[v] (identity when root_map is empty).
/// Without `faithful`, root_map may pin some roots (-1 = free). Deterministic first-found result.
inline std::optional<MinorModel> find_minor_model(const Graph& host, const Graph& pattern, bool faithful = false,
                                                  std::vector<int> root_map = {}, long long budget = kMinorSearchBudget) {
    const int k = pattern.n();
    if (root_map.empty()) {
        root_map.assign(k, -1);
        if (faithful) {
            require(k <= host.n(), "faithful search needs pattern vertices that name host vertices");
            for (int v = 0; v < k; ++v) root_map[v] = v;
        }
    }
    require(static_cast<int>(root_map.size()) == k, "root map size differs from pattern order");
    int free_roots = 0;
    for (int r : root_map) {
        require(r >= -1 && r < host.n(), "root map entry out of range");
        if (r < 0) ++free_roots;
    }
    if (faithful && free_roots > 0) fail(ErrorKind::invalid_input, "faithful search needs a root for every pattern vertex");
    if (free_roots > kMinorSearchFreeRootCap)
        fail(ErrorKind::invalid_input, "minor search size bound exceeded: more than " + std::to_string(kMinorSearchFreeRootCap) +
                                           " pattern vertices without a fixed root");
    if (k > host.n() || pattern.m() > host.m()) return std::nullopt;
    if (k == 0) return MinorModel{};
    {
        VertexSet fixed;
        for (int r : root_map)
            if (r >= 0) fixed.push_back(r);
        if (normalized(fixed).size() != fixed.size()) return std::nullopt;
    }
    if (!is_planar(pattern) && is_planar(host)) return std::nullopt;
    return detail::MinorSearch(host, pattern, std::move(root_map), budget).run();
}

}  // namespace tangleforge
