#include "ar3d/augment.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "ar3d/error.hpp"

namespace ar3d {

namespace {

// Simple graph on k vertices realizing the degree sequence, as an edge list,
// or empty-with-fail flag when none exists (Havel-Hakimi).
bool realize_degrees(std::vector<int> deg, std::vector<std::pair<int, int>>& out) {
    int k = (int)deg.size();
    std::vector<int> id(k);
    std::iota(id.begin(), id.end(), 0);
    for (;;) {
        std::stable_sort(id.begin(), id.end(), [&](int a, int b) { return deg[a] > deg[b]; });
        int a = id[0];
        if (deg[a] == 0) return true;
        if (deg[a] > k - 1 || deg[a] >= (int)id.size()) return false;
        for (int i = 1; i <= deg[a]; ++i) {
            int b = id[i];
            if (deg[b] == 0) return false;
            --deg[b];
            out.push_back({std::min(a, b), std::max(a, b)});
        }
        deg[a] = 0;
    }
}

}  // namespace

Graph augment_to_4_regular(const Graph& g0) {
    validate(g0, 4);
    Graph g = g0;

    // Pair up deficient vertices greedily, worst deficiency first. When this
    // gets stuck the deficient vertices are pairwise adjacent, so at most 4
    // of them remain and the total deficiency R is at most 6 (and even).
    for (;;) {
        std::vector<int> def;
        for (int v = 0; v < g.n(); ++v)
            if (g.degree(v) < 4) def.push_back(v);
        std::stable_sort(def.begin(), def.end(),
                         [&](int a, int b) { return g.degree(a) < g.degree(b); });
        bool added = false;
        for (size_t i = 0; i < def.size() && !added; ++i)
            for (size_t j = i + 1; j < def.size() && !added; ++j)
                if (!g.has_edge(def[i], def[j])) {
                    g.add_edge(def[i], def[j]);
                    added = true;
                }
        if (!added) break;
    }

    long long R = 0;
    int max_def = 0;
    std::vector<int> slots;  // deficient vertex repeated by its deficiency
    for (int v = 0; v < g.n(); ++v) {
        int d = 4 - g.degree(v);
        R += d;
        max_def = std::max(max_def, d);
        for (int i = 0; i < d; ++i) slots.push_back(v);
    }
    if (R == 0) return g;
    if (R % 2 != 0 || R > 6) fail(errc::internal, "stuck state out of range");

    // One batch of k dummies: external slots round-robin (a vertex's slots
    // land on distinct dummies since its deficiency is at most k), internal
    // dummy degrees 4 - e_i realized as a simple graph.
    for (int k = std::max(1, max_def); k <= 6; ++k) {
        std::vector<int> ext(k, 0);
        for (size_t j = 0; j < slots.size(); ++j) ++ext[j % k];
        if (*std::max_element(ext.begin(), ext.end()) > 4) continue;
        std::vector<int> internal(k);
        for (int i = 0; i < k; ++i) internal[i] = 4 - ext[i];
        std::vector<std::pair<int, int>> dummy_edges;
        if (!realize_degrees(internal, dummy_edges)) continue;

        Graph a = g;
        std::vector<int> dummy_ids(k);
        for (int i = 0; i < k; ++i) dummy_ids[i] = a.add_vertex(true);
        for (size_t j = 0; j < slots.size(); ++j) a.add_edge(slots[j], dummy_ids[j % k]);
        for (auto [p, q] : dummy_edges) a.add_edge(dummy_ids[p], dummy_ids[q]);
        if (!a.is_regular(4)) fail(errc::internal, "augmentation batch not 4-regular");
        return a;
    }
    fail(errc::internal, "no dummy batch of size <= 6 found");
}

}  // namespace ar3d
