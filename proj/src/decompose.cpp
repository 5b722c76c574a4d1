#include "ar3d/decompose.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "ar3d/error.hpp"

namespace ar3d {

std::vector<int> shortest_chordless_cycle(const Graph& g) {
    // girth = min over edges (u,v) of dist(u,v) in G minus that edge, + 1.
    auto adj = g.adjacency();
    int best = -1;
    std::vector<int> best_cycle;
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges()[e];
        std::vector<int> parent(g.n(), -2);
        parent[u] = -1;
        std::deque<int> q{u};
        while (!q.empty()) {
            int a = q.front();
            q.pop_front();
            if (a == v) break;
            for (int b : adj[a]) {
                if (parent[b] != -2) continue;
                if ((a == u && b == v) || (a == v && b == u)) continue;
                parent[b] = a;
                q.push_back(b);
            }
        }
        if (parent[v] == -2) continue;
        std::vector<int> path;
        for (int a = v; a != -1; a = parent[a]) path.push_back(a);
        std::reverse(path.begin(), path.end());  // u ... v
        int len = (int)path.size();
        if (best < 0 || len < best) {
            best = len;
            best_cycle = path;
            if (best == 3) break;
        }
    }
    if (best < 0) fail(errc::acyclic, "graph has no cycle");
    return best_cycle;
}

std::vector<int> double_adjacency_closure_order(const Graph& g, const std::vector<int>& seed) {
    std::vector<char> in(g.n(), 0);
    for (int v : seed) {
        if (v < 0 || v >= g.n()) fail(errc::bad_input, "seed vertex out of range");
        in[v] = 1;
    }
    auto adj = g.adjacency();
    std::vector<int> outside(g.n(), 0);
    for (int v = 0; v < g.n(); ++v)
        for (int w : adj[v])
            if (!in[w]) ++outside[v];

    std::vector<int> order;
    for (;;) {
        int pick = -1;
        for (int v = 0; v < g.n(); ++v)
            if (!in[v] && outside[v] <= 1) {
                pick = v;
                break;
            }
        if (pick < 0) break;
        in[pick] = 1;
        order.push_back(pick);
        for (int w : adj[pick]) --outside[w];
    }
    return order;
}

std::vector<int> double_adjacency_closure(const Graph& g, const std::vector<int>& seed) {
    std::vector<int> out = seed;
    std::vector<int> added = double_adjacency_closure_order(g, seed);
    out.insert(out.end(), added.begin(), added.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<PeelStep> peel_order(const Graph& g) {
    validate(g, 3);
    for (auto [u, v] : g.edges())
        for (int w : g.neighbors(u))
            if (w != v && g.has_edge(w, v))
                fail(errc::triangle_found, "triangle " + std::to_string(u) + "," +
                                               std::to_string(v) + "," + std::to_string(w));

    auto adj = g.adjacency();
    std::vector<char> placed(g.n(), 0);
    int remaining = g.n();
    std::vector<PeelStep> steps;

    auto counts = [&](int v) {
        int p = 0, u = 0;
        for (int w : adj[v]) (placed[w] ? p : u)++;
        return std::pair{p, u};
    };

    while (remaining > 0) {
        int attach = -1, leaf = -1;
        for (int v = 0; v < g.n() && attach < 0; ++v) {
            if (placed[v]) continue;
            auto [p, u] = counts(v);
            if (u <= 1) {
                if (p >= 1) attach = v;
                else if (leaf < 0) leaf = v;
            }
        }
        if (attach >= 0) {
            placed[attach] = 1;
            --remaining;
            steps.push_back({PeelStep::Kind::add_vertex, {}, attach});
            continue;
        }
        std::vector<int> keep;
        for (int v = 0; v < g.n(); ++v)
            if (!placed[v]) keep.push_back(v);
        Graph sub = induced_subgraph(g, keep);
        std::vector<int> cyc;
        bool has_cycle = true;
        try {
            cyc = shortest_chordless_cycle(sub);
        } catch (const error& e) {
            if (e.code() != errc::acyclic) throw;
            has_cycle = false;
        }
        if (!has_cycle) {
            if (leaf < 0) fail(errc::internal, "forest without a leaf");
            placed[leaf] = 1;
            --remaining;
            steps.push_back({PeelStep::Kind::add_vertex, {}, leaf});
            continue;
        }
        if (cyc.size() < 4) fail(errc::invariant_broken, "short cycle in triangle-free graph");
        for (int& v : cyc) v = keep[v];
        for (int v : cyc) {
            placed[v] = 1;
            --remaining;
        }
        steps.push_back({PeelStep::Kind::add_cycle, std::move(cyc), -1});
    }
    return steps;
}

}  // namespace ar3d
