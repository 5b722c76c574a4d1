#include "ar3d/cycle_cover.hpp"

#include <algorithm>
#include <string>

#include "ar3d/error.hpp"

namespace ar3d {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Walks a 2-regular edge set into its cycles: each cycle starts at its
// smallest vertex and proceeds toward the smaller neighbor.
std::vector<std::vector<int>> cycles_of(const std::vector<std::vector<int>>& nbr, int n) {
    std::vector<char> seen(n, 0);
    std::vector<std::vector<int>> cycles;
    for (int v0 = 0; v0 < n; ++v0) {
        if (seen[v0]) continue;
        if (nbr[v0].size() != 2) fail(errc::invariant_broken, "color class is not 2-regular");
        std::vector<int> cyc{v0};
        seen[v0] = 1;
        int prev = v0, cur = std::min(nbr[v0][0], nbr[v0][1]);
        while (cur != v0) {
            cyc.push_back(cur);
            seen[cur] = 1;
            int a = nbr[cur][0], b = nbr[cur][1];
            int nxt = a == prev ? b : a;
            prev = cur;
            cur = nxt;
        }
        if (cyc.size() < 3) fail(errc::invariant_broken, "cycle shorter than 3");
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

}  // namespace

CycleCover euler_split_seeded(const Graph& g, std::uint64_t seed) {
    if (!g.is_regular(4)) fail(errc::not_four_regular, "euler_split needs a 4-regular graph");
    int n = g.n();

    // Incidence lists with edge ids, in the preference order the tour uses.
    std::vector<std::vector<std::pair<int, int>>> inc(n);
    for (int e = 0; e < g.m(); ++e) {
        auto [a, b] = g.edges()[e];
        inc[a].push_back({b, e});
        inc[b].push_back({a, e});
    }
    for (int v = 0; v < n; ++v) {
        if (seed == 0) {
            std::sort(inc[v].begin(), inc[v].end());
        } else {
            std::sort(inc[v].begin(), inc[v].end(),
                      [&](const std::pair<int, int>& p, const std::pair<int, int>& q) {
                          return mix64(seed ^ mix64((std::uint64_t)v << 32 ^ (unsigned)p.first)) <
                                 mix64(seed ^ mix64((std::uint64_t)v << 32 ^ (unsigned)q.first));
                      });
        }
    }

    std::vector<char> used(g.m(), 0);
    std::vector<size_t> ptr(n, 0);
    std::vector<std::vector<int>> green_nbr(n), red_nbr(n);
    std::vector<int> comp = connected_components(g);
    std::vector<char> started(n, 0);

    for (int s = 0; s < n; ++s) {
        if (started[s]) continue;
        for (int v = 0; v < n; ++v)
            if (comp[v] == comp[s]) started[v] = 1;

        std::vector<int> stack{s}, circuit;
        while (!stack.empty()) {
            int v = stack.back();
            while (ptr[v] < inc[v].size() && used[inc[v][ptr[v]].second]) ++ptr[v];
            if (ptr[v] == inc[v].size()) {
                circuit.push_back(v);
                stack.pop_back();
            } else {
                auto [w, e] = inc[v][ptr[v]];
                used[e] = 1;
                stack.push_back(w);
            }
        }
        std::reverse(circuit.begin(), circuit.end());
        // Closed walk: circuit.front() == circuit.back() == s; edge count is
        // twice the component's vertex count, hence even, so the alternating
        // coloring closes up.
        for (size_t i = 0; i + 1 < circuit.size(); ++i) {
            int a = circuit[i], b = circuit[i + 1];
            auto& nbr = (i % 2 == 0) ? green_nbr : red_nbr;
            nbr[a].push_back(b);
            nbr[b].push_back(a);
        }
    }

    CycleCover cov;
    cov.green_cycles = cycles_of(green_nbr, n);
    cov.red_cycles = cycles_of(red_nbr, n);
    cov.m_green = (int)cov.green_cycles.size();
    cov.m_red = (int)cov.red_cycles.size();
    cov.r_green.assign(n, -1);
    cov.r_red.assign(n, -1);
    cov.c_green.assign(n, -1);
    cov.c_red.assign(n, -1);
    int r = 0;
    for (int c = 0; c < cov.m_green; ++c)
        for (int v : cov.green_cycles[c]) {
            cov.r_green[v] = r++;
            cov.c_green[v] = c;
        }
    r = 0;
    for (int c = 0; c < cov.m_red; ++c)
        for (int v : cov.red_cycles[c]) {
            cov.r_red[v] = r++;
            cov.c_red[v] = c;
        }
    return cov;
}

CycleCover euler_split(const Graph& g) { return euler_split_seeded(g, 0); }

SignLabeling sign_labeling_ex(const std::vector<int>& cycle, const std::vector<long long>& height,
                              int mixed_pos, bool flip) {
    int k = (int)cycle.size();
    if (k < 3) fail(errc::bad_input, "cycle length below 3");
    for (int v : cycle)
        if (v < 0 || v >= (int)height.size())
            fail(errc::bad_input, "missing height for vertex " + std::to_string(v));
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (height[cycle[i]] == height[cycle[j]])
                fail(errc::duplicate_height, "cycle vertices " + std::to_string(cycle[i]) + " and " +
                                                 std::to_string(cycle[j]) + " share height " +
                                                 std::to_string(height[cycle[i]]));

    SignLabeling lab;
    lab.end_signs.assign(k, {0, 0});
    if (k % 2 == 0) {
        for (int i = 0; i < k; ++i) {
            int u = (i % 2 == 0) == !flip ? 1 : -1;
            lab.end_signs[i] = {u, u};
        }
        return lab;
    }

    int p = mixed_pos % k;
    if (p < 0) p += k;
    lab.mixed_edge = p;
    // The alternation around the k-1 uniform edges leaves one free bit; pick
    // it so the mixed edge's lower end gets the plus.
    long long h_tail = height[cycle[p]], h_head = height[cycle[(p + 1) % k]];
    int b = h_tail < h_head ? 1 : -1;
    lab.end_signs[p] = {b, -b};
    for (int j = 1; j < k; ++j) {
        int i = (p + j) % k;
        int u = (j % 2 == 1) ? b : -b;
        lab.end_signs[i] = {u, u};
    }
    for (int t = 0; t < k; ++t) {
        int in = lab.end_signs[(t + k - 1) % k].second, out = lab.end_signs[t].first;
        if (in + out != 0) fail(errc::invariant_broken, "sign alternation failed");
    }
    return lab;
}

SignLabeling sign_labeling(const std::vector<int>& cycle, const std::vector<long long>& height) {
    return sign_labeling_ex(cycle, height, 0, false);
}

}  // namespace ar3d
