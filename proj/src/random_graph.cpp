#include "ar3d/random_graph.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "ar3d/error.hpp"

namespace ar3d {

Graph gen_random_regular(int n, int d, std::uint64_t seed) {
    if (n <= 0 || d < 0 || d >= n || (1LL * n * d) % 2 != 0)
        fail(errc::infeasible_parameters,
             "no simple " + std::to_string(d) + "-regular graph on " + std::to_string(n) + " vertices");
    std::mt19937_64 rng(seed);
    std::vector<int> stubs(n * d);
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < d; ++i) stubs[v * d + i] = v;

    for (int attempt = 0; attempt < 20000; ++attempt) {
        std::shuffle(stubs.begin(), stubs.end(), rng);
        Graph g(n);
        bool ok = true;
        for (size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
            int a = stubs[i], b = stubs[i + 1];
            if (a == b || g.has_edge(a, b)) ok = false;
            else g.add_edge(a, b);
        }
        if (ok) return g;
    }
    fail(errc::internal, "pairing model failed to produce a simple graph");
}

}  // namespace ar3d
