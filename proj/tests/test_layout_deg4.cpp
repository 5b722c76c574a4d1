#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "ar3d/augment.hpp"
#include "ar3d/cycle_cover.hpp"
#include "ar3d/error.hpp"
#include "ar3d/layout_deg4.hpp"
#include "ar3d/random_graph.hpp"
#include "ar3d/verifier.hpp"
#include "test_graphs.hpp"

using namespace ar3d;
using namespace ar3d::testing;

namespace {

std::pair<int, int> ordered(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

// Independent replay of the plan invariants: even exclusive coordinates,
// route shapes, odd shelves off the closing edges, even lengths with the
// midpoint clear of bends, per-color disjointness (checked through the
// verifier on a per-color sub-drawing) and the 2D grid bound.
void check_plan(const Graph& g, const Layout2D& plan) {
    int n = g.n();
    REQUIRE((int)plan.coords.size() == n);
    std::set<long long> xs, ys;
    for (const auto& c : plan.coords) {
        CHECK(c[0] % 2 == 0);
        CHECK(c[1] % 2 == 0);
        xs.insert(c[0]);
        ys.insert(c[1]);
    }
    CHECK((int)xs.size() == n);
    CHECK((int)ys.size() == n);
    REQUIRE((int)(plan.green_routes.size() + plan.red_routes.size()) == g.m());

    std::set<std::pair<int, int>> closing;
    for (const auto& c : plan.cover.green_cycles) closing.insert(ordered(c.front(), c.back()));
    for (const auto& c : plan.cover.red_cycles) closing.insert(ordered(c.front(), c.back()));

    long long min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    bool first = true;
    auto check_route = [&](int e, const Poly2& p, bool green) {
        auto [u, v] = g.edges()[e];
        REQUIRE(p.size() == 4);
        CHECK(p[0] == plan.coords[u]);
        CHECK(p[3] == plan.coords[v]);
        int along = green ? 0 : 1;  // axis of the outer segments
        CHECK(p[0][along] == p[1][along]);
        CHECK(p[1][1 - along] == p[2][1 - along]);
        CHECK(p[2][along] == p[3][along]);
        long long shelf = p[1][1 - along];
        if (!closing.count(ordered(u, v))) CHECK(std::llabs(shelf) % 2 == 1);
        long long s1 = std::llabs(p[1][1 - along] - p[0][1 - along]);
        long long s2 = s1 + std::llabs(p[2][along] - p[1][along]);
        long long L = s2 + std::llabs(p[3][1 - along] - p[2][1 - along]);
        CHECK(s1 > 0);
        CHECK(s2 > s1);
        CHECK(L > s2);
        CHECK(L % 2 == 0);
        CHECK(s1 != L / 2);
        CHECK(s2 != L / 2);
        for (const auto& q : p) {
            if (first || q[0] < min_x) min_x = q[0];
            if (first || q[0] > max_x) max_x = q[0];
            if (first || q[1] < min_y) min_y = q[1];
            if (first || q[1] > max_y) max_y = q[1];
            first = false;
        }
    };
    for (const auto& [e, p] : plan.green_routes) check_route(e, p, true);
    for (const auto& [e, p] : plan.red_routes) check_route(e, p, false);
    CHECK(max_x - min_x <= 2 * n + 2 * plan.cover.m_green);
    CHECK(max_y - min_y <= 2 * n + 2 * plan.cover.m_red);

    // Per-color disjointness: embed one color at z = 0 and let the verifier
    // hunt for conflicts and for vertices sitting on foreign routes.
    auto color_ok = [&](const std::map<int, Poly2>& routes) {
        Drawing d;
        d.graph = Graph(n);
        d.positions.resize(n);
        for (int v = 0; v < n; ++v)
            d.positions[v] = {(double)plan.coords[v][0], (double)plan.coords[v][1], 0};
        for (const auto& [e, p] : routes) {
            auto [u, v] = g.edges()[e];
            d.graph.add_edge(u, v);
            Polyline r;
            for (const auto& q : p) r.push_back({(double)q[0], (double)q[1], 0});
            d.routes.push_back(r);
        }
        Profile plain;
        plain.name = "plain";
        return verify(d, plain).pass;
    };
    CHECK(color_ok(plan.green_routes));
    CHECK(color_ok(plan.red_routes));
}

// 4-regular 8-vertex instance whose natural cover starts with a green
// closing edge of cross distance 2k-2 = 6, forcing a cyclic shift.
Graph shifted_instance() {
    Graph g(8);
    for (auto [a, b] : {std::pair<int, int>{0, 1}, {1, 2}, {2, 3}, {0, 3},  // red ring 1
                        {4, 5}, {5, 6}, {6, 7}, {4, 7},                     // red ring 2
                        {1, 4}, {1, 7}, {2, 7}, {2, 4},                     // green ring 1
                        {0, 5}, {3, 5}, {3, 6}, {0, 6}})                    // green ring 2
        g.add_edge(a, b);
    return g;
}

CycleCover shifted_cover() {
    CycleCover c;
    c.green_cycles = {{4, 1, 7, 2}, {0, 5, 3, 6}};
    c.red_cycles = {{0, 1, 2, 3}, {4, 5, 6, 7}};
    return c;
}

int bends(const Polyline& r) { return (int)r.size() - 2; }

long long path_len(const Poly2& p) {
    long long L = 0;
    for (size_t i = 0; i + 1 < p.size(); ++i)
        L += std::llabs(p[i + 1][0] - p[i][0]) + std::llabs(p[i + 1][1] - p[i][1]);
    return L;
}

}  // namespace

TEST_CASE("complete graph on five vertices plans onto consecutive even columns") {
    Graph g = complete_graph(5);
    Layout2D plan = plan_2d(g, euler_split(g));
    check_plan(g, plan);
    std::set<long long> xs, ys;
    for (const auto& c : plan.coords) {
        xs.insert(c[0]);
        ys.insert(c[1]);
    }
    CHECK(xs == std::set<long long>{0, 2, 4, 6, 8});
    CHECK(ys == std::set<long long>{0, 2, 4, 6, 8});
    for (const auto& [e, p] : plan.green_routes) CHECK(p.size() == 4);  // two bends
    for (const auto& [e, p] : plan.red_routes) CHECK(p.size() == 4);
}

TEST_CASE("closing edge with equal spans is shifted away") {
    Graph g = shifted_instance();
    Layout2D plan = plan_2d(g, shifted_cover());
    check_plan(g, plan);
    // the cycle on {1,2,4,7} started with closing pair (2,4), cross distance 6
    for (const auto& cyc : plan.cover.green_cycles) {
        std::set<int> members(cyc.begin(), cyc.end());
        if (members != std::set<int>{1, 2, 4, 7}) continue;
        long long dy = std::llabs(plan.coords[cyc.front()][1] - plan.coords[cyc.back()][1]);
        CHECK(dy != 6);
    }
}

TEST_CASE("even cycles alternate sign pairs and plus shelves sit one above the pair") {
    Graph g = shifted_instance();
    Layout2D plan = plan_2d(g, shifted_cover());
    for (size_t ci = 0; ci < plan.cover.green_cycles.size(); ++ci) {
        const auto& cyc = plan.cover.green_cycles[ci];
        const auto& sl = plan.green_signs[ci];
        REQUIRE(cyc.size() % 2 == 0);
        CHECK(sl.mixed_edge == -1);
        int k = (int)cyc.size();
        for (int j = 0; j < k; ++j) {
            CHECK(sl.end_signs[j].first == sl.end_signs[j].second);
            CHECK(sl.end_signs[j].first == -sl.end_signs[(j + 1) % k].first);
        }
        for (int j = 0; j + 1 < k; ++j) {
            if (sl.end_signs[j].first != 1) continue;
            int u = cyc[j], v = cyc[j + 1];
            int e = g.edge_index(std::min(u, v), std::max(u, v));
            const Poly2& p = plan.green_routes.at(e);
            CHECK(p[1][1] == std::max(plan.coords[u][1], plan.coords[v][1]) + 1);
        }
    }
}

TEST_CASE("lift turns two plan bends into three lattice bends with the apex at half length") {
    Graph g = complete_graph(5);
    Layout2D plan = plan_2d(g, euler_split(g));
    Drawing d = lift_3d(g, plan);
    auto rep = verify(d, Profile::diamond());
    CHECK(rep.pass);
    for (int e = 0; e < g.m(); ++e) CHECK(bends(d.routes[e]) == 3);

    for (const auto& [e, p] : plan.green_routes) {
        long long L = path_len(p);
        double apex = 0;
        for (const Vec3& q : d.routes[e]) {
            apex = std::max(apex, q.z);
            CHECK(q.z >= 0);
        }
        CHECK(apex == (double)(L / 2));
        for (size_t i = 1; i + 1 < d.routes[e].size(); ++i) CHECK(d.routes[e][i].z >= 1);
    }
    for (const auto& [e, p] : plan.red_routes) {
        long long L = path_len(p);
        double dip = 0;
        for (const Vec3& q : d.routes[e]) dip = std::min(dip, q.z);
        CHECK(dip == -(double)(L / 2));
        for (size_t i = 1; i + 1 < d.routes[e].size(); ++i) CHECK(d.routes[e][i].z <= -1);
    }
    long long zspan = 2 * (2 * g.n() + 2);  // loose sanity ceiling for n=5
    CHECK((long long)(12 * g.n() + 6 * plan.cover.m_green + 6 * plan.cover.m_red) >= 0);
    (void)zspan;
}

TEST_CASE("every vertex fan is the tetrahedral direction set") {
    Graph g = complete_graph(5);
    Drawing d = lift_3d(g, plan_2d(g, euler_split(g)));
    std::set<std::array<long long, 3>> want = {
        {1, 1, 1}, {-1, -1, 1}, {1, -1, -1}, {-1, 1, -1}};
    for (int v = 0; v < g.n(); ++v) {
        std::set<std::array<long long, 3>> fan;
        for (int e = 0; e < g.m(); ++e) {
            auto [a, b] = g.edges()[e];
            const Polyline& r = d.routes[e];
            Vec3 dir{0, 0, 0};
            if (a == v)
                dir = r[1] - r[0];
            else if (b == v)
                dir = r[r.size() - 2] - r[r.size() - 1];
            else
                continue;
            IVec3 p = primitive(to_ivec(dir));
            fan.insert({p.x, p.y, p.z});
        }
        CHECK(fan == want);
    }
}

TEST_CASE("z extent respects the cover bound") {
    for (std::uint64_t seed : {1ull, 2ull}) {
        Graph g = gen_random_regular(14, 4, seed);
        Layout2D plan = plan_2d(g, euler_split_seeded(g, seed));
        Drawing d = lift_3d(g, plan);
        double zmin = 0, zmax = 0;
        for (const auto& r : d.routes)
            for (const Vec3& q : r) {
                zmin = std::min(zmin, q.z);
                zmax = std::max(zmax, q.z);
            }
        CHECK(zmax - zmin <=
              12.0 * g.n() + 6.0 * plan.cover.m_green + 6.0 * plan.cover.m_red);
    }
}

TEST_CASE("pipeline: complete graph and octahedron pass the diamond profile") {
    for (Graph g : {complete_graph(5), octahedron()}) {
        Drawing d = layout_deg4(g);
        auto rep = verify(d, Profile::diamond());
        CHECK(rep.pass);
        CHECK(d.n_augmented == -1);  // already 4-regular
        for (const auto& r : d.routes) CHECK((int)r.size() - 2 <= 3);
    }
}

TEST_CASE("pipeline strips regularization down to the original edges") {
    Graph g = path_graph(3);
    Drawing d = layout_deg4(g);
    REQUIRE(d.graph.n() == 3);
    REQUIRE(d.graph.m() == 2);
    CHECK(d.graph.edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
    CHECK(d.routes.size() == 2);
    CHECK(d.n_augmented == 5);  // one pairing edge plus two helpers
    CHECK(verify(d, Profile::diamond()).pass);
}

TEST_CASE("pipeline handles low-degree irregular graphs") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        Graph g4 = gen_random_regular(12, 4, seed);
        Graph g(12);
        int drop = (int)(seed % 5);
        for (int e = 0; e < g4.m(); ++e) {
            if (e % 7 == drop) continue;  // puncture a few edges
            auto [u, v] = g4.edges()[e];
            g.add_edge(u, v);
        }
        Drawing d = layout_deg4(g, seed);
        CHECK(verify(d, Profile::diamond()).pass);
        CHECK(d.graph.edges() == g.edges());
    }
}

TEST_CASE("random regular graphs across sizes stay clean") {
    for (int n : {8, 16, 25, 33, 44, 60}) {
        Graph g = gen_random_regular(n, 4, (std::uint64_t)n);
        Drawing d = layout_deg4(g, (std::uint64_t)n);
        auto rep = verify(d, Profile::diamond());
        CHECK(rep.pass);
        if (!rep.pass) {
            MESSAGE("n=", n, " report:\n", rep.text());
        }
    }
}

TEST_CASE("same seed reproduces the drawing bit for bit") {
    Graph g = gen_random_regular(18, 4, 9);
    Drawing a = layout_deg4(g, 7), b = layout_deg4(g, 7);
    REQUIRE(a.positions.size() == b.positions.size());
    for (size_t i = 0; i < a.positions.size(); ++i) CHECK(a.positions[i] == b.positions[i]);
    REQUIRE(a.routes.size() == b.routes.size());
    for (size_t i = 0; i < a.routes.size(); ++i) {
        REQUIRE(a.routes[i].size() == b.routes[i].size());
        for (size_t j = 0; j < a.routes[i].size(); ++j) CHECK(a.routes[i][j] == b.routes[i][j]);
    }
}

TEST_CASE("plan rejects covers that disagree with the graph") {
    Graph g = complete_graph(5);
    CycleCover both;
    both.green_cycles = {{0, 1, 2, 3, 4}};
    both.red_cycles = {{0, 1, 2, 3, 4}};
    CHECK_THROWS_AS((void)plan_2d(g, both), error);

    CycleCover partial;
    partial.green_cycles = {{0, 1, 2}};
    partial.red_cycles = {{0, 1, 2, 3, 4}};
    CHECK_THROWS_AS((void)plan_2d(g, partial), error);

    // a legitimate alternative cover works: ring plus pentagram
    CycleCover alt;
    alt.green_cycles = {{0, 1, 2, 3, 4}};
    alt.red_cycles = {{0, 2, 4, 1, 3}};
    Layout2D plan = plan_2d(g, alt);
    check_plan(g, plan);
}

TEST_CASE("degree five input is refused") {
    CHECK_THROWS_AS((void)layout_deg4(complete_graph(6)), error);
    try {
        (void)layout_deg4(complete_graph(6));
    } catch (const error& e) {
        CHECK(e.code() == errc::degree_exceeded);
    }
}
