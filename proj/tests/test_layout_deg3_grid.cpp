#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "ar3d/error.hpp"
#include "ar3d/layout_deg3_grid.hpp"
#include "ar3d/random_graph.hpp"
#include "ar3d/verifier.hpp"
#include "test_graphs.hpp"

using namespace ar3d;
using namespace ar3d::testing;

namespace {

template <typename F>
errc thrown_code(F&& f) {
    try {
        f();
    } catch (const error& e) {
        return e.code();
    }
    FAIL("expected an error with a code");
    return errc::internal;
}

SkewPoint sp(long long a, long long b, long long c = 0) { return {a, b, c}; }

bool same_path(const SkewPath& got, const SkewPath& want) {
    if (got.size() != want.size()) return false;
    for (size_t i = 0; i < got.size(); ++i)
        if (got[i] != want[i]) return false;
    return true;
}

doctest::String path_str(const SkewPath& p) {
    std::string s;
    for (const auto& q : p)
        s += "(" + std::to_string(q.a) + "," + std::to_string(q.b) + "," + std::to_string(q.c) +
             ")";
    return s.c_str();
}

// Inverts the skew basis on a Cartesian integer point.
SkewPoint skew_of(const Vec3& p) {
    long long x = (long long)p.x, y = (long long)p.y, z = (long long)p.z;
    REQUIRE((y + z - x) % 2 == 0);
    return {(y + z - x) / 2, (x + y - z) / 2, (x + z - y) / 2};
}

// Assembles a Drawing from a fragment; ids used by the fragment must be
// exactly 0..n-1.
Drawing fragment_drawing(const Graph& g, const FlatCycleFragment& f) {
    Drawing d;
    d.graph = g;
    d.frame = FrameTag::skew;
    d.positions.assign(g.n(), {0, 0, 0});
    std::map<std::pair<int, int>, SkewPath> paths;
    int k = (int)f.cycle.size();
    for (int i = 0; i < k; ++i) {
        int u = f.cycle[i], v = f.cycle[(i + 1) % k];
        d.positions[u] = to_vec(skew_coeffs(f.vertex_pos[i]));
        SkewPath p = f.edge_paths[i];
        if (u > v) std::reverse(p.begin(), p.end());
        paths[{std::min(u, v), std::max(u, v)}] = p;
    }
    for (const auto& [id, pos] : f.pendant_pos) {
        d.positions[id] = to_vec(skew_coeffs(pos));
        int owner = -1;
        for (int i = 0; i < k; ++i)
            if (g.has_edge(f.cycle[i], id)) owner = f.cycle[i];
        REQUIRE(owner >= 0);
        SkewPath p{f.vertex_pos[std::find(f.cycle.begin(), f.cycle.end(), owner) -
                                f.cycle.begin()],
                   pos};
        if (owner > id) std::reverse(p.begin(), p.end());
        paths[{std::min(owner, id), std::max(owner, id)}] = p;
    }
    for (auto [u, v] : g.edges()) {
        auto it = paths.find({u, v});
        REQUIRE(it != paths.end());
        Polyline pl;
        for (const auto& q : it->second) pl.push_back(to_vec(skew_coeffs(q)));
        d.routes.push_back(pl);
    }
    return d;
}

void check_grid(const Drawing& d) {
    auto rep = verify(d, Profile::grid120());
    INFO(rep.text());
    CHECK(rep.pass);
}

// Every vertex must sit on an even horizontal plane of the skew frame.
void check_even_levels(const Drawing& d) {
    for (const Vec3& p : d.positions) CHECK(skew_of(p).c % 2 == 0);
}

Graph spider() {
    Graph g(10);  // hub 0, three legs of length 3
    for (int l = 0; l < 3; ++l) {
        g.add_edge(0, 1 + 3 * l);
        g.add_edge(1 + 3 * l, 2 + 3 * l);
        g.add_edge(2 + 3 * l, 3 + 3 * l);
    }
    return g;
}

Graph binary_tree(int n) {
    Graph g(n);
    for (int i = 1; i < n; ++i) g.add_edge(i, (i - 1) / 2);
    return g;
}

Graph cube_graph() {
    Graph g(8);
    for (int i = 0; i < 4; ++i) {
        g.add_edge(i, (i + 1) % 4);
        g.add_edge(4 + i, 4 + (i + 1) % 4);
        g.add_edge(i, 4 + i);
    }
    return g;
}

// Random graph with maximum degree 3: n vertices, repeated random edge
// insertions that respect the degree cap.
Graph random_subcubic(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Graph g(n);
    int attempts = 4 * n;
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int t = 0; t < attempts; ++t) {
        int u = pick(rng), v = pick(rng);
        if (u == v || g.has_edge(u, v)) continue;
        if (g.degree(u) >= 3 || g.degree(v) >= 3) continue;
        g.add_edge(u, v);
    }
    return g;
}

void roundtrip(const Graph& g) {
    Drawing d = layout_deg3_grid(g);
    CHECK(d.repr == Repr::integer);
    CHECK(d.frame == FrameTag::cartesian);
    CHECK(d.algorithm == "deg3-grid");
    check_grid(d);
    check_even_levels(d);
    Drawing d2 = layout_deg3_grid(g);
    CHECK(d.positions == d2.positions);
    CHECK(d.routes == d2.routes);
}

}  // namespace

TEST_CASE("flat cycle replays the fixed three-cycle coordinates") {
    auto f = flat_single_cycle({0, 1, 2}, {0, 2, 4});
    REQUIRE(f.vertex_pos.size() == 3);
    CHECK(f.vertex_pos[0] == sp(0, 0));
    CHECK(f.vertex_pos[1] == sp(2, -1));
    CHECK(f.vertex_pos[2] == sp(4, 2));
    INFO("e0 ", path_str(f.edge_paths[0]));
    CHECK(same_path(f.edge_paths[0], {sp(0, 0), sp(1, -1), sp(2, -1)}));
    INFO("e1 ", path_str(f.edge_paths[1]));
    CHECK(same_path(f.edge_paths[1],
                    {sp(2, -1), sp(4, -3), sp(6, -3), sp(6, 0), sp(4, 2)}));
    INFO("e2 ", path_str(f.edge_paths[2]));
    CHECK(same_path(f.edge_paths[2],
                    {sp(4, 2), sp(-2, 2), sp(-2, 1), sp(-1, 0), sp(0, 0)}));
    CHECK(f.min_a == -2);
    CHECK(f.max_a == 6);
}

TEST_CASE("flat cycle replays the fixed four-cycle coordinates") {
    auto f = flat_single_cycle({0, 1, 2, 3}, {0, 2, 4, 6});
    CHECK(f.vertex_pos[0] == sp(0, 0));
    CHECK(f.vertex_pos[1] == sp(2, 1));
    CHECK(f.vertex_pos[2] == sp(4, 3));
    CHECK(f.vertex_pos[3] == sp(6, 4));
    CHECK(same_path(f.edge_paths[0],
                    {sp(0, 0), sp(2, -2), sp(4, -2), sp(4, -1), sp(2, 1)}));
    CHECK(same_path(f.edge_paths[1], {sp(2, 1), sp(1, 1), sp(0, 2), sp(0, 3), sp(4, 3)}));
    CHECK(same_path(f.edge_paths[2],
                    {sp(4, 3), sp(6, 1), sp(8, 1), sp(8, 2), sp(6, 4)}));
    CHECK(same_path(f.edge_paths[3],
                    {sp(6, 4), sp(-2, 4), sp(-2, 1), sp(-1, 0), sp(0, 0)}));
}

TEST_CASE("flat cycle closes on the east side when the first plane is the largest") {
    auto f = flat_single_cycle({0, 1, 2}, {4, 0, 2});
    CHECK(f.vertex_pos[0] == sp(4, 0));
    CHECK(f.vertex_pos[1] == sp(0, 2));
    CHECK(f.vertex_pos[2] == sp(2, 7));
    CHECK(same_path(f.edge_paths[0], {sp(4, 0), sp(2, 0), sp(0, 2)}));
    INFO("e1 ", path_str(f.edge_paths[1]));
    CHECK(same_path(f.edge_paths[1],
                    {sp(0, 2), sp(-1, 2), sp(-2, 3), sp(-2, 7), sp(2, 7)}));
    INFO("e2 ", path_str(f.edge_paths[2]));
    CHECK(same_path(f.edge_paths[2],
                    {sp(2, 7), sp(6, 3), sp(6, -1), sp(5, -1), sp(4, 0)}));
}

TEST_CASE("flat cycle input validation") {
    CHECK(thrown_code([] { flat_single_cycle({0, 1}, {0, 2}); }) == errc::bad_input);
    CHECK(thrown_code([] { flat_single_cycle({0, 1, 2}, {0, 2}); }) == errc::bad_input);
    CHECK(thrown_code([] { flat_single_cycle({0, 1, 2}, {0, 2, 2}); }) == errc::duplicate_x);
    CHECK(thrown_code([] { flat_single_cycle({0, 1, 2}, {0, 2, 3}); }) == errc::odd_x);
}

TEST_CASE("flat cycles with distinct planes satisfy the exact profile") {
    std::mt19937_64 rng(2026);
    for (int k = 3; k <= 12; ++k) {
        for (int rep = 0; rep < 6; ++rep) {
            std::vector<long long> xs(k);
            for (int i = 0; i < k; ++i) xs[i] = 2 * i;
            std::shuffle(xs.begin(), xs.end(), rng);
            std::vector<int> cyc(k);
            for (int i = 0; i < k; ++i) cyc[i] = i;
            auto f = flat_single_cycle(cyc, xs);
            for (int i = 0; i < k; ++i) {
                CHECK(f.edge_paths[i].front() == f.vertex_pos[i]);
                CHECK(f.edge_paths[i].back() == f.vertex_pos[(i + 1) % k]);
                CHECK(f.edge_paths[i].size() <= 5);  // at most 3 bends
                CHECK(f.vertex_pos[i].a == xs[i]);
                CHECK(f.vertex_pos[i].c == 0);
            }
            check_grid(to_cartesian(fragment_drawing(cycle_graph(k), f)));
        }
    }
}

TEST_CASE("flat cycle width stays linear and height quadratic in the length") {
    for (int k = 3; k <= 24; ++k) {
        std::vector<long long> xs(k);
        std::vector<int> cyc(k);
        for (int i = 0; i < k; ++i) {
            xs[i] = 2 * i;
            cyc[i] = i;
        }
        auto f = flat_single_cycle(cyc, xs);
        CHECK(f.max_a - f.min_a <= 4 * k + 8);
        CHECK(f.max_b - f.min_b <= 4 * k * k + 8 * k + 16);
    }
}

TEST_CASE("pendant neighbors ride one unit above their cycle vertex") {
    auto f = flat_single_cycle({0, 1, 2}, {0, 2, 4}, {{1, 3}});
    REQUIRE(f.pendant_pos.count(3));
    CHECK(f.pendant_pos.at(3) == f.vertex_pos[1] + sp(0, 1));
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    g.add_edge(1, 3);
    check_grid(to_cartesian(fragment_drawing(g, f)));
}

TEST_CASE("reserved extension windows widen the runs") {
    auto plain = flat_single_cycle({0, 1, 2}, {0, 2, 4});
    auto flagged = flat_single_cycle({0, 1, 2}, {0, 2, 4}, {{0, -1}, {1, -1}});
    // Two reservations inflate every run by four units.
    CHECK(flagged.max_b - flagged.min_b > plain.max_b - plain.min_b);
    check_grid(to_cartesian(fragment_drawing(cycle_graph(3), flagged)));
}

TEST_CASE("plane inheritance: fresh planes for an isolated cycle") {
    Graph g = cycle_graph(5);
    auto st = make_grid_state(g);
    auto xs = assign_x_coordinates(st, {0, 1, 2, 3, 4});
    for (int i = 0; i < 5; ++i) CHECK(xs.at(i) == 2 * i);
}

TEST_CASE("plane inheritance: direct, chain, and intra-cycle forcing") {
    // 0-1-2 triangle placed first; 3 attaches to 0, 5 reaches 1 through the
    // degree-two link 4, and 7 rides its cycle-mate 6 through the outside
    // vertex 8 which touches both.
    Graph g(9);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    g.add_edge(0, 3);
    g.add_edge(1, 4);
    g.add_edge(4, 5);
    g.add_edge(3, 6);
    g.add_edge(5, 7);
    g.add_edge(6, 8);
    g.add_edge(7, 8);
    g.add_edge(3, 5);  // cycle 3-6-8-7-5
    auto st = make_grid_state(g);
    add_flat_cycle(st, {0, 1, 2});
    CHECK(st.position[0].a == 0);
    CHECK(st.position[1].a == 2);
    CHECK(st.position[2].a == 4);
    auto xs = assign_x_coordinates(st, {3, 6, 8, 7, 5});
    CHECK(xs.at(3) == 0);  // direct neighbor of placed 0
    CHECK(xs.at(5) == 2);  // placed 1 through the degree-two vertex 4
    // The rest are fresh planes: 0..4 belong to the placed triangle, so the
    // allocator hands out 6, 8, 10 in cycle order.
    CHECK(xs.at(6) == 6);
    CHECK(xs.at(8) == 8);
    CHECK(xs.at(7) == 10);
}

TEST_CASE("plane inheritance: conflicting anchors are rejected") {
    Graph g(4);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 0);  // irrelevant ring closure
    auto st = make_grid_state(g);
    st.placed[0] = 1;
    st.position[0] = sp(0, 0, 0);
    st.placed[1] = 1;
    st.position[1] = sp(4, 0, 0);
    CHECK(thrown_code([&] { assign_x_coordinates(st, {2, 3}); }) ==
          errc::conflicting_inheritance);
}

TEST_CASE("state invariants reject broken configurations") {
    Graph g(2);
    g.add_edge(0, 1);

    auto st = make_grid_state(g);
    st.placed[0] = 1;
    st.position[0] = sp(0, 0, 0);
    st.stubs[0] = {sp(0, 0, 0), sp(0, 2, 0)};
    st.ray_owner[0] = 0;
    check_grid_state(st);  // consistent: one ray, matching registry

    SUBCASE("odd level") {
        st.position[0].c = 1;
        CHECK(thrown_code([&] { check_grid_state(st); }) == errc::invariant_broken);
    }
    SUBCASE("stale registry") {
        st.ray_owner.clear();
        CHECK(thrown_code([&] { check_grid_state(st); }) == errc::invariant_broken);
    }
    SUBCASE("missing window") {
        st.stubs.clear();
        CHECK(thrown_code([&] { check_grid_state(st); }) == errc::invariant_broken);
    }
    SUBCASE("two rays in one plane") {
        Graph h(4);
        h.add_edge(0, 1);
        h.add_edge(2, 3);
        auto s2 = make_grid_state(h);
        for (int v : {0, 2}) {
            s2.placed[v] = 1;
            s2.position[v] = sp(0, 5 * v, 0);
            s2.stubs[v] = {s2.position[v], s2.position[v] + sp(0, 2)};
        }
        s2.ray_owner[0] = 0;
        CHECK(thrown_code([&] { check_grid_state(s2); }) == errc::invariant_broken);
    }
    SUBCASE("ray not rightmost") {
        Graph h(3);
        h.add_edge(0, 1);
        auto s2 = make_grid_state(h);
        s2.placed[0] = 1;
        s2.position[0] = sp(0, 0, 0);
        s2.stubs[0] = {sp(0, 0, 0), sp(0, 2, 0)};
        s2.ray_owner[0] = 0;
        s2.placed[2] = 1;
        s2.position[2] = sp(0, 5, 2);  // above and to the right of the ray holder
        CHECK(thrown_code([&] { check_grid_state(s2); }) == errc::invariant_broken);
    }
}

TEST_CASE("single cycle components lie flat on the base level") {
    for (int k : {3, 4, 5, 6, 8, 11}) {
        Graph g = cycle_graph(k);
        auto st = make_grid_state(g);
        add_flat_cycle(st, [&] {
            std::vector<int> c(k);
            for (int i = 0; i < k; ++i) c[i] = i;
            return c;
        }());
        for (int v = 0; v < k; ++v) {
            CHECK(st.placed[v]);
            CHECK(st.position[v].a == 2 * v);
            CHECK(st.position[v].c == 0);
        }
        CHECK(st.ray_owner.empty());
        CHECK((int)st.route.size() == k);
    }
}

TEST_CASE("second cycle inherits the planes of the first and connects down") {
    Graph g = prism();
    auto st = make_grid_state(g);
    add_flat_cycle(st, {0, 1, 2});
    CHECK(st.ray_owner.size() == 3);  // each vertex waits for its partner
    add_flat_cycle(st, {3, 4, 5});
    CHECK(st.position[3].a == st.position[0].a);
    CHECK(st.position[4].a == st.position[1].a);
    CHECK(st.position[5].a == st.position[2].a);
    CHECK(st.position[3].c > st.position[0].c);
    CHECK(st.ray_owner.empty());
    CHECK((int)st.route.size() == 9);
    for (auto& [k, p] : st.route) CHECK(p.size() <= 5);
}

TEST_CASE("bipartite closure vertices are absorbed above the cycle") {
    Graph g = complete_bipartite(3, 3);
    auto st = make_grid_state(g);
    add_flat_cycle(st, {0, 3, 1, 4});
    // Intra-cycle inheritance pairs the parts: 0,1 share a plane, 3,4 share
    // the other, and the two leftovers land above on fresh even levels.
    CHECK(st.position[0].a == 0);
    CHECK(st.position[1].a == 0);
    CHECK(st.position[3].a == 2);
    CHECK(st.position[4].a == 2);
    CHECK(st.position[0] == sp(0, 0, 0));
    CHECK(st.position[3] == sp(2, 9, 0));
    CHECK(st.position[1] == sp(0, 20, 0));
    CHECK(st.position[4] == sp(2, 29, 0));
    CHECK(st.placed[5]);
    CHECK(st.placed[2]);
    CHECK(st.position[5].a == 0);
    CHECK(st.position[2].a == 2);
    CHECK(st.position[5].c % 2 == 0);
    CHECK(st.position[2].c % 2 == 0);
    CHECK(st.position[5].c > 0);
    CHECK(st.position[2].c > st.position[5].c);
    CHECK(st.ray_owner.empty());
    CHECK((int)st.route.size() == 9);
}

TEST_CASE("complete graph on four vertices uses the vertical component plan") {
    Drawing d = layout_deg3_grid(complete_graph(4));
    check_grid(d);
    check_even_levels(d);
    std::set<long long> planes;
    for (const Vec3& p : d.positions) planes.insert(skew_of(p).a);
    CHECK(planes.size() == 1);  // whole component in one vertical plane
    for (const Polyline& r : d.routes) CHECK(r.size() <= 5);
}

TEST_CASE("named cubic graphs draw cleanly") {
    roundtrip(complete_bipartite(3, 3));
    roundtrip(prism());
    roundtrip(petersen());
    roundtrip(cube_graph());
}

TEST_CASE("plain cycles draw cleanly") {
    for (int k : {3, 4, 5, 6, 7, 10, 13}) roundtrip(cycle_graph(k));
}

TEST_CASE("trees and forests draw cleanly") {
    roundtrip(path_graph(10));
    roundtrip(complete_bipartite(1, 3));
    roundtrip(spider());
    roundtrip(binary_tree(15));
    Graph forest(9);  // two paths and three isolated vertices
    forest.add_edge(0, 1);
    forest.add_edge(1, 2);
    forest.add_edge(3, 4);
    CHECK(forest.degree(5) == 0);
    roundtrip(forest);
}

TEST_CASE("mixed components draw cleanly") {
    Graph g(9);  // triangle + K4 + a lone edge
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    for (int i = 3; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j) g.add_edge(i, j);
    g.add_edge(7, 8);
    roundtrip(g);
}

TEST_CASE("degree bound is enforced") {
    CHECK(thrown_code([] { layout_deg3_grid(complete_graph(5)); }) == errc::degree_exceeded);
}

TEST_CASE("empty and trivial graphs") {
    Drawing d0 = layout_deg3_grid(Graph(0));
    CHECK(d0.positions.empty());
    Drawing d1 = layout_deg3_grid(Graph(3));  // three isolated vertices
    check_grid(d1);
    std::set<std::pair<long long, long long>> spots;
    for (const Vec3& p : d1.positions) {
        auto s = skew_of(p);
        spots.insert({s.a, s.c});
    }
    CHECK(spots.size() == 3);
}

TEST_CASE("random cubic graphs draw cleanly") {
    for (int n : {6, 10, 14, 20}) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            Graph g = gen_random_regular(n, 3, seed);
            CAPTURE(n);
            CAPTURE(seed);
            Drawing d = layout_deg3_grid(g);
            check_grid(d);
            check_even_levels(d);
        }
    }
}

TEST_CASE("random subcubic graphs draw cleanly and deterministically") {
    for (int n : {4, 9, 17, 26, 40}) {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            Graph g = random_subcubic(n, 977 * n + seed);
            CAPTURE(n);
            CAPTURE(seed);
            Drawing d = layout_deg3_grid(g);
            check_grid(d);
            check_even_levels(d);
            Drawing d2 = layout_deg3_grid(g);
            CHECK(d.positions == d2.positions);
        }
    }
}
