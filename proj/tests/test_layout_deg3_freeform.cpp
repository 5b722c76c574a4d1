#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "ar3d/decompose.hpp"
#include "ar3d/delta_y.hpp"
#include "ar3d/error.hpp"
#include "ar3d/layout_deg3_freeform.hpp"
#include "ar3d/random_graph.hpp"
#include "ar3d/verifier.hpp"
#include "test_graphs.hpp"

using namespace ar3d;

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

std::vector<Vec3> leaving_dirs(const Drawing& d, int v) {
    std::vector<Vec3> out;
    for (int e = 0; e < d.graph.m(); ++e) {
        auto [a, b] = d.graph.edges()[e];
        if (a != v && b != v) continue;
        const Polyline& pl = d.routes[e];
        Vec3 dir = a == v ? pl[1] - pl[0] : pl[pl.size() - 2] - pl.back();
        out.push_back(dir / norm(dir));
    }
    return out;
}

std::vector<double> bend_cosines(const Drawing& d) {
    std::vector<double> out;
    for (const auto& pl : d.routes)
        for (size_t t = 1; t + 1 < pl.size(); ++t)
            out.push_back(joint_cos(pl[t] - pl[t - 1], pl[t + 1] - pl[t]));
    return out;
}

void check_freeform(const Drawing& d) {
    auto rep = verify(d, Profile::freeform120());
    INFO(rep.text());
    CHECK(rep.pass);
}

// Merged-vertex scene: y at the origin with straight spokes of length 6
// along the given unit directions.
Drawing star_at_y(const std::vector<Vec3>& dirs) {
    int deg = (int)dirs.size();
    Drawing d;
    d.graph = Graph(1 + deg);
    d.repr = Repr::real;
    d.positions.push_back({0, 0, 0});
    for (int i = 0; i < deg; ++i) {
        d.graph.add_edge(0, 1 + i);
        Vec3 p = 6.0 * dirs[i];
        d.positions.push_back(p);
        d.routes.push_back({{0, 0, 0}, p});
    }
    return d;
}

Drawing lone_vertex() {
    Drawing d;
    d.graph = Graph(1);
    d.repr = Repr::real;
    d.positions.push_back({0, 0, 0});
    return d;
}

DeltaYRecord triangle_record(int n_old, std::vector<std::pair<int, int>> boundary) {
    DeltaYRecord rec;
    rec.members = {0, 1, 2};
    rec.induced_edges = {{0, 1}, {0, 2}, {1, 2}};
    rec.boundary = std::move(boundary);
    rec.relabel.assign(n_old, -1);
    rec.relabel[0] = 0;
    for (int v = 3; v < n_old; ++v) rec.relabel[v] = v - 2;
    return rec;
}

DeltaYRecord diamond_record(int n_old, std::vector<std::pair<int, int>> boundary) {
    DeltaYRecord rec;
    rec.members = {0, 1, 2, 3};
    rec.induced_edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}};
    rec.boundary = std::move(boundary);
    rec.relabel.assign(n_old, -1);
    rec.relabel[0] = 0;
    for (int v = 4; v < n_old; ++v) rec.relabel[v] = v - 3;
    return rec;
}

DeltaYRecord five_record(int n_old, std::vector<std::pair<int, int>> boundary) {
    DeltaYRecord rec;
    rec.members = {0, 1, 2, 3, 4};
    rec.induced_edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 4}, {3, 4}};
    rec.boundary = std::move(boundary);
    rec.relabel.assign(n_old, -1);
    rec.relabel[0] = 0;
    for (int v = 5; v < n_old; ++v) rec.relabel[v] = v - 4;
    return rec;
}

Vec3 planar_dir(double deg) {
    double a = deg * 3.14159265358979323846 / 180.0;
    return {std::cos(a), std::sin(a), 0};
}

// The expanded member must sit on the old spoke toward its outside nbr.
void check_on_spoke(const Drawing& d2, int member, const Vec3& dir) {
    Vec3 p = d2.positions[member];
    CHECK(norm(cross(p, dir)) < 1e-7 * norm(p));
    CHECK(dot(p, dir) > 0.01);
    CHECK(norm(p) < 6.0);
}

}  // namespace

TEST_CASE("catalogue K4 drawing has exact fans and integral bends") {
    Drawing d = draw_k4();
    check_freeform(d);
    REQUIRE(d.graph.n() == 4);
    REQUIRE(d.graph.m() == 6);
    for (int v = 0; v < 4; ++v) {
        auto dirs = leaving_dirs(d, v);
        REQUIRE(dirs.size() == 3);
        for (size_t a = 0; a < 3; ++a)
            for (size_t b = a + 1; b < 3; ++b)
                CHECK(std::abs(dot(dirs[a], dirs[b]) + 0.5) < 1e-12);
    }
    auto bends = bend_cosines(d);
    CHECK(bends.size() == 12);  // two per edge
    double want = -1.0 / std::sqrt(3.0);
    for (double jc : bends) CHECK(std::abs(jc - want) < 1e-12);
    for (const auto& pl : d.routes) {
        CHECK(pl.size() == 4);
        for (const auto& p : pl) CHECK(is_integral(p));
    }
}

TEST_CASE("fence polygons close, stay rectilinear-diagonal, and budget the vertices") {
    for (int k = 4; k <= 28; ++k)
        for (int attempt : {0, 1, 5}) {
            PolygonP P = make_polygon_p(k, attempt);
            CAPTURE(k);
            CAPTURE(attempt);
            REQUIRE(P.corners.size() == 2 * P.axis_sides.size());
            int total = 0;
            for (const auto& s : P.axis_sides) {
                total += s.vertex_count;
                CHECK(s.length > 1.0);
                CHECK((s.vertex_count == 1 || s.vertex_count == 2));
            }
            CHECK(total == k);
            int nc = (int)P.corners.size();
            std::set<int> axis_firsts;
            for (const auto& s : P.axis_sides) axis_firsts.insert(s.corner);
            for (int c = 0; c < nc; ++c) {
                double dx = P.corners[(c + 1) % nc][0] - P.corners[c][0];
                double dy = P.corners[(c + 1) % nc][1] - P.corners[c][1];
                if (axis_firsts.count(c)) {
                    CHECK((std::abs(dx) < 1e-12 || std::abs(dy) < 1e-12));
                } else {
                    CHECK(std::abs(std::abs(dx) - std::abs(dy)) < 1e-9);
                }
                CHECK(std::hypot(dx, dy) > 0.1);
            }
        }
    CHECK(thrown_code([] { make_polygon_p(3); }) == errc::cycle_too_short);
}

TEST_CASE("six-cycle with all pendants up hits the exact joint values") {
    std::vector<int> cyc{0, 1, 2, 3, 4, 5};
    std::map<int, int> labels;
    for (int v : cyc) labels[v] = +1;
    CycleDrawing cd = single_cycle_drawing(cyc, labels);
    const Drawing& d = cd.drawing;
    check_freeform(d);
    REQUIRE(d.graph.n() == 6);
    REQUIRE(cd.rays.size() == 6);
    for (const auto& [i, s] : cd.rays) CHECK(s == +1);

    for (int v = 0; v < 6; ++v) {
        auto dirs = leaving_dirs(d, v);
        REQUIRE(dirs.size() == 2);
        CHECK(std::abs(dot(dirs[0], dirs[1]) + 0.5) <= 1e-9);
        // both walk directions drop at slope -1/sqrt(3), reserving the ray
        for (const auto& u : dirs) CHECK(std::abs(u.z + 0.5) <= 1e-9);
    }
    const double corner = -std::sqrt(3.0 / 8.0);
    int corners = 0, folds = 0;
    for (double jc : bend_cosines(d)) {
        if (std::abs(jc - corner) <= 1e-9)
            ++corners;
        else if (std::abs(jc + 0.5) <= 1e-9)
            ++folds;
        else
            FAIL("bend joint away from both exact values: " << jc);
    }
    CHECK(folds == 2);  // two double sides, both same-sign
    CHECK(corners == 8);
    for (const auto& pl : d.routes) CHECK(pl.size() <= 4);
}

TEST_CASE("four-cycle with alternating pendant labels") {
    std::vector<int> cyc{7, 3, 9, 5};
    std::map<int, int> labels{{7, +1}, {3, -1}, {9, +1}, {5, -1}};
    CycleDrawing cd = single_cycle_drawing(cyc, labels);
    check_freeform(cd.drawing);
    REQUIRE(cd.rays.size() == 4);
    CHECK(cd.rays.at(0) == +1);
    CHECK(cd.rays.at(1) == -1);
    CHECK(cd.rays.at(2) == +1);
    CHECK(cd.rays.at(3) == -1);
    for (int i = 0; i < 4; ++i) {
        double z = cd.drawing.positions[i].z;
        CHECK(z * cd.rays.at(i) > 0);  // lifted to the labeled side
    }
}

TEST_CASE("five-cycle double side folds only when the labels agree") {
    std::map<int, int> same{{0, 1}, {1, 1}}, mixed{{0, 1}, {1, -1}};
    CycleDrawing a = single_cycle_drawing({0, 1, 2, 3, 4}, same);
    CycleDrawing b = single_cycle_drawing({0, 1, 2, 3, 4}, mixed);
    check_freeform(a.drawing);
    check_freeform(b.drawing);
    int ea = a.drawing.graph.edge_index(0, 1);
    int eb = b.drawing.graph.edge_index(0, 1);
    CHECK(a.drawing.routes[ea].size() == 3);  // z = 0 fold between the pair
    CHECK(b.drawing.routes[eb].size() == 2);  // straight through the tilt
}

TEST_CASE("single cycle input validation") {
    CHECK(thrown_code([] { single_cycle_drawing({0, 1, 2}, {}); }) == errc::cycle_too_short);
    CHECK(thrown_code([] { single_cycle_drawing({0, 1, 2, 0}, {}); }) == errc::bad_input);
    CHECK(thrown_code([] {
              single_cycle_drawing({0, 1, 2, 3}, {{9, 1}});
          }) == errc::bad_input);
    CHECK(thrown_code([] {
              single_cycle_drawing({0, 1, 2, 3}, {{1, 2}});
          }) == errc::bad_input);
}

TEST_CASE("extension operations carry the petersen graph") {
    Graph g = testing::petersen();
    ExtensibleState st = make_state(g);
    check_extensible(st, true);
    st = extend_with_cycle(st, {0, 1, 2, 3, 4});
    check_extensible(st, true);
    CHECK(st.placed_count() == 5);
    CHECK(st.rays().size() == 5);
    st = extend_with_cycle(st, {5, 7, 9, 6, 8});
    check_extensible(st, true);
    CHECK(st.placed_count() == 10);
    CHECK(st.rays().empty());
}

TEST_CASE("extension operations reject bad cycles and vertices") {
    Graph g = testing::petersen();
    ExtensibleState st = make_state(g);
    CHECK(thrown_code([&] { extend_with_cycle(st, {0, 1, 2}); }) == errc::length_below_four);
    CHECK(thrown_code([&] { extend_with_cycle(st, {0, 1, 2, 3}); }) == errc::bad_input);
    CHECK(thrown_code([&] { extend_with_vertex(st, 0); }) == errc::too_many_unplaced_neighbors);
    CHECK(thrown_code([&] { extend_with_triskelion(st, 0); }) == errc::neighbors_not_placed);

    Graph h = testing::cycle_graph(6);
    h.add_edge(0, 3);
    ExtensibleState sh = make_state(h);
    CHECK(thrown_code([&] { extend_with_cycle(sh, {0, 1, 2, 3, 4, 5}); }) == errc::not_chordless);

    Graph p = testing::path_graph(3);
    ExtensibleState sp = make_state(p);
    CHECK(thrown_code([&] { extend_with_triskelion(sp, 1); }) == errc::bad_input);
}

TEST_CASE("tent and triskelion placements on K3,3") {
    Graph g = testing::complete_bipartite(3, 3);
    ExtensibleState st = make_state(g);
    st = extend_with_cycle(st, {0, 3, 1, 4});
    check_extensible(st, true);
    st = extend_with_vertex(st, 2);  // two placed neighbors: a tent
    check_extensible(st, true);
    CHECK(thrown_code([&] { extend_with_vertex(st, 5); }) == errc::too_many_placed_neighbors);
    ExtensibleState fin = extend_with_triskelion(st, 5);
    check_extensible(fin, true);
    CHECK(fin.placed_count() == 6);

    // triskelion fan: three horizontal unit directions at mutual 120 degrees
    Graph fing = fin.g;
    std::vector<Vec3> dirs;
    for (int w : fing.neighbors(5)) {
        int e = fing.edge_index(std::min(5, w), std::max(5, w));
        Polyline pl = fin.route[e];
        if (w < 5) std::reverse(pl.begin(), pl.end());
        Vec3 u = pl[1] - pl[0];
        dirs.push_back(u / norm(u));
    }
    REQUIRE(dirs.size() == 3);
    for (size_t a = 0; a < 3; ++a) {
        CHECK(std::abs(dirs[a].z) < 1e-12);
        for (size_t b = a + 1; b < 3; ++b)
            CHECK(std::abs(dot(dirs[a], dirs[b]) + 0.5) < 1e-9);
    }
}

TEST_CASE("hexagon expansion of a degree-3 merged triangle") {
    Drawing cur = star_at_y({planar_dir(0), planar_dir(120), planar_dir(240)});
    check_freeform(cur);
    DeltaYLog log;
    log.records.push_back(triangle_record(6, {{0, 3}, {1, 4}, {2, 5}}));
    Drawing d2 = expand_delta_y(cur, log);
    check_freeform(d2);
    REQUIRE(d2.graph.n() == 6);
    REQUIRE(d2.graph.m() == 6);
    check_on_spoke(d2, 0, planar_dir(0));
    check_on_spoke(d2, 1, planar_dir(120));
    check_on_spoke(d2, 2, planar_dir(240));
    for (double jc : bend_cosines(d2)) CHECK(jc <= -0.5 + 1e-9);
}

TEST_CASE("hexagon expansion of a degree-2 merged triangle at exactly 120") {
    Drawing cur = star_at_y({planar_dir(0), planar_dir(120)});
    DeltaYLog log;
    log.records.push_back(triangle_record(5, {{0, 3}, {1, 4}}));
    Drawing d2 = expand_delta_y(cur, log);
    check_freeform(d2);
    REQUIRE(d2.graph.n() == 5);
    REQUIRE(d2.graph.m() == 5);
    check_on_spoke(d2, 0, planar_dir(0));
    check_on_spoke(d2, 1, planar_dir(120));
}

TEST_CASE("heptagon expansion covers openings wider than 120") {
    for (double beta : {130.0, 150.0, 170.0, 180.0}) {
        CAPTURE(beta);
        Drawing cur = star_at_y({planar_dir(0), planar_dir(beta)});
        DeltaYLog log;
        log.records.push_back(triangle_record(5, {{0, 3}, {1, 4}}));
        Drawing d2 = expand_delta_y(cur, log);
        check_freeform(d2);
        REQUIRE(d2.graph.n() == 5);
        check_on_spoke(d2, 0, planar_dir(0));
        check_on_spoke(d2, 1, planar_dir(beta));
        // one triangle edge takes two bends, the others one each
        std::multiset<size_t> sizes;
        for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}})
            sizes.insert(d2.routes[d2.graph.edge_index(a, b)].size());
        CHECK(sizes == std::multiset<size_t>{3, 3, 4});
    }
}

TEST_CASE("merged fans below 120 are rejected") {
    Drawing cur = star_at_y({planar_dir(0), planar_dir(100)});
    DeltaYLog log;
    log.records.push_back(triangle_record(5, {{0, 3}, {1, 4}}));
    CHECK(thrown_code([&] { expand_delta_y(cur, log); }) == errc::invariant_broken);
}

TEST_CASE("diamond expansion folds out of plane across the opening sweep") {
    for (double beta : {120.0, 125.0, 135.0, 150.0, 165.0, 180.0}) {
        CAPTURE(beta);
        Drawing cur = star_at_y({planar_dir(0), planar_dir(beta)});
        DeltaYLog log;
        log.records.push_back(diamond_record(6, {{2, 4}, {3, 5}}));
        Drawing d2 = expand_delta_y(cur, log);
        check_freeform(d2);
        REQUIRE(d2.graph.n() == 6);
        REQUIRE(d2.graph.m() == 7);
        check_on_spoke(d2, 2, planar_dir(0));
        check_on_spoke(d2, 3, planar_dir(beta));
        CHECK(d2.routes[d2.graph.edge_index(0, 1)].size() == 2);
        for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 2}, {0, 3}, {1, 2}, {1, 3}})
            CHECK(d2.routes[d2.graph.edge_index(a, b)].size() == 4);
    }
}

TEST_CASE("diamond expansion with one or no outer edges") {
    {
        Drawing cur = star_at_y({planar_dir(0)});
        DeltaYLog log;
        log.records.push_back(diamond_record(5, {{2, 4}}));
        Drawing d2 = expand_delta_y(cur, log);
        check_freeform(d2);
        REQUIRE(d2.graph.n() == 5);
        check_on_spoke(d2, 2, planar_dir(0));
    }
    {
        DeltaYLog log;
        log.records.push_back(diamond_record(4, {}));
        Drawing d2 = expand_delta_y(lone_vertex(), log);
        check_freeform(d2);
        REQUIRE(d2.graph.n() == 4);
        REQUIRE(d2.graph.m() == 5);
    }
}

TEST_CASE("five-set expansion splices the shared neighbor back in") {
    {
        Drawing cur = star_at_y({planar_dir(0)});
        DeltaYLog log;
        log.records.push_back(five_record(6, {{4, 5}}));
        Drawing d2 = expand_delta_y(cur, log);
        check_freeform(d2);
        REQUIRE(d2.graph.n() == 6);
        REQUIRE(d2.graph.m() == 8);
        check_on_spoke(d2, 4, planar_dir(0));
        CHECK(d2.routes[d2.graph.edge_index(2, 4)].size() == 4);
        CHECK(d2.routes[d2.graph.edge_index(3, 4)].size() == 4);
    }
    {
        DeltaYLog log;
        log.records.push_back(five_record(5, {}));
        Drawing d2 = expand_delta_y(lone_vertex(), log);
        check_freeform(d2);
        REQUIRE(d2.graph.n() == 5);
        REQUIRE(d2.graph.m() == 7);
    }
}

TEST_CASE("mid-reduction K4 records come back from the catalogue") {
    DeltaYRecord rec;
    rec.members = {0, 1, 2, 3};
    rec.induced_edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    rec.relabel = {0, -1, -1, -1};
    DeltaYLog log;
    log.records.push_back(rec);
    Drawing d2 = expand_delta_y(lone_vertex(), log);
    check_freeform(d2);
    REQUIRE(d2.graph.n() == 4);
    REQUIRE(d2.graph.m() == 6);
}

TEST_CASE("expansion rejects records that do not match the drawing") {
    Drawing cur = star_at_y({planar_dir(0), planar_dir(120)});
    {
        DeltaYLog log;  // wrong vertex count
        log.records.push_back(triangle_record(9, {{0, 3}, {1, 4}}));
        CHECK(thrown_code([&] { expand_delta_y(cur, log); }) == errc::log_mismatch);
    }
    {
        DeltaYLog log;  // boundary edge absent from the drawing
        log.records.push_back(triangle_record(5, {{0, 3}, {1, 3}}));
        CHECK(thrown_code([&] { expand_delta_y(cur, log); }) == errc::log_mismatch);
    }
    {
        DeltaYLog log;  // triangle record without its third edge
        DeltaYRecord rec = triangle_record(5, {{0, 3}, {1, 4}});
        rec.induced_edges.pop_back();
        log.records.push_back(rec);
        CHECK(thrown_code([&] { expand_delta_y(cur, log); }) == errc::log_mismatch);
    }
    {
        DeltaYLog log;  // relabel table with a hole
        DeltaYRecord rec = triangle_record(5, {{0, 3}, {1, 4}});
        rec.relabel[4] = 3;
        log.records.push_back(rec);
        CHECK(thrown_code([&] { expand_delta_y(cur, log); }) == errc::log_mismatch);
    }
}

TEST_CASE("full layout on the named cubic graphs") {
    for (auto [name, g] : std::vector<std::pair<const char*, Graph>>{
             {"K4", testing::complete_graph(4)},
             {"K3,3", testing::complete_bipartite(3, 3)},
             {"petersen", testing::petersen()},
             {"prism", testing::prism()},
             {"triangle", testing::cycle_graph(3)},
             {"C4", testing::cycle_graph(4)},
             {"path", testing::path_graph(5)},
             {"K2,3", testing::complete_bipartite(2, 3)}}) {
        CAPTURE(name);
        Drawing d = layout_deg3_two_bend(g);
        check_freeform(d);
        CHECK(d.graph.edges() == g.edges());
        CHECK(d.graph.n() == g.n());
        CHECK(d.algorithm == "deg3-freeform");
    }
}

TEST_CASE("full layout on mixed and disconnected graphs") {
    // K4 component frozen whole, plus a pentagon and an isolated vertex
    Graph g(10);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) g.add_edge(i, j);
    for (int i = 0; i < 5; ++i) g.add_edge(4 + i, 4 + (i + 1) % 5);
    Drawing d = layout_deg3_two_bend(g);
    check_freeform(d);
    CHECK(d.graph.edges() == g.edges());

    Drawing e = layout_deg3_two_bend(Graph(0));
    CHECK(e.graph.n() == 0);
}

TEST_CASE("full layout on random cubic graphs") {
    for (int n : {6, 8, 10, 14, 18})
        for (std::uint64_t seed : {11ull, 23ull}) {
            CAPTURE(n);
            CAPTURE(seed);
            Graph g = gen_random_regular(n, 3, seed);
            Drawing d = layout_deg3_two_bend(g);
            check_freeform(d);
            CHECK(d.graph.edges() == g.edges());
        }
}

TEST_CASE("layout is deterministic") {
    Graph g = gen_random_regular(12, 3, 7);
    Drawing a = layout_deg3_two_bend(g);
    Drawing b = layout_deg3_two_bend(g);
    REQUIRE(a.positions.size() == b.positions.size());
    for (size_t i = 0; i < a.positions.size(); ++i) CHECK(a.positions[i] == b.positions[i]);
    REQUIRE(a.routes.size() == b.routes.size());
    for (size_t e = 0; e < a.routes.size(); ++e) {
        REQUIRE(a.routes[e].size() == b.routes[e].size());
        for (size_t t = 0; t < a.routes[e].size(); ++t) CHECK(a.routes[e][t] == b.routes[e][t]);
    }
}

TEST_CASE("layout rejects graphs above degree three") {
    CHECK_THROWS_AS(layout_deg3_two_bend(testing::complete_graph(5)), error);
}
