#include "ar3d/layout_deg3_freeform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "ar3d/decompose.hpp"
#include "ar3d/error.hpp"
#include "ar3d/verifier.hpp"

namespace ar3d {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kGolden = 0.61803398874989484820;  // 1/phi

// Placement margins. kSep separates guard points in projection, kClear keeps
// old ray bases away from new fences, kLine is the minimum height of any
// guard triangle (so later vertical columns clear transverse segments by a
// comfortable multiple of the verifier clearance), kBand stacks features
// vertically.
constexpr double kSep = 0.35;
constexpr double kClear = 0.35;
constexpr double kLine = 0.004;
constexpr double kBand = 1.5;

double golden_frac(std::uint64_t i) {
    long double v = (long double)kGolden * (long double)(i + 1);
    return (double)(v - std::floor(v));
}

struct Vec2 {
    double x = 0, y = 0;
};

Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
Vec2 operator*(double s, const Vec2& a) { return {s * a.x, s * a.y}; }
double dot2(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
double dist2(const Vec2& a, const Vec2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double point_segment_dist2(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 u = b - a;
    double L2 = dot2(u, u);
    if (L2 == 0) return dist2(p, a);
    double t = std::clamp(dot2(p - a, u) / L2, 0.0, 1.0);
    return dist2(p, a + t * u);
}

// Smallest height of the triangle abc.
double triple_height(const Vec2& a, const Vec2& b, const Vec2& c) {
    double area2 = std::abs((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
    double m = std::max({dist2(a, b), dist2(a, c), dist2(b, c)});
    return m == 0 ? 0 : area2 / m;
}

Vec2 spiral(const Vec2& c, int t, double step) {
    if (t == 0) return c;
    double r = step * std::sqrt((double)t);
    double a = 2.0 * kPi * kGolden * (double)t;
    return {c.x + r * std::cos(a), c.y + r * std::sin(a)};
}

Vec2 xy(const Vec3& p) { return {p.x, p.y}; }

double feature_z_top(const ExtensibleState& st) {
    double z = 0;
    for (int v = 0; v < st.g.n(); ++v)
        if (st.placed[v]) z = std::max(z, st.position[v].z);
    for (const auto& pl : st.route)
        for (const auto& p : pl) z = std::max(z, p.z);
    return z;
}

// pl oriented u -> v; stored in edge order.
void put_route(ExtensibleState& st, int u, int v, Polyline pl) {
    int e = st.g.edge_index(std::min(u, v), std::max(u, v));
    if (e < 0) fail(errc::internal, "route for a missing edge");
    if (u > v) std::reverse(pl.begin(), pl.end());
    st.route[e] = std::move(pl);
}

Drawing state_drawing(const ExtensibleState& st) {
    std::vector<int> keep;
    for (int v = 0; v < st.g.n(); ++v)
        if (st.placed[v]) keep.push_back(v);
    Drawing d;
    d.graph = induced_subgraph(st.g, keep);
    d.repr = Repr::real;
    d.algorithm = "deg3-freeform-partial";
    d.positions.resize(keep.size());
    for (size_t i = 0; i < keep.size(); ++i) d.positions[i] = st.position[keep[i]];
    d.routes.resize(d.graph.m());
    for (int e = 0; e < d.graph.m(); ++e) {
        auto [a, b] = d.graph.edges()[e];
        int orig = st.g.edge_index(keep[a], keep[b]);
        d.routes[e] = st.route[orig];  // keep is ascending, orientation survives
    }
    return d;
}

}  // namespace

PolygonP make_polygon_p(int cycle_len, int attempt) {
    if (cycle_len < 4)
        fail(errc::cycle_too_short, "fence needs cycle length >= 4, got " + std::to_string(cycle_len));
    int k = cycle_len;
    int half = (k + 1) / 2;
    int axis = std::max(4, half + (half % 2));  // even number of axis sides, >= ceil(k/2)
    int doubles = k - axis;                     // sides carrying two vertices
    int jogs = (axis - 4) / 2;
    int nb = 2 * jogs + 1;  // bottom axis sides

    auto frac = [&](int i) {
        return golden_frac((std::uint64_t)i + 1315423911ull * (std::uint64_t)(attempt + 1));
    };
    double diag = 4.0 + frac(1);

    PolygonP P;
    double cx = 0, cy = 0;
    std::vector<double> axis_len;
    std::vector<int> axis_corner;
    auto corner = [&]() { P.corners.push_back({cx, cy}); };
    auto axis_side = [&](double dx, double dy, double len) {
        axis_corner.push_back((int)P.corners.size());
        axis_len.push_back(len);
        corner();
        cx += dx;
        cy += dy;
    };
    auto diag_side = [&](double dx, double dy) {
        corner();
        cx += dx;
        cy += dy;
    };

    int fm = 0;
    auto flen = [&]() {
        double v = 13.0 + 1.7 * fm + 4.0 * frac(17 * fm + 5);
        ++fm;
        return v;
    };

    // Bottom: baseline and jog-pair sides; every jog descends then ascends a
    // little higher, so all bottom sides sit at distinct heights.
    double dip = 0;
    for (int i = 0; i < nb; ++i) {
        double L = flen();
        axis_side(L, 0, L);
        if (i == nb - 1) break;
        if (i % 2 == 0) {
            dip = 1.2 + 0.7 * frac(23 * i + 3);
            diag_side(dip, -dip);
        } else {
            double rise = dip + 0.25 + 0.2 * frac(29 * i + 7);
            diag_side(rise, rise);
        }
    }
    diag_side(diag, diag);
    double hr = flen();
    axis_side(0, hr, hr);
    diag_side(-diag, diag);
    double top = cx;  // closes the walk in x
    axis_side(-top, 0, top);
    diag_side(-diag, -diag);
    double hl = cy - diag;  // closes the walk in y
    axis_side(0, -hl, hl);
    diag_side(diag, -diag);

    if (std::abs(cx) > 1e-9 || std::abs(cy) > 1e-9) fail(errc::internal, "fence walk does not close");
    if (top < 8 || hl < 8) fail(errc::internal, "fence sides collapsed");

    for (size_t s = 0; s < axis_len.size(); ++s)
        P.axis_sides.push_back({axis_corner[s], axis_len[s], (int)s < doubles ? 2 : 1});
    if ((int)P.axis_sides.size() != axis || (int)P.corners.size() != 2 * axis)
        fail(errc::internal, "fence side bookkeeping broken");
    return P;
}

CycleDrawing single_cycle_drawing(const std::vector<int>& cycle, const std::map<int, int>& pendant_labels) {
    int k = (int)cycle.size();
    if (k < 4) fail(errc::cycle_too_short, "cycle of length " + std::to_string(k));
    {
        std::set<int> ids(cycle.begin(), cycle.end());
        if ((int)ids.size() != k) fail(errc::bad_input, "repeated vertex in cycle");
        for (const auto& [v, s] : pendant_labels) {
            if (!ids.count(v)) fail(errc::bad_input, "pendant label for a vertex outside the cycle");
            if (s != 1 && s != -1) fail(errc::bad_input, "pendant label must be +1 or -1");
        }
    }

    for (int attempt = 0; attempt < 50; ++attempt) {
        PolygonP P = make_polygon_p(k, attempt);
        struct Node {
            Vec3 p;
            int vi;  // cycle position, or -1 for a bend
        };
        std::vector<Node> nodes;
        int corners_total = (int)P.corners.size();
        std::vector<int> side_of_corner(corners_total, -1);
        for (size_t s = 0; s < P.axis_sides.size(); ++s) side_of_corner[P.axis_sides[s].corner] = (int)s;

        int next_vertex = 0;
        for (int c = 0; c < corners_total; ++c) {
            Vec3 pc{P.corners[c][0], P.corners[c][1], 0};
            nodes.push_back({pc, -1});
            int s = side_of_corner[c];
            if (s < 0) continue;
            const auto& side = P.axis_sides[s];
            const auto& c1 = P.corners[(c + 1) % corners_total];
            double L = side.length;
            Vec3 u{(c1[0] - pc.x) / L, (c1[1] - pc.y) / L, 0};
            auto sign_of = [&](int vi) {
                auto it = pendant_labels.find(cycle[vi]);
                return it == pendant_labels.end() ? 1.0 : (double)it->second;
            };
            if (side.vertex_count == 1) {
                int vi = next_vertex++;
                Vec3 p = pc + (L / 2) * u;
                p.z = sign_of(vi) * L / (2 * kSqrt3);
                nodes.push_back({p, vi});
            } else {
                int v1 = next_vertex++, v2 = next_vertex++;
                double s1 = sign_of(v1), s2 = sign_of(v2);
                Vec3 a = pc + (L / 4) * u;
                a.z = s1 * L / (4 * kSqrt3);
                nodes.push_back({a, v1});
                if (s1 == s2) nodes.push_back({pc + (L / 2) * u, -1});  // z = 0 fold
                Vec3 b = pc + (3 * L / 4) * u;
                b.z = s2 * L / (4 * kSqrt3);
                nodes.push_back({b, v2});
            }
        }
        if (next_vertex != k) fail(errc::internal, "fence vertex budget mismatch");

        // Reject fences whose vertex stations line up in projection.
        std::vector<Vec2> vxy(k);
        for (const auto& nd : nodes)
            if (nd.vi >= 0) vxy[nd.vi] = xy(nd.p);
        bool clear = true;
        for (int a = 0; a < k && clear; ++a)
            for (int b = a + 1; b < k && clear; ++b)
                for (int c2 = b + 1; c2 < k && clear; ++c2)
                    if (triple_height(vxy[a], vxy[b], vxy[c2]) < kLine) clear = false;
        if (!clear) continue;

        // Exact joint values at the vertices.
        int N = (int)nodes.size();
        for (int i = 0; i < N; ++i) {
            if (nodes[i].vi < 0) continue;
            const Vec3& prev = nodes[(i + N - 1) % N].p;
            const Vec3& next = nodes[(i + 1) % N].p;
            double jc = joint_cos(nodes[i].p - prev, next - nodes[i].p);
            if (std::abs(jc + 0.5) > 1e-9) fail(errc::internal, "cycle vertex joint away from 120");
        }

        int start = 0;
        while (nodes[start].vi != 0) ++start;
        std::rotate(nodes.begin(), nodes.begin() + start, nodes.end());

        Graph cg(k);
        for (int i = 0; i < k; ++i) cg.add_edge(i, (i + 1) % k);
        Drawing d;
        d.graph = cg;
        d.repr = Repr::real;
        d.algorithm = "single-cycle";
        d.positions.assign(k, {});
        d.routes.assign(cg.m(), {});
        auto put = [&](int a, int b, Polyline pl) {
            int e = cg.edge_index(std::min(a, b), std::max(a, b));
            if (a > b) std::reverse(pl.begin(), pl.end());
            d.routes[e] = std::move(pl);
        };

        int i0 = 0;
        while (i0 < N) {
            int vi = nodes[i0].vi;
            d.positions[vi] = nodes[i0].p;
            Polyline pl{nodes[i0].p};
            int j = i0 + 1;
            while (j < N && nodes[j].vi < 0) pl.push_back(nodes[j++].p);
            const Node& tail = (j < N) ? nodes[j] : nodes[0];
            pl.push_back(tail.p);
            if ((int)pl.size() > 4) fail(errc::internal, "more than two bends between cycle vertices");
            put(vi, tail.vi, std::move(pl));
            i0 = j;
        }

        // Bends are fence corners (joint cos -sqrt(3/8)) or midpoint folds
        // (joint cos -1/2), both exact.
        const double corner_cos = std::sqrt(3.0 / 8.0);
        for (const auto& pl : d.routes)
            for (size_t t = 1; t + 1 < pl.size(); ++t) {
                double jc = joint_cos(pl[t] - pl[t - 1], pl[t + 1] - pl[t]);
                if (std::min(std::abs(jc + 0.5), std::abs(jc + corner_cos)) > 1e-9)
                    fail(errc::internal, "fence bend joint off the exact values");
            }

        CycleDrawing out;
        out.drawing = std::move(d);
        for (int i = 0; i < k; ++i) {
            auto it = pendant_labels.find(cycle[i]);
            if (it != pendant_labels.end()) out.rays[i] = it->second;
        }
        return out;
    }
    fail(errc::internal, "no nondegenerate fence found");
}

int ExtensibleState::placed_count() const {
    int c = 0;
    for (char p : placed) c += p != 0;
    return c;
}

std::map<int, Vec3> ExtensibleState::rays() const {
    std::map<int, Vec3> r;
    for (int v = 0; v < g.n(); ++v) {
        if (!placed[v]) continue;
        int unplaced = 0;
        for (int w : g.neighbors(v)) unplaced += !placed[w];
        if (unplaced == 1) r[v] = position[v];
    }
    return r;
}

ExtensibleState make_state(const Graph& g) {
    ExtensibleState st;
    st.g = g;
    st.placed.assign(g.n(), 0);
    st.position.assign(g.n(), Vec3{});
    st.route.assign(g.edges().size(), Polyline{});
    return st;
}

void check_extensible(const ExtensibleState& st, bool full) {
    const Graph& g = st.g;
    if ((int)st.placed.size() != g.n() || (int)st.position.size() != g.n() || (int)st.route.size() != g.m())
        fail(errc::invariant_broken, "state arrays out of step with the graph");
    for (int v = 0; v < g.n(); ++v) {
        if (!st.placed[v]) continue;
        int unplaced = 0;
        for (int w : g.neighbors(v)) unplaced += !st.placed[w];
        if (unplaced > 1) fail(errc::invariant_broken, "placed vertex with two unplaced neighbors");
    }
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges()[e];
        bool both = st.placed[u] && st.placed[v];
        if (both == st.route[e].empty())
            fail(errc::invariant_broken, both ? "drawn pair with no route" : "route touching an unplaced vertex");
        if (both && (norm(st.route[e].front() - st.position[u]) > 1e-9 ||
                     norm(st.route[e].back() - st.position[v]) > 1e-9))
            fail(errc::invariant_broken, "route endpoints away from the vertex positions");
    }
    std::vector<Vec2> bases;
    for (const auto& [v, p] : st.rays()) bases.push_back(xy(p));
    for (size_t a = 0; a < bases.size(); ++a)
        for (size_t b = a + 1; b < bases.size(); ++b)
            if (dist2(bases[a], bases[b]) < 1e-9)
                fail(errc::invariant_broken, "coincident ray bases in projection");
    for (size_t a = 0; a < bases.size(); ++a)
        for (size_t b = a + 1; b < bases.size(); ++b)
            for (size_t c = b + 1; c < bases.size(); ++c)
                if (triple_height(bases[a], bases[b], bases[c]) < 1e-9)
                    fail(errc::invariant_broken, "collinear ray bases in projection");
    if (st.z_top < feature_z_top(st) - 1e-9) fail(errc::invariant_broken, "z_top below a drawn feature");
    if (full && st.placed_count() > 0) {
        auto rep = verify(state_drawing(st), Profile::freeform120());
        if (!rep.pass) fail(errc::invariant_broken, "partial drawing rejected: " + rep.text());
    }
}

ExtensibleState extend_with_cycle(const ExtensibleState& st, const std::vector<int>& cyc) {
    const Graph& g = st.g;
    int k = (int)cyc.size();
    if (k < 4) fail(errc::length_below_four, "cycle of length " + std::to_string(k));
    std::vector<int> posin(g.n(), -1);
    for (int i = 0; i < k; ++i) {
        int v = cyc[i];
        if (v < 0 || v >= g.n()) fail(errc::bad_input, "cycle vertex out of range");
        if (st.placed[v]) fail(errc::bad_input, "cycle vertex already placed");
        if (posin[v] >= 0) fail(errc::bad_input, "repeated vertex in cycle");
        posin[v] = i;
    }
    for (int i = 0; i < k; ++i)
        if (!g.has_edge(cyc[i], cyc[(i + 1) % k])) fail(errc::bad_input, "cycle step is not an edge");
    for (int i = 0; i < k; ++i)
        for (int w : g.neighbors(cyc[i])) {
            int j = posin[w];
            if (j >= 0 && j != (i + 1) % k && j != (i + k - 1) % k)
                fail(errc::not_chordless, "chord between cycle positions " + std::to_string(i) + " and " +
                                              std::to_string(j));
        }

    auto rays_old = st.rays();
    std::map<int, int> labels;
    struct Conn {
        int ci;  // cycle position
        int w;   // placed outside neighbor
    };
    std::vector<Conn> conns;
    for (int i = 0; i < k; ++i)
        for (int w : g.neighbors(cyc[i])) {
            if (posin[w] >= 0) continue;
            if (st.placed[w]) {
                if (!rays_old.count(w)) fail(errc::invariant_broken, "connection target has no ray");
                labels[cyc[i]] = -1;
                conns.push_back({i, w});
            } else {
                labels[cyc[i]] = +1;
            }
        }

    CycleDrawing cd = single_cycle_drawing(cyc, labels);

    std::vector<Vec2> bases;
    for (const auto& [v, p] : rays_old) bases.push_back(xy(p));
    std::vector<std::array<Vec2, 2>> fence;
    for (const auto& pl : cd.drawing.routes)
        for (size_t t = 0; t + 1 < pl.size(); ++t) fence.push_back({xy(pl[t]), xy(pl[t + 1])});
    std::vector<Vec2> vxy;
    for (const auto& p : cd.drawing.positions) vxy.push_back(xy(p));

    Vec2 center{0, 0};
    if (!conns.empty()) {
        for (const auto& c : conns) center = center + xy(st.position[c.w]);
        center = (1.0 / conns.size()) * center;
        Vec2 fc{0, 0};
        for (const auto& p : vxy) fc = fc + p;
        center = center - (1.0 / k) * fc;
    }

    bool found = false;
    Vec2 off{};
    for (int t = 0; t < 4000 && !found; ++t) {
        Vec2 o = spiral(center, t, 1.1);
        bool ok = true;
        for (const auto& p : vxy) {
            for (const auto& b : bases)
                if (dist2(p + o, b) < kSep) {
                    ok = false;
                    break;
                }
            if (!ok) break;
        }
        for (size_t b = 0; b < bases.size() && ok; ++b)
            for (const auto& seg : fence)
                if (point_segment_dist2(bases[b], seg[0] + o, seg[1] + o) < kClear) {
                    ok = false;
                    break;
                }
        // no new point on a line through two guard points
        for (size_t a = 0; a < vxy.size() && ok; ++a) {
            Vec2 pa = vxy[a] + o;
            for (size_t b = 0; b < bases.size() && ok; ++b) {
                for (size_t c = b + 1; c < bases.size(); ++c)
                    if (triple_height(pa, bases[b], bases[c]) < kLine) {
                        ok = false;
                        break;
                    }
                for (size_t a2 = a + 1; a2 < vxy.size() && ok; ++a2)
                    if (triple_height(pa, vxy[a2] + o, bases[b]) < kLine) {
                        ok = false;
                        break;
                    }
            }
        }
        if (ok) {
            off = o;
            found = true;
        }
    }
    if (!found) fail(errc::internal, "no clear translate for the cycle fence");

    std::sort(conns.begin(), conns.end(), [](const Conn& a, const Conn& b) { return a.ci < b.ci; });
    struct Band {
        int ci, w;
        double z1, z2;
    };
    std::vector<Band> bands;
    double zc = st.z_top + kBand;
    for (const auto& c : conns) {
        double rho = dist2(vxy[c.ci] + off, xy(st.position[c.w]));
        bands.push_back({c.ci, c.w, zc, zc + rho / kSqrt3});
        zc = bands.back().z2 + kBand;
    }
    double minz = std::numeric_limits<double>::max();
    for (const auto& pl : cd.drawing.routes)
        for (const auto& p : pl) minz = std::min(minz, p.z);
    Vec3 shift{off.x, off.y, zc - minz};

    ExtensibleState ns = st;
    for (int i = 0; i < k; ++i) {
        ns.position[cyc[i]] = cd.drawing.positions[i] + shift;
        ns.placed[cyc[i]] = 1;
    }
    for (int e = 0; e < cd.drawing.graph.m(); ++e) {
        auto [a, b] = cd.drawing.graph.edges()[e];
        Polyline pl = cd.drawing.routes[e];
        for (auto& p : pl) p = p + shift;
        put_route(ns, cyc[a], cyc[b], std::move(pl));
    }
    for (const auto& bd : bands) {
        Vec3 wp = st.position[bd.w];
        Vec3 vp = ns.position[cyc[bd.ci]];
        if (!(vp.z > bd.z2)) fail(errc::internal, "cycle sits below its connector band");
        put_route(ns, bd.w, cyc[bd.ci],
                  {wp, Vec3{wp.x, wp.y, bd.z1}, Vec3{vp.x, vp.y, bd.z2}, vp});
    }
    ns.z_top = feature_z_top(ns);
    return ns;
}

ExtensibleState extend_with_vertex(const ExtensibleState& st, int v) {
    const Graph& g = st.g;
    if (v < 0 || v >= g.n()) fail(errc::bad_input, "vertex out of range");
    if (st.placed[v]) fail(errc::bad_input, "vertex already placed");
    std::vector<int> P, U;
    for (int w : g.neighbors(v)) (st.placed[w] ? P : U).push_back(w);
    if ((int)P.size() > 2)
        fail(errc::too_many_placed_neighbors, std::to_string(P.size()) + " placed neighbors");
    if ((int)U.size() > 1)
        fail(errc::too_many_unplaced_neighbors, std::to_string(U.size()) + " unplaced neighbors");

    auto rays_old = st.rays();
    std::vector<Vec2> bases;
    for (const auto& [w, p] : rays_old) bases.push_back(xy(p));

    ExtensibleState ns = st;
    if (P.empty()) {
        Vec2 center{0, 0};
        if (!bases.empty()) {
            for (const auto& b : bases) center = center + b;
            center = (1.0 / bases.size()) * center;
        }
        bool found = false;
        Vec2 at{};
        for (int t = 0; t < 4000 && !found; ++t) {
            Vec2 cand = spiral(center, t, 1.1);
            bool ok = true;
            for (const auto& b : bases)
                if (dist2(cand, b) < kSep) {
                    ok = false;
                    break;
                }
            for (size_t a = 0; a < bases.size() && ok; ++a)
                for (size_t b = a + 1; b < bases.size(); ++b)
                    if (triple_height(cand, bases[a], bases[b]) < kLine) {
                        ok = false;
                        break;
                    }
            if (ok) {
                at = cand;
                found = true;
            }
        }
        if (!found) fail(errc::internal, "no clear spot for a fresh vertex");
        ns.position[v] = {at.x, at.y, st.z_top + kBand};
    } else if (P.size() == 1) {
        int w = P[0];
        if (!rays_old.count(w)) fail(errc::invariant_broken, "neighbor has no extension ray");
        Vec3 wp = st.position[w];
        Vec3 vp{wp.x, wp.y, st.z_top + kBand};
        ns.position[v] = vp;
        put_route(ns, w, v, {wp, vp});
    } else {
        int u = P[0], w = P[1];
        if (!rays_old.count(u) || !rays_old.count(w))
            fail(errc::invariant_broken, "neighbor has no extension ray");
        Vec2 a = xy(st.position[u]), b = xy(st.position[w]);
        double rho = dist2(a, b);
        std::vector<Vec2> others;
        for (const auto& [q, p] : rays_old)
            if (q != u && q != w) others.push_back(xy(p));
        double mu = -1;
        for (int t = 0; t < 600; ++t) {
            double m = 0.25 + 0.5 * golden_frac(t);
            Vec2 cand = a + m * (b - a);
            bool ok = true;
            for (const auto& q : others)
                if (dist2(cand, q) < kSep) {
                    ok = false;
                    break;
                }
            for (size_t i = 0; i < others.size() && ok; ++i)
                for (size_t j = i + 1; j < others.size(); ++j)
                    if (triple_height(cand, others[i], others[j]) < kLine) {
                        ok = false;
                        break;
                    }
            if (ok) {
                mu = m;
                break;
            }
        }
        if (mu < 0) fail(errc::internal, "no clear station between the two rays");
        double zv = st.z_top + kBand + std::max(mu, 1 - mu) * rho / kSqrt3;
        Vec2 vx = a + mu * (b - a);
        Vec3 vp{vx.x, vx.y, zv};
        ns.position[v] = vp;
        put_route(ns, u, v, {st.position[u], Vec3{a.x, a.y, zv - mu * rho / kSqrt3}, vp});
        put_route(ns, w, v, {st.position[w], Vec3{b.x, b.y, zv - (1 - mu) * rho / kSqrt3}, vp});
    }
    ns.placed[v] = 1;
    ns.z_top = feature_z_top(ns);
    return ns;
}

ExtensibleState extend_with_triskelion(const ExtensibleState& st, int v) {
    const Graph& g = st.g;
    if (v < 0 || v >= g.n()) fail(errc::bad_input, "vertex out of range");
    if (st.placed[v]) fail(errc::bad_input, "vertex already placed");
    auto nb = g.neighbors(v);
    if ((int)nb.size() != 3) fail(errc::bad_input, "triskelion needs a degree-3 vertex");
    for (int w : nb)
        if (!st.placed[w]) fail(errc::neighbors_not_placed, "neighbor " + std::to_string(w) + " unplaced");
    auto rays_old = st.rays();
    for (int w : nb)
        if (!rays_old.count(w)) fail(errc::invariant_broken, "neighbor has no extension ray");

    // The longest projected side hosts the two in-line legs.
    int ti = 0, ui = 1;
    {
        double best = -1;
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                double L = dist2(xy(st.position[nb[a]]), xy(st.position[nb[b]]));
                if (L > best) {
                    best = L;
                    ti = a;
                    ui = b;
                }
            }
    }
    int T = nb[ti], U = nb[ui], W = nb[3 - ti - ui];
    Vec2 bt = xy(st.position[T]), bu = xy(st.position[U]), bw = xy(st.position[W]);
    double L = dist2(bt, bu);
    Vec2 dhat = (1.0 / L) * (bu - bt);
    Vec2 nhat{-dhat.y, dhat.x};
    if (dot2(nhat, bw - bt) < 0) nhat = -1.0 * nhat;
    double h = dot2(bw - bt, nhat);
    double s0 = dot2(bw - bt, dhat);
    if (h < 3 * kLine) fail(errc::invariant_broken, "triskelion bases nearly collinear");

    std::vector<Vec2> others;
    for (const auto& [q, p] : rays_old)
        if (q != T && q != U && q != W) others.push_back(xy(p));

    bool found = false;
    double s = 0, rho = 0;
    Vec2 vp2{}, vx{}, qt{}, qu{}, qw{};
    for (int t = 0; t < 600 && !found; ++t) {
        double sig = (2 * golden_frac(t) - 1) * 0.6 * h;
        double sc = s0 + sig;
        if (sc < 0.05 * L || sc > 0.95 * L) continue;
        double r = std::min(h, std::min(sc, L - sc)) / 8;
        if (r <= 1e-9) continue;
        Vec2 f = bt + sc * dhat;
        Vec2 cv = f + r * nhat;
        Vec2 cqt = f - kSqrt3 * r * dhat, cqu = f + kSqrt3 * r * dhat, cqw = f + 3 * r * nhat;
        bool ok = true;
        for (const auto& q : others) {
            if (point_segment_dist2(q, bw, cqw) < kLine || point_segment_dist2(q, cqt, cv) < kLine ||
                point_segment_dist2(q, cqu, cv) < kLine || point_segment_dist2(q, cv, cqw) < kLine) {
                ok = false;
                break;
            }
        }
        if (ok) {
            found = true;
            s = sc;
            rho = r;
            vp2 = f;
            vx = cv;
            qt = cqt;
            qu = cqu;
            qw = cqw;
        }
    }
    if (!found) fail(errc::internal, "no clear slide for the triskelion");
    (void)s;
    (void)vp2;

    double rho_t = dist2(bt, qt), rho_u = dist2(bu, qu), rho_w = dist2(bw, qw);
    // Keep the plane joint at the third leg inside the 120-degree budget.
    double drop = h - 3 * rho;
    if (!(-(kSqrt3 / 2) * (drop / rho_w) <= -0.5 + 1e-9))
        fail(errc::internal, "third leg tilted past the joint budget");

    double zv = st.z_top + kBand + std::max({rho_t, rho_u, rho_w}) / kSqrt3;
    Vec3 v3{vx.x, vx.y, zv};
    ExtensibleState ns = st;
    ns.position[v] = v3;
    ns.placed[v] = 1;
    auto leg = [&](int base, const Vec2& b2, const Vec2& q2, double r2) {
        put_route(ns, base, v,
                  {st.position[base], Vec3{b2.x, b2.y, zv - r2 / kSqrt3}, Vec3{q2.x, q2.y, zv}, v3});
    };
    leg(T, bt, qt, rho_t);
    leg(U, bu, qu, rho_u);
    leg(W, bw, qw, rho_w);
    ns.z_top = feature_z_top(ns);
    return ns;
}

Drawing draw_k4() {
    Graph g(4);
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) g.add_edge(a, b);
    Drawing d;
    d.graph = g;
    d.repr = Repr::real;
    d.algorithm = "k4-catalogue";
    d.positions = {{2, 2, 2}, {2, -2, -2}, {-2, 2, -2}, {-2, -2, 2}};
    // Vertex fans are exact 120-degree triples in the planes perpendicular to
    // the body diagonals; middle segments run along face diagonals, so every
    // bend joint is arccos(-1/sqrt 3), about 125.26 degrees.
    d.routes = {
        {{2, 2, 2}, {4, 1, 1}, {4, -1, -1}, {2, -2, -2}},
        {{2, 2, 2}, {1, 4, 1}, {-1, 4, -1}, {-2, 2, -2}},
        {{2, 2, 2}, {1, 1, 4}, {-1, -1, 4}, {-2, -2, 2}},
        {{2, -2, -2}, {1, -1, -4}, {-1, 1, -4}, {-2, 2, -2}},
        {{2, -2, -2}, {1, -4, -1}, {-1, -4, 1}, {-2, -2, 2}},
        {{-2, 2, -2}, {-4, 1, -1}, {-4, -1, 1}, {-2, -2, 2}},
    };
    return d;
}

Drawing layout_deg3_two_bend(const Graph& g0) {
    validate(g0, 3);
    Drawing out;
    if (g0.n() == 0) {
        out.graph = g0;
        out.repr = Repr::real;
        out.algorithm = "deg3-freeform";
        return out;
    }

    auto [gr, log] = delta_y_reduce(g0);
    int cc = 0;
    auto comp = connected_components(gr, &cc);
    std::vector<char> in_k4(gr.n(), 0);
    std::vector<std::vector<int>> k4comps;
    for (int c = 0; c < cc; ++c) {
        auto verts = component_vertices(gr, comp, c);
        if (verts.size() != 4) continue;
        int inner = 0;
        for (size_t a = 0; a < 4; ++a)
            for (size_t b = a + 1; b < 4; ++b) inner += gr.has_edge(verts[a], verts[b]);
        if (inner == 6) {
            k4comps.push_back(verts);
            for (int v : verts) in_k4[v] = 1;
        }
    }

    ExtensibleState st = make_state(gr);
    std::vector<int> rest;
    for (int v = 0; v < gr.n(); ++v)
        if (!in_k4[v]) rest.push_back(v);
    if (!rest.empty()) {
        Graph H = induced_subgraph(gr, rest);
        for (const auto& step : peel_order(H)) {
            if (step.kind == PeelStep::Kind::add_cycle) {
                std::vector<int> cyc;
                for (int x : step.cycle) cyc.push_back(rest[x]);
                st = extend_with_cycle(st, cyc);
            } else {
                int v = rest[step.vertex];
                int placed_nbrs = 0;
                for (int w : gr.neighbors(v)) placed_nbrs += st.placed[w];
                st = placed_nbrs == 3 ? extend_with_triskelion(st, v) : extend_with_vertex(st, v);
            }
            check_extensible(st);
        }
    }

    // Catalogue K4 components, strung out beyond everything in +x.
    double ox = 0;
    {
        bool any = false;
        for (int v = 0; v < gr.n(); ++v)
            if (st.placed[v]) {
                ox = std::max(ox, st.position[v].x);
                any = true;
            }
        for (const auto& pl : st.route)
            for (const auto& p : pl) ox = std::max(ox, p.x);
        if (any) ox += 8;
    }
    for (const auto& verts : k4comps) {
        Drawing kd = draw_k4();
        Vec3 shift{ox + 4, 0, 0};
        for (int i = 0; i < 4; ++i) {
            st.position[verts[i]] = kd.positions[i] + shift;
            st.placed[verts[i]] = 1;
        }
        for (int e = 0; e < kd.graph.m(); ++e) {
            auto [a, b] = kd.graph.edges()[e];
            Polyline pl = kd.routes[e];
            for (auto& p : pl) p = p + shift;
            put_route(st, verts[a], verts[b], std::move(pl));
        }
        ox += 16;
    }
    st.z_top = feature_z_top(st);
    check_extensible(st);

    Drawing reduced;
    reduced.graph = gr;
    reduced.positions = st.position;
    reduced.routes = st.route;
    reduced.repr = Repr::real;
    reduced.algorithm = "deg3-freeform";
    for (const auto& pl : reduced.routes)
        if (pl.empty()) fail(errc::internal, "vertex left undrawn by the peel");

    out = log.records.empty() ? reduced : expand_delta_y(reduced, log);
    out.algorithm = "deg3-freeform";
    out.repr = Repr::real;
    out.frame = FrameTag::cartesian;
    out.n_augmented = -1;

    auto rep = verify(out, Profile::freeform120());
    if (!rep.pass) fail(errc::internal, "constructed drawing rejected: " + rep.text());
    return out;
}

}  // namespace ar3d
