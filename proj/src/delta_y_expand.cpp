#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "ar3d/error.hpp"
#include "ar3d/layout_deg3_freeform.hpp"

namespace ar3d {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

Vec3 unit(const Vec3& v) {
    double n = norm(v);
    if (n == 0) fail(errc::zero_vector, "direction of zero length");
    return v / n;
}

Vec3 any_perp(const Vec3& d) {
    double ax = std::abs(d.x), ay = std::abs(d.y), az = std::abs(d.z);
    Vec3 e = (ax <= ay && ax <= az) ? Vec3{1, 0, 0} : (ay <= az ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
    return unit(cross(d, e));
}

// Shortest distance between two closed segments.
double segment_distance(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2) {
    Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
    double a = dot(d1, d1), e = dot(d2, d2), f = dot(d2, r);
    double s = 0, t = 0;
    if (a > 1e-18 && e > 1e-18) {
        double c = dot(d1, r), b = dot(d1, d2);
        double denom = a * e - b * b;
        if (denom > 1e-18) s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
        t = (b * s + f) / e;
        if (t < 0) {
            t = 0;
            s = std::clamp(-c / a, 0.0, 1.0);
        } else if (t > 1) {
            t = 1;
            s = std::clamp((b - c) / a, 0.0, 1.0);
        }
    } else if (a > 1e-18) {
        s = std::clamp(-dot(d1, r) / a, 0.0, 1.0);
    } else if (e > 1e-18) {
        t = std::clamp(f / e, 0.0, 1.0);
    }
    return norm((p1 + s * d1) - (p2 + t * d2));
}

// Two-bend route A -> P1 -> P2 -> B leaving A along ahat and arriving at B
// travelling along ghat, so the fan slots at both ends are met exactly. Both
// bend turns stay at least min_margin (in cosine) inside the 60 degree
// budget, which keeps the bend joints strictly above 120 degrees.
struct TwoBend {
    Vec3 P1, P2;
    double margin = -1;
    bool ok = false;
};

TwoBend solve_two_bend(const Vec3& A, const Vec3& ahat, const Vec3& B, const Vec3& ghat,
                       double min_margin, double min_bend_y) {
    TwoBend best;
    for (int it = 0; it < 24; ++it)
        for (int iu = 0; iu < 24; ++iu) {
            double t = 0.05 * std::pow(1.3, it);
            double u = 0.05 * std::pow(1.3, iu);
            Vec3 P1 = A + t * ahat, P2 = B - u * ghat;
            Vec3 mid = P2 - P1;
            double s = norm(mid);
            if (s < 0.05) continue;
            Vec3 mh = mid / s;
            double mg = std::min(dot(ahat, mh), dot(mh, ghat)) - 0.5;
            if (mg < min_margin) continue;
            if (P1.y < min_bend_y || P2.y < min_bend_y) continue;
            if (!best.ok || mg > best.margin) {
                best.P1 = P1;
                best.P2 = P2;
                best.margin = mg;
                best.ok = true;
            }
        }
    return best;
}

// Small triangle / diamond replacement figure around one undone contraction,
// in world coordinates. Inner routes are keyed by member-slot pairs i < j
// and oriented i -> j.
struct Figure {
    std::vector<Vec3> member_pos;
    std::map<std::pair<int, int>, Polyline> inner;
};

struct OuterEdge {
    int slot;        // member slot owning this boundary edge
    Vec3 dir;        // unit direction of the old first segment, away from y
    double len;      // length of that segment
};

// ---- triangle cases ----------------------------------------------------

Figure hexagon_figure(const Vec3& y, const std::array<Vec3, 3>& radial, double r) {
    Figure f;
    f.member_pos = {y + r * radial[0], y + r * radial[1], y + r * radial[2]};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            int k = 3 - i - j;
            f.inner[{i, j}] = {f.member_pos[i], y - r * radial[k], f.member_pos[j]};
        }
    return f;
}

// Mirror-symmetric heptagon for a degree-2 merged vertex whose outer edges
// open wider than 120 degrees. Slots a and b carry the outer edges, slot c
// closes the figure; the a-b edge takes two bends, the others one each.
Figure heptagon_figure(const Vec3& y, int sa, int sb, int sc, const Vec3& da, const Vec3& db,
                       double scale) {
    double cosb = std::clamp(dot(da, db), -1.0, 1.0);
    double beta2 = 0.5 * std::acos(cosb);  // in (60, 90] degrees
    Vec3 mhat, phat;
    Vec3 sum = da + db;
    if (norm(sum) < 1e-6) {
        mhat = any_perp(da);
        phat = da;
    } else {
        mhat = unit(sum);
        phat = unit(da - dot(da, mhat) * mhat);
    }
    if (norm(db - (std::cos(beta2) * mhat - std::sin(beta2) * phat)) > 1e-6)
        fail(errc::internal, "outer pair does not split symmetrically");

    // Walk angles in the (mhat, phat) plane; turns at the three left corners
    // are equal, which keeps every interior angle at or above 120 degrees.
    double tau = (5.0 * 3.14159265358979323846 / 3.0 - 2 * beta2) / 3.0;
    double s1 = beta2 + 2 * 3.14159265358979323846 / 3.0;
    double s2 = s1 + tau, s3 = s2 + tau, s4 = s3 + tau;
    double s5 = 2 * 3.14159265358979323846 / 3.0 - beta2;
    double s6 = 3.14159265358979323846 / 2.0;
    double s7 = beta2 + 3.14159265358979323846 / 3.0;

    double A = -2 * std::sin(beta2) / (std::sin(s1) + std::sin(s2) + std::sin(s3) + std::sin(s4));
    double C = 2 * std::sin(beta2) / (std::sin(s5) + std::sin(s7) + 1.0);
    if (!(A > 0) || !(C > 0)) fail(errc::internal, "heptagon side lengths collapsed");

    struct P2 {
        double x, y;
    };
    auto step = [](P2 p, double ang, double len) { return P2{p.x + len * std::cos(ang), p.y + len * std::sin(ang)}; };
    P2 t1{std::cos(beta2), std::sin(beta2)};
    P2 t2{std::cos(beta2), -std::sin(beta2)};
    P2 ba = step(t1, s1, A);
    P2 t3 = step(ba, s2, A);
    P2 bb = step(t3, s3, A);
    P2 t2c = step(bb, s4, A);
    if (std::hypot(t2c.x - t2.x, t2c.y - t2.y) > 1e-9) fail(errc::internal, "heptagon left walk misses");
    P2 bc = step(t2, s5, C);
    P2 bd = step(bc, s6, C);
    P2 t1c = step(bd, s7, C);
    if (std::hypot(t1c.x - t1.x, t1c.y - t1.y) > 1e-9) fail(errc::internal, "heptagon closure residual");

    auto world = [&](P2 p) { return y + scale * (p.x * mhat + p.y * phat); };
    Figure f;
    f.member_pos.assign(3, {});
    f.member_pos[sa] = world(t1);
    f.member_pos[sb] = world(t2);
    f.member_pos[sc] = world(t3);
    auto orient = [&](int i, int j, Polyline pl) {
        if (i > j) {
            std::swap(i, j);
            std::reverse(pl.begin(), pl.end());
        }
        f.inner[{i, j}] = std::move(pl);
    };
    orient(sa, sc, {world(t1), world(ba), world(t3)});
    orient(sc, sb, {world(t3), world(bb), world(t2)});
    orient(sb, sa, {world(t2), world(bc), world(bd), world(t1)});
    return f;
}

// ---- diamond fold ------------------------------------------------------

Vec3 mirror_y(const Vec3& p) { return {p.x, -p.y, p.z}; }

// Local solution of the 4-set expansion at unit scale (|vw| = 1): centers
// v, w stacked on the z axis in the mirror plane, tip c at radius rc on the
// outer ray, every vertex fan exactly 120 degrees. The center-to-tip routes
// take two bends each; a single bend cannot reach the tip fan without the
// joint collapsing below 120 degrees. The d-side is the y -> -y mirror.
struct DiamondLocal {
    Vec3 v, w, c;
    Vec3 vP1, vP2;  // bends of the v -> c route
    Vec3 wP1, wP2;  // bends of the w -> c route
    double rc = 0;
};

bool solve_diamond(double beta2, DiamondLocal& out) {
    const double pi = 3.14159265358979323846;
    Vec3 d1{std::cos(beta2), std::sin(beta2), 0};
    Vec3 g1{-std::sin(beta2), std::cos(beta2), 0};
    Vec3 v{0, 0, 0.5}, w{0, 0, -0.5};
    Vec3 ac{0, kSqrt3 / 2, 0.5}, bc{0, kSqrt3 / 2, -0.5};
    for (int ic = 0; ic < 48; ++ic) {
        // fan azimuth at the tip; the scan covers the half turn that points
        // the incoming routes back toward the centers
        double chi = -pi / 2 + pi * (ic + 0.5) / 48;
        Vec3 e = std::cos(chi) * Vec3{0, 0, 1} + std::sin(chi) * g1;
        Vec3 c1 = -0.5 * d1 + (kSqrt3 / 2) * e;
        Vec3 c2 = -0.5 * d1 - (kSqrt3 / 2) * e;
        for (double rc : {0.6, 0.8, 1.0, 1.3}) {
            Vec3 c = rc * d1;
            TwoBend rv = solve_two_bend(v, ac, c, -c1, 0.02, 0.02);
            if (!rv.ok) continue;
            TwoBend rw = solve_two_bend(w, bc, c, -c2, 0.02, 0.02);
            if (!rw.ok) continue;
            // internal clearance: the two c-routes against each other, the
            // spine, and the mirror-image d-side
            double cl = std::numeric_limits<double>::max();
            auto upd = [&](double d) { cl = std::min(cl, d); };
            upd(segment_distance(v, rv.P1, w, rw.P1));
            upd(segment_distance(v, rv.P1, rw.P1, rw.P2));
            upd(segment_distance(rv.P1, rv.P2, w, rw.P1));
            upd(segment_distance(rv.P1, rv.P2, rw.P1, rw.P2));
            upd(segment_distance(rv.P1, rv.P2, v, w));
            upd(segment_distance(rw.P1, rw.P2, v, w));
            upd(segment_distance(rv.P1, rv.P2, mirror_y(rw.P1), mirror_y(rw.P2)));
            upd(segment_distance(rv.P2, c, mirror_y(rv.P2), mirror_y(c)));
            upd(segment_distance(rv.P2, c, mirror_y(rw.P2), mirror_y(c)));
            upd(segment_distance(rw.P2, c, mirror_y(rv.P2), mirror_y(c)));
            if (cl < 0.05) continue;
            out.v = v;
            out.w = w;
            out.c = c;
            out.vP1 = rv.P1;
            out.vP2 = rv.P2;
            out.wP1 = rw.P1;
            out.wP2 = rw.P2;
            out.rc = rc;
            return true;
        }
    }
    return false;
}

// ---- record dispatch ---------------------------------------------------

struct Frame3 {
    Vec3 ex, ey, ez;
    Vec3 origin;
    double scale = 1;
    Vec3 operator()(const Vec3& p) const { return origin + scale * (p.x * ex + p.y * ey + p.z * ez); }
};

// Orthonormal frame whose x-y plane splits the two outer directions
// symmetrically about ex.
Frame3 bisector_frame(const Vec3& y, const Vec3& da, const Vec3& db, double scale) {
    Frame3 F;
    Vec3 sum = da + db;
    if (norm(sum) < 1e-6) {
        F.ex = any_perp(da);
        F.ey = da;
    } else {
        F.ex = unit(sum);
        F.ey = unit(da - dot(da, F.ex) * F.ex);
    }
    F.ez = cross(F.ex, F.ey);
    F.origin = y;
    F.scale = scale;
    return F;
}

double clearance_at(const Drawing& d, int y) {
    Vec3 yp = d.positions[y];
    double best = std::numeric_limits<double>::max();
    for (int v = 0; v < d.graph.n(); ++v)
        if (v != y) best = std::min(best, norm(d.positions[v] - yp));
    for (int e = 0; e < d.graph.m(); ++e) {
        auto [a, b] = d.graph.edges()[e];
        const Polyline& pl = d.routes[e];
        for (size_t t = 0; t + 1 < pl.size(); ++t) {
            bool first_at_y = (a == y && t == 0) || (b == y && t + 2 == pl.size());
            if (first_at_y) continue;
            best = std::min(best, point_segment_distance(yp, pl[t], pl[t + 1]));
        }
    }
    if (best == std::numeric_limits<double>::max()) best = 1.0;
    if (best <= 1e-9) fail(errc::internal, "no clearance around the merged vertex");
    return best;
}

Drawing expand_one(const Drawing& cur, const DeltaYRecord& rec) {
    int n_old = (int)rec.relabel.size();
    int removed = (int)rec.members.size() - 1;
    int n_new = n_old - removed;
    if (cur.graph.n() != n_new) fail(errc::log_mismatch, "vertex count does not match the record");
    if (rec.members.size() < 3 || rec.members.size() > 5) fail(errc::log_mismatch, "member count");
    if (!std::is_sorted(rec.members.begin(), rec.members.end())) fail(errc::log_mismatch, "members unsorted");

    std::vector<int> inv(n_new, -1);
    for (int old = 0; old < n_old; ++old) {
        int nn = rec.relabel[old];
        if (nn < 0) continue;
        if (nn >= n_new || inv[nn] != -1) fail(errc::log_mismatch, "relabel table malformed");
        inv[nn] = old;
    }
    for (int i = 0; i < n_new; ++i)
        if (inv[i] < 0) fail(errc::log_mismatch, "relabel table not onto");
    for (int i = 0; i + 1 < n_new; ++i)
        if (inv[i] >= inv[i + 1]) fail(errc::log_mismatch, "relabel not monotone");

    std::vector<int> slot_of(n_old, -1);
    for (size_t i = 0; i < rec.members.size(); ++i) {
        int m = rec.members[i];
        if (m < 0 || m >= n_old) fail(errc::log_mismatch, "member out of range");
        if (slot_of[m] >= 0) fail(errc::log_mismatch, "repeated member");
        slot_of[m] = (int)i;
    }
    int y = rec.relabel[rec.members[0]];
    if (y < 0 || y >= n_new) fail(errc::log_mismatch, "merged vertex has no slot");
    for (size_t i = 1; i < rec.members.size(); ++i)
        if (rec.relabel[rec.members[i]] != -1) fail(errc::log_mismatch, "absorbed member still labeled");

    int S = (int)rec.members.size();
    std::vector<int> ideg(S, 0);
    std::set<std::pair<int, int>> iset;
    for (auto [a, b] : rec.induced_edges) {
        if (a < 0 || a >= n_old || b < 0 || b >= n_old || slot_of[a] < 0 || slot_of[b] < 0)
            fail(errc::log_mismatch, "induced edge outside the member set");
        int sa = slot_of[a], sb = slot_of[b];
        if (!iset.insert({std::min(sa, sb), std::max(sa, sb)}).second)
            fail(errc::log_mismatch, "repeated induced edge");
        ++ideg[sa];
        ++ideg[sb];
    }
    auto inner_edge = [&](int sa, int sb) {
        return iset.count({std::min(sa, sb), std::max(sa, sb)}) != 0;
    };

    if (cur.graph.degree(y) != (int)rec.boundary.size())
        fail(errc::log_mismatch, "merged degree differs from the boundary list");
    struct Outer {
        int slot;
        int o_old, o_new;
        Polyline from_y;  // oriented y first
        Vec3 dir;
        double len;
    };
    std::vector<Outer> outer;
    {
        std::set<int> seen;
        for (auto [m, o] : rec.boundary) {
            if (slot_of[m] < 0) fail(errc::log_mismatch, "boundary member not in the set");
            if (o < 0 || o >= n_old || slot_of[o] >= 0) fail(errc::log_mismatch, "boundary target inside the set");
            if (!seen.insert(o).second) fail(errc::log_mismatch, "repeated boundary target");
            int on = rec.relabel[o];
            int e = on < 0 ? -1 : cur.graph.edge_index(std::min(y, on), std::max(y, on));
            if (e < 0) fail(errc::log_mismatch, "boundary edge absent from the drawing");
            Polyline py = cur.routes[e];
            if (y != std::min(y, on)) std::reverse(py.begin(), py.end());
            Outer ot;
            ot.slot = slot_of[m];
            ot.o_old = o;
            ot.o_new = on;
            ot.dir = unit(py[1] - py[0]);
            ot.len = norm(py[1] - py[0]);
            ot.from_y = std::move(py);
            outer.push_back(ot);
        }
    }

    Vec3 ypos = cur.positions.empty() ? Vec3{} : cur.positions[y];
    Figure fig;

    if (S == 4 && rec.induced_edges.size() == 6) {
        // a component that became K4 mid-way; the merged vertex is isolated
        if (!outer.empty()) fail(errc::log_mismatch, "contracted K4 with boundary edges");
        Drawing kd = draw_k4();
        Box3 bb = bounding_box(cur);
        double margin = 5 + 0.05 * (bb.hi.x - bb.lo.x);
        Vec3 shift{bb.hi.x + margin + 4, 0, 0};
        fig.member_pos.resize(4);
        for (int i = 0; i < 4; ++i) fig.member_pos[i] = kd.positions[i] + shift;
        for (int e = 0; e < kd.graph.m(); ++e) {
            auto [a, b] = kd.graph.edges()[e];
            Polyline pl = kd.routes[e];
            for (auto& p : pl) p = p + shift;
            fig.inner[{a, b}] = std::move(pl);
        }
    } else if (S == 3) {
        if (rec.induced_edges.size() != 3) fail(errc::log_mismatch, "triangle record without its edges");
        double clear = clearance_at(cur, y);
        double min_len = std::numeric_limits<double>::max();
        for (const auto& ot : outer) min_len = std::min(min_len, ot.len);
        int deg = (int)outer.size();

        std::array<Vec3, 3> radial;
        std::array<bool, 3> fixed{false, false, false};
        for (const auto& ot : outer) {
            radial[ot.slot] = ot.dir;
            fixed[ot.slot] = true;
        }
        bool heptagon = false;
        if (deg == 2 && outer[0].slot == outer[1].slot)
            fail(errc::log_mismatch, "two boundary edges on one triangle corner");
        if (deg == 2) {
            double c = dot(outer[0].dir, outer[1].dir);
            if (std::abs(c + 0.5) <= 1e-9) {
                for (int s = 0; s < 3; ++s)
                    if (!fixed[s]) radial[s] = unit(-(outer[0].dir + outer[1].dir));
            } else if (c < -0.5) {
                heptagon = true;
            } else {
                fail(errc::invariant_broken, "merged vertex fan below 120 degrees");
            }
        } else if (deg == 3) {
            for (int a = 0; a < 3; ++a)
                for (int b = a + 1; b < 3; ++b)
                    if (std::abs(dot(radial[a], radial[b]) + 0.5) > 1e-6)
                        fail(errc::invariant_broken, "degree-3 fan not an exact 120 triple");
        } else {
            Vec3 d0 = deg == 1 ? outer[0].dir : Vec3{1, 0, 0};
            Vec3 e = any_perp(d0);
            std::vector<Vec3> synth = {-0.5 * d0 + (kSqrt3 / 2) * e, -0.5 * d0 - (kSqrt3 / 2) * e};
            if (deg == 0) synth.insert(synth.begin(), d0);
            size_t used = 0;
            for (int s = 0; s < 3; ++s)
                if (!fixed[s]) radial[s] = synth[used++];
        }

        if (heptagon) {
            int sa = outer[0].slot, sb = outer[1].slot;
            int sc = 3 - sa - sb;
            // unit corners sit at radius 1; measure the real extent first
            Figure probe = heptagon_figure(Vec3{0, 0, 0}, sa, sb, sc, outer[0].dir, outer[1].dir, 1.0);
            double rho = 1;
            for (const auto& [k, pl] : probe.inner)
                for (const auto& p : pl) rho = std::max(rho, norm(p));
            double scale = std::min(0.45 * clear / rho, 0.45 * min_len);
            fig = heptagon_figure(ypos, sa, sb, sc, outer[0].dir, outer[1].dir, scale);
        } else {
            double r = 0.45 * clear;
            if (deg > 0) r = std::min(r, 0.45 * min_len);
            fig = hexagon_figure(ypos, radial, r);
        }
    } else if (S == 4 && rec.induced_edges.size() == 5) {
        // diamond: two centers of induced degree 3 and two tips of degree 2
        std::vector<int> centers, tips;
        for (int s = 0; s < 4; ++s) (ideg[s] == 3 ? centers : tips).push_back(s);
        if (centers.size() != 2 || tips.size() != 2 || ideg[tips[0]] != 2 || ideg[tips[1]] != 2)
            fail(errc::log_mismatch, "diamond record with the wrong inner degrees");
        if (!inner_edge(centers[0], centers[1])) fail(errc::log_mismatch, "diamond centers not adjacent");
        for (const auto& ot : outer)
            if (ot.slot != tips[0] && ot.slot != tips[1])
                fail(errc::log_mismatch, "diamond boundary away from the tips");
        if (outer.size() > 2) fail(errc::log_mismatch, "diamond with too many boundary edges");
        if (outer.size() == 2 && outer[0].slot == outer[1].slot)
            fail(errc::log_mismatch, "two boundary edges on one diamond tip");

        int sc = outer.empty() ? tips[0] : outer[0].slot;
        int sd = sc == tips[0] ? tips[1] : tips[0];
        Vec3 d1 = outer.empty() ? Vec3{1, 0, 0} : outer[0].dir;
        Vec3 d2;
        const Outer* od = nullptr;
        for (const auto& ot : outer)
            if (ot.slot == sd) od = &ot;
        if (od) {
            d2 = od->dir;
        } else {
            Vec3 b = any_perp(d1);
            d2 = -(kSqrt3 / 2) * d1 + 0.5 * b;  // virtual partner at 150 degrees
        }
        double cosb = std::clamp(dot(d1, d2), -1.0, 1.0);
        if (cosb > -0.5 + 1e-9) fail(errc::invariant_broken, "tip fan below 120 degrees");
        double beta2 = 0.5 * std::acos(cosb);

        DiamondLocal loc;
        if (!solve_diamond(beta2, loc)) fail(errc::internal, "diamond fold solve failed");

        double clear = clearance_at(cur, y);
        double min_len = std::numeric_limits<double>::max();
        for (const auto& ot : outer) min_len = std::min(min_len, ot.len);
        double rho = 0;
        for (const Vec3& p : {loc.v, loc.w, loc.c, loc.vP1, loc.vP2, loc.wP1, loc.wP2})
            rho = std::max(rho, norm(p));
        double scale = 0.45 * clear / rho;
        if (!outer.empty()) scale = std::min(scale, 0.45 * min_len / loc.rc);

        Frame3 F = bisector_frame(ypos, d1, d2, scale);
        if (od && norm(std::cos(beta2) * F.ex - std::sin(beta2) * F.ey - d2) > 1e-6)
            fail(errc::internal, "outer pair does not split symmetrically");
        int sv = centers[0], sw = centers[1];
        fig.member_pos.resize(4);
        fig.member_pos[sv] = F(loc.v);
        fig.member_pos[sw] = F(loc.w);
        fig.member_pos[sc] = F(loc.c);
        fig.member_pos[sd] = F(mirror_y(loc.c));
        auto orient = [&](int i, int j, Polyline pl) {
            if (i > j) {
                std::swap(i, j);
                std::reverse(pl.begin(), pl.end());
            }
            fig.inner[{i, j}] = std::move(pl);
        };
        orient(sv, sw, {F(loc.v), F(loc.w)});
        orient(sv, sc, {F(loc.v), F(loc.vP1), F(loc.vP2), F(loc.c)});
        orient(sw, sc, {F(loc.w), F(loc.wP1), F(loc.wP2), F(loc.c)});
        orient(sv, sd, {F(loc.v), F(mirror_y(loc.vP1)), F(mirror_y(loc.vP2)), F(mirror_y(loc.c))});
        orient(sw, sd, {F(loc.w), F(mirror_y(loc.wP1)), F(mirror_y(loc.wP2)), F(mirror_y(loc.c))});
    } else if (S == 5 && rec.induced_edges.size() == 7) {
        // diamond whose tips shared an outside neighbor e; e joined the set
        std::vector<int> d2s, d3s;
        for (int s = 0; s < 5; ++s) {
            if (ideg[s] == 2)
                d2s.push_back(s);
            else if (ideg[s] == 3)
                d3s.push_back(s);
            else
                fail(errc::log_mismatch, "five-set inner degrees");
        }
        if (d2s.size() != 1 || d3s.size() != 4) fail(errc::log_mismatch, "five-set inner degrees");
        int se = d2s[0];
        std::vector<int> tips, centers;
        for (int s : d3s) (inner_edge(s, se) ? tips : centers).push_back(s);
        if (tips.size() != 2 || centers.size() != 2 || !inner_edge(centers[0], centers[1]) ||
            inner_edge(tips[0], tips[1]))
            fail(errc::log_mismatch, "five-set shape is not a spliced diamond");
        for (int t : tips)
            for (int c : centers)
                if (!inner_edge(t, c)) fail(errc::log_mismatch, "five-set tip/center adjacency");
        for (const auto& ot : outer)
            if (ot.slot != se) fail(errc::log_mismatch, "five-set boundary away from the splice vertex");
        if (outer.size() > 1) fail(errc::log_mismatch, "five-set with two boundary edges");

        // Mirror-symmetric core with centers v, w on the z axis and tips on
        // either side of the mirror plane; the tips' free fan slots are
        // steered toward the splice vertex e, which floats with a fan of its
        // own. Every route between the set members other than v-w takes two
        // bends. Deterministic scan, first clear configuration wins.
        const double pi = 3.14159265358979323846;
        Vec3 v{0, 0, 0.5}, w{0, 0, -0.5};
        Vec3 a1{0, kSqrt3 / 2, 0.5}, b1{0, kSqrt3 / 2, -0.5};

        std::vector<Vec3> sph;
        for (int ip = 0; ip < 8; ++ip)
            for (int ia = 0; ia < 12; ++ia) {
                double th = pi * (ip + 0.5) / 8, ph = 2 * pi * ia / 12;
                sph.push_back({std::sin(th) * std::cos(ph), std::cos(th), std::sin(th) * std::sin(ph)});
            }

        struct SpliceSol {
            Vec3 c, uc, e, dout;
            TwoBend rv, rw, legc, legd;
            bool ok = false;
        };
        auto find_splice = [&]() -> SpliceSol {
            for (double xc : {0.3, 0.6})
                for (double yc : {0.85, 1.2})
                    for (double zc : {0.0, 0.25}) {
                        Vec3 c{xc, yc, zc}, dpos = mirror_y(c);
                        for (const Vec3& uc : sph) {
                            if (std::abs(uc.y) > 0.95) continue;
                            Vec3 ref = unit(cross(uc, Vec3{0, 1, 0}));
                            Vec3 ref2 = cross(uc, ref);
                            for (int ie = 0; ie < 12; ++ie) {
                                double ph = 2 * pi * ie / 12;
                                Vec3 ec = std::cos(ph) * ref + std::sin(ph) * ref2;
                                Vec3 c1 = -0.5 * uc + (kSqrt3 / 2) * ec;
                                Vec3 c2 = -0.5 * uc - (kSqrt3 / 2) * ec;
                                if (dot(a1, c1) > 0.45 || dot(b1, c2) > 0.45) continue;
                                TwoBend rv = solve_two_bend(v, a1, c, -c1, 0.02, -1e9);
                                if (!rv.ok) continue;
                                TwoBend rw = solve_two_bend(w, b1, c, -c2, 0.02, -1e9);
                                if (!rw.ok) continue;
                                Vec3 ud = mirror_y(uc);
                                for (const Vec3& jc : sph) {
                                    if (dot(uc, jc) > 0.42) continue;
                                    Vec3 rf = unit(cross(jc, std::abs(jc.y) > 0.9 ? Vec3{1, 0, 0}
                                                                                  : Vec3{0, 1, 0}));
                                    Vec3 rf2 = cross(jc, rf);
                                    for (int ps = 0; ps < 8; ++ps) {
                                        double psi = 2 * pi * ps / 8;
                                        Vec3 dout = -0.5 * jc +
                                                    (kSqrt3 / 2) * (std::cos(psi) * rf + std::sin(psi) * rf2);
                                        Vec3 jd = -dout - jc;
                                        if (dot(ud, jd) > 0.42) continue;
                                        for (double xe : {1.0, 1.6, 2.3})
                                            for (double ye : {-0.8, 0.0, 0.8})
                                                for (double ze : {-0.8, 0.0, 0.8}) {
                                                    Vec3 e{xe, ye, ze};
                                                    if (norm(e - c) < 0.5 || norm(e - dpos) < 0.5) continue;
                                                    TwoBend lc = solve_two_bend(c, uc, e, -jc, 0.02, -1e9);
                                                    if (!lc.ok) continue;
                                                    TwoBend ld = solve_two_bend(dpos, ud, e, -jd, 0.02, -1e9);
                                                    if (!ld.ok) continue;
                                                    std::vector<Polyline> R = {
                                                        {v, rv.P1, rv.P2, c},
                                                        {w, rw.P1, rw.P2, c},
                                                        {v, mirror_y(rv.P1), mirror_y(rv.P2), dpos},
                                                        {w, mirror_y(rw.P1), mirror_y(rw.P2), dpos},
                                                        {c, lc.P1, lc.P2, e},
                                                        {dpos, ld.P1, ld.P2, e},
                                                        {v, w},
                                                        {e, e + 1.2 * dout}};
                                                    double cl = std::numeric_limits<double>::max();
                                                    for (size_t r1 = 0; r1 < R.size(); ++r1)
                                                        for (size_t r2 = r1 + 1; r2 < R.size(); ++r2)
                                                            for (size_t i = 0; i + 1 < R[r1].size(); ++i)
                                                                for (size_t j = 0; j + 1 < R[r2].size();
                                                                     ++j) {
                                                                    bool shared = false;
                                                                    for (const Vec3& p :
                                                                         {R[r1][i], R[r1][i + 1]})
                                                                        for (const Vec3& q :
                                                                             {R[r2][j], R[r2][j + 1]})
                                                                            if (norm(p - q) < 1e-12)
                                                                                shared = true;
                                                                    if (shared) continue;
                                                                    cl = std::min(
                                                                        cl, segment_distance(
                                                                                R[r1][i], R[r1][i + 1],
                                                                                R[r2][j], R[r2][j + 1]));
                                                                }
                                                    if (cl < 0.05) continue;
                                                    return {c, uc, e, dout, rv, rw, lc, ld, true};
                                                }
                                    }
                                }
                            }
                        }
                    }
            return {};
        };
        SpliceSol sol = find_splice();
        if (!sol.ok) fail(errc::internal, "five-set splice solve failed");
        Vec3 dpos = mirror_y(sol.c);

        double clear = clearance_at(cur, y);
        double rho = 0;
        for (const Vec3& p :
             {v, w, sol.c, dpos, sol.rv.P1, sol.rv.P2, mirror_y(sol.rv.P1), mirror_y(sol.rv.P2),
              sol.rw.P1, sol.rw.P2, mirror_y(sol.rw.P1), mirror_y(sol.rw.P2), sol.legc.P1, sol.legc.P2,
              sol.legd.P1, sol.legd.P2})
            rho = std::max(rho, norm(p - sol.e));

        // rotate the splice's outer slot onto the real outer direction and
        // translate so e lands on the old first segment
        Vec3 dreal = outer.empty() ? Vec3{1, 0, 0} : outer[0].dir;
        Vec3 lu2 = any_perp(sol.dout), lu3 = cross(sol.dout, lu2);
        Vec3 w2 = any_perp(dreal), w3 = cross(dreal, w2);
        double scale = 0.25 * clear / rho;
        double att = outer.empty() ? 0.2 * clear : std::min(0.45 * outer[0].len, 0.2 * clear);
        Vec3 origin = ypos + att * dreal;
        auto W = [&](const Vec3& p) {
            Vec3 q = p - sol.e;
            return origin + scale * (dot(q, sol.dout) * dreal + dot(q, lu2) * w2 + dot(q, lu3) * w3);
        };

        fig.member_pos.resize(5);
        int sv = centers[0], sw = centers[1];
        // tips: boundary-free; deterministic assignment
        int sc = tips[0], sd = tips[1];
        fig.member_pos[sv] = W(v);
        fig.member_pos[sw] = W(w);
        fig.member_pos[sc] = W(sol.c);
        fig.member_pos[sd] = W(dpos);
        fig.member_pos[se] = W(sol.e);
        auto orient = [&](int i, int j, Polyline pl) {
            if (i > j) {
                std::swap(i, j);
                std::reverse(pl.begin(), pl.end());
            }
            fig.inner[{i, j}] = std::move(pl);
        };
        orient(sv, sw, {W(v), W(w)});
        orient(sv, sc, {W(v), W(sol.rv.P1), W(sol.rv.P2), W(sol.c)});
        orient(sw, sc, {W(w), W(sol.rw.P1), W(sol.rw.P2), W(sol.c)});
        orient(sv, sd, {W(v), W(mirror_y(sol.rv.P1)), W(mirror_y(sol.rv.P2)), W(dpos)});
        orient(sw, sd, {W(w), W(mirror_y(sol.rw.P1)), W(mirror_y(sol.rw.P2)), W(dpos)});
        orient(sc, se, {W(sol.c), W(sol.legc.P1), W(sol.legc.P2), W(sol.e)});
        orient(sd, se, {W(dpos), W(sol.legd.P1), W(sol.legd.P2), W(sol.e)});
    } else {
        fail(errc::log_mismatch, "unrecognized contraction shape");
    }

    // stitch the expanded drawing together
    Graph gold(n_old);
    std::map<std::pair<int, int>, Polyline> routes_new;
    auto add = [&](int a, int b, Polyline pl) {
        gold.add_edge(a, b);
        if (a > b) {
            std::swap(a, b);
            std::reverse(pl.begin(), pl.end());
        }
        routes_new[{a, b}] = std::move(pl);
    };
    for (int e = 0; e < cur.graph.m(); ++e) {
        auto [a, b] = cur.graph.edges()[e];
        if (a == y || b == y) continue;
        add(inv[a], inv[b], cur.routes[e]);
    }
    for (const auto& ot : outer) {
        Polyline pl = ot.from_y;
        Vec3 start = fig.member_pos[ot.slot];
        if (norm(start - pl[1]) < 1e-9) fail(errc::internal, "figure swallowed the first bend");
        pl[0] = start;
        add(rec.members[ot.slot], ot.o_old, std::move(pl));
    }
    for (const auto& [key, pl] : fig.inner) add(rec.members[key.first], rec.members[key.second], pl);
    if (gold.m() != cur.graph.m() + (int)rec.induced_edges.size())
        fail(errc::log_mismatch, "edge count after expansion");

    Drawing nd;
    nd.graph = gold;
    nd.positions.resize(n_old);
    for (int nn = 0; nn < n_new; ++nn)
        if (nn != y) nd.positions[inv[nn]] = cur.positions[nn];
    for (int s = 0; s < S; ++s) nd.positions[rec.members[s]] = fig.member_pos[s];
    nd.routes.resize(gold.m());
    for (int e = 0; e < gold.m(); ++e) {
        auto it = routes_new.find(gold.edges()[e]);
        if (it == routes_new.end()) fail(errc::internal, "expanded edge left undrawn");
        nd.routes[e] = std::move(it->second);
    }
    nd.repr = cur.repr;
    nd.frame = cur.frame;
    nd.algorithm = cur.algorithm;
    nd.seed = cur.seed;
    nd.n_augmented = cur.n_augmented;
    return nd;
}

}  // namespace

Drawing expand_delta_y(const Drawing& d, const DeltaYLog& log) {
    Drawing cur = d;
    for (auto it = log.records.rbegin(); it != log.records.rend(); ++it) cur = expand_one(cur, *it);
    return cur;
}

}  // namespace ar3d
