#include "ar3d/layout_deg4.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "ar3d/augment.hpp"
#include "ar3d/error.hpp"
#include "ar3d/verifier.hpp"

namespace ar3d {

namespace {

// Own-axis coordinate per vertex for one color: 2*rank + 2*cycle_index, so
// consecutive cycle vertices sit two units apart and cycles are separated by
// a four-unit gap.
std::vector<long long> axis_coords(const std::vector<std::vector<int>>& cycles, int n) {
    std::vector<long long> a(n, -1);
    long long pos = 0;
    for (size_t c = 0; c < cycles.size(); ++c)
        for (int v : cycles[c]) {
            if (v < 0 || v >= n || a[v] >= 0) fail(errc::bad_input, "cover is not a partition");
            a[v] = 2 * pos++ + 2 * (long long)c;
        }
    for (long long q : a)
        if (q < 0) fail(errc::bad_input, "cover does not span all vertices");
    return a;
}

// The closing edge joins the first and last vertex of the order, 2k-2 columns
// apart; equal cross distance would put the lifted midpoint on a bend. Odd
// cycles also need a non-closing edge of cross distance != 4 to carry the
// mixed labels (its shelf offsets 1 and 3 both hit the midpoint otherwise).
bool order_feasible(const std::vector<int>& cyc, const std::vector<long long>& cross) {
    int k = (int)cyc.size();
    if (std::llabs(cross[cyc[k - 1]] - cross[cyc[0]]) == 2 * (long long)k - 2) return false;
    if (k % 2 == 0) return true;
    for (int j = 0; j + 1 < k; ++j)
        if (std::llabs(cross[cyc[j]] - cross[cyc[j + 1]]) != 4) return true;
    return false;
}

// Keeps the current order when it already works, otherwise tries every
// cyclic shift. Returns false when none is feasible.
bool settle_cycle(std::vector<int>& cyc, const std::vector<long long>& cross, bool* changed) {
    if (order_feasible(cyc, cross)) return true;
    std::vector<int> rot(cyc);
    for (size_t r = 1; r < cyc.size(); ++r) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (order_feasible(rot, cross)) {
            cyc = rot;
            *changed = true;
            return true;
        }
    }
    return false;
}

// Green feasibility depends on the red ranks (y) and vice versa, so fixing
// one color can unsettle the other; alternate until stable. A cycle with no
// feasible shift may become fixable after the other color moves, hence stuck
// cycles only fail the plan once a full pass changes nothing.
void settle_orders(CycleCover& cover, int n) {
    for (int pass = 0; pass < 32; ++pass) {
        bool changed = false, stuck = false;
        auto y = axis_coords(cover.red_cycles, n);
        for (auto& cyc : cover.green_cycles)
            if (!settle_cycle(cyc, y, &changed)) stuck = true;
        auto x = axis_coords(cover.green_cycles, n);
        for (auto& cyc : cover.red_cycles)
            if (!settle_cycle(cyc, x, &changed)) stuck = true;
        if (!changed) {
            if (!stuck) return;
            break;
        }
    }
    fail(errc::infeasible_parameters, "cycle shifts did not settle");
}

struct ColorPlan {
    std::map<int, Poly2> routes;
    std::vector<SignLabeling> signs;
};

// Routes all cycles of one color in (own, cross) space: own is this color's
// monotone axis, cross the other color's coordinate. Every edge becomes
// vertex, bend, bend, vertex with the middle segment on a shelf h; the
// closing edge's shelf clears the whole cycle. swap_axes mirrors the roles
// for the red color.
ColorPlan route_color(const Graph& g, const std::vector<std::vector<int>>& cycles,
                      const std::vector<long long>& own, const std::vector<long long>& cross,
                      bool swap_axes) {
    ColorPlan out;
    for (const auto& cyc : cycles) {
        int k = (int)cyc.size();
        if (k < 3) fail(errc::invariant_broken, "cover cycle shorter than 3");
        int mixed = 0;
        if (k % 2 == 1) {
            mixed = -1;
            for (int j = 0; j + 1 < k && mixed < 0; ++j)
                if (std::llabs(cross[cyc[j]] - cross[cyc[j + 1]]) != 4) mixed = j;
            if (mixed < 0) fail(errc::internal, "no feasible mixed edge after settling");
        }
        SignLabeling sl = sign_labeling_ex(cyc, cross, mixed, false);

        long long lo = cross[cyc[0]], hi = lo;
        for (int v : cyc) {
            lo = std::min(lo, cross[v]);
            hi = std::max(hi, cross[v]);
        }
        std::vector<long long> shelf(k, 0);
        for (int j = 0; j + 1 < k; ++j) {
            int u = cyc[j], v = cyc[j + 1];
            if (own[v] - own[u] != 2) fail(errc::invariant_broken, "non-consecutive columns");
            auto [su, sv] = sl.end_signs[j];
            long long cu = cross[u], cv = cross[v], h;
            if (su == sv) {
                if (std::llabs(cu - cv) == 2)
                    fail(errc::invariant_broken, "cross distance 2 implies a parallel edge");
                h = su > 0 ? std::max(cu, cv) + 1 : std::min(cu, cv) - 1;
            } else {
                if ((cu < cv) != (su > 0)) fail(errc::invariant_broken, "mixed signs inverted");
                long long d = std::llabs(cu - cv), a = 1;
                if (a == d / 2 - 1 || a == d / 2 + 1) a = 3;
                if (a == d / 2 - 1 || a == d / 2 + 1)
                    fail(errc::midpoint_at_bend, "mixed edge has no feasible shelf");
                h = std::min(cu, cv) + a;
            }
            shelf[j] = h;
            lo = std::min(lo, h);
            hi = std::max(hi, h);
        }
        {
            auto [su, sv] = sl.end_signs[k - 1];
            if (su != sv) fail(errc::invariant_broken, "mixed closing edge");
            if (std::llabs(cross[cyc[k - 1]] - cross[cyc[0]]) == 2 * (long long)k - 2)
                fail(errc::internal, "closing edge kept equal spans");
            shelf[k - 1] = su > 0 ? hi + 1 : lo - 1;
        }
        for (int j = 0; j < k; ++j) {
            int u = cyc[j], v = cyc[(j + 1) % k];
            long long h = shelf[j];
            Poly2 pts = {{own[u], cross[u]}, {own[u], h}, {own[v], h}, {own[v], cross[v]}};
            if (swap_axes)
                for (auto& p : pts) std::swap(p[0], p[1]);
            if (u > v) std::reverse(pts.begin(), pts.end());
            int e = g.edge_index(std::min(u, v), std::max(u, v));
            if (e < 0) fail(errc::bad_input, "cover edge missing from graph");
            if (out.routes.count(e)) fail(errc::bad_input, "cover repeats an edge");
            out.routes[e] = std::move(pts);
        }
        out.signs.push_back(std::move(sl));
    }
    return out;
}

void refresh_ranks(CycleCover& c, int n) {
    c.r_green.assign(n, -1);
    c.c_green.assign(n, -1);
    c.r_red.assign(n, -1);
    c.c_red.assign(n, -1);
    int pos = 0;
    for (size_t i = 0; i < c.green_cycles.size(); ++i)
        for (int v : c.green_cycles[i]) {
            c.r_green[v] = pos++;
            c.c_green[v] = (int)i;
        }
    pos = 0;
    for (size_t i = 0; i < c.red_cycles.size(); ++i)
        for (int v : c.red_cycles[i]) {
            c.r_red[v] = pos++;
            c.c_red[v] = (int)i;
        }
    c.m_green = (int)c.green_cycles.size();
    c.m_red = (int)c.red_cycles.size();
}

std::array<long long, 2> rot45(const std::array<long long, 2>& p) {
    return {p[0] + p[1], p[1] - p[0]};
}

Vec3 at3(const std::array<long long, 2>& p, long long z) {
    auto r = rot45(p);
    return Vec3{(double)r[0], (double)r[1], (double)z};
}

std::array<long long, 2> point_at(const Poly2& poly, long long s) {
    for (size_t i = 0; i + 1 < poly.size(); ++i) {
        long long dx = poly[i + 1][0] - poly[i][0], dy = poly[i + 1][1] - poly[i][1];
        long long len = std::llabs(dx) + std::llabs(dy);
        if (s <= len) {
            long long sx = (dx > 0) - (dx < 0), sy = (dy > 0) - (dy < 0);
            return {poly[i][0] + sx * s, poly[i][1] + sy * s};
        }
        s -= len;
    }
    fail(errc::internal, "arc distance beyond route");
}

// The lift proper: each 2D unit step becomes one body-diagonal lattice step,
// z = min(s, L-s) along the arc. Bends appear at the 2D bends and at the
// apex; the plan guarantees they never coincide.
Polyline lift_route(const Poly2& poly, int zsign) {
    std::vector<long long> cum{0};
    for (size_t i = 0; i + 1 < poly.size(); ++i) {
        long long dx = poly[i + 1][0] - poly[i][0], dy = poly[i + 1][1] - poly[i][1];
        if (dx != 0 && dy != 0) fail(errc::internal, "non-orthogonal 2d segment");
        cum.push_back(cum.back() + std::llabs(dx) + std::llabs(dy));
    }
    long long L = cum.back();
    if (L % 2 != 0) fail(errc::internal, "odd 2d route length");
    std::vector<long long> marks;
    for (size_t i = 1; i + 1 < poly.size(); ++i) {
        if (cum[i] == L / 2) fail(errc::midpoint_at_bend, "route midpoint on a bend");
        marks.push_back(cum[i]);
    }
    marks.push_back(L / 2);
    std::sort(marks.begin(), marks.end());
    Polyline out;
    out.push_back(at3(poly.front(), 0));
    for (long long s : marks) out.push_back(at3(point_at(poly, s), zsign * std::min(s, L - s)));
    out.push_back(at3(poly.back(), 0));
    return out;
}

std::string reject_reason(const VerificationReport& r) {
    std::ostringstream os;
    if (r.malformed) os << "malformed ";
    if (!r.angle_ok) os << "angle ";
    if (!r.bends_ok) os << "bends ";
    if (!r.lattice_ok) os << "lattice ";
    if (!r.bbox_ok) os << "bbox ";
    os << r.conflicts.size() << " conflicts";
    return os.str();
}

}  // namespace

Layout2D plan_2d(const Graph& g, const CycleCover& cover) {
    Layout2D plan;
    plan.cover = cover;
    int n = g.n();
    settle_orders(plan.cover, n);
    auto x = axis_coords(plan.cover.green_cycles, n);
    auto y = axis_coords(plan.cover.red_cycles, n);
    ColorPlan green = route_color(g, plan.cover.green_cycles, x, y, false);
    ColorPlan red = route_color(g, plan.cover.red_cycles, y, x, true);
    for (const auto& [e, poly] : red.routes)
        if (green.routes.count(e)) fail(errc::bad_input, "edge routed in both colors");
    if ((int)(green.routes.size() + red.routes.size()) != g.m())
        fail(errc::bad_input, "cover does not route every edge");
    plan.coords.resize(n);
    for (int v = 0; v < n; ++v) plan.coords[v] = {x[v], y[v]};
    plan.green_routes = std::move(green.routes);
    plan.red_routes = std::move(red.routes);
    plan.green_signs = std::move(green.signs);
    plan.red_signs = std::move(red.signs);
    refresh_ranks(plan.cover, n);
    return plan;
}

Drawing lift_3d(const Graph& g, const Layout2D& plan) {
    Drawing d;
    d.graph = g;
    d.repr = Repr::integer;
    d.algorithm = "deg4-diamond";
    d.positions.resize(g.n());
    for (int v = 0; v < g.n(); ++v) d.positions[v] = at3(plan.coords[v], 0);
    d.routes.resize(g.m());
    for (const auto& [e, poly] : plan.green_routes) d.routes[e] = lift_route(poly, +1);
    for (const auto& [e, poly] : plan.red_routes) d.routes[e] = lift_route(poly, -1);
    for (const auto& r : d.routes)
        if (r.empty()) fail(errc::bad_input, "plan misses an edge route");
    return d;
}

Drawing layout_deg4(const Graph& g, std::uint64_t seed) {
    validate(g, 4);
    Drawing out;
    out.graph = g;
    out.repr = Repr::integer;
    out.algorithm = "deg4-diamond";
    out.seed = seed;
    if (g.n() == 0) return out;

    Graph aug = augment_to_4_regular(g);
    Layout2D plan;
    bool planned = false;
    for (int attempt = 0; attempt < 50 && !planned; ++attempt) {
        std::uint64_t s = seed + 0x9e3779b97f4a7c15ULL * (std::uint64_t)attempt;
        try {
            plan = plan_2d(aug, euler_split_seeded(aug, s));
            planned = true;
        } catch (const error& e) {
            if (e.code() != errc::infeasible_parameters) throw;
        }
    }
    if (!planned) fail(errc::internal, "no settleable cycle cover found");

    Drawing lifted = lift_3d(aug, plan);
    lifted.seed = seed;
    auto full = verify(lifted, Profile::diamond());
    if (!full.pass) fail(errc::internal, "augmented drawing rejected: " + reject_reason(full));

    out.positions.assign(lifted.positions.begin(), lifted.positions.begin() + g.n());
    out.routes.resize(g.m());
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges()[e];
        out.routes[e] = lifted.routes[aug.edge_index(u, v)];
    }
    if (aug.n() != g.n()) out.n_augmented = aug.n();
    auto fin = verify(out, Profile::diamond());
    if (!fin.pass) fail(errc::internal, "stripped drawing rejected: " + reject_reason(fin));
    return out;
}

}  // namespace ar3d
