#include "ar3d/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ar3d/error.hpp"
#include "json.hpp"

namespace ar3d {

namespace {

constexpr double kPi = 3.14159265358979323846;

double angle_deg_between(const Vec3& d1, const Vec3& d2) {
    double c = dot(d1, d2) / (norm(d1) * norm(d2));
    return std::acos(std::clamp(c, -1.0, 1.0)) * 180.0 / kPi;
}

std::string fmt_point(const Vec3& p) {
    std::ostringstream os;
    os << "(" << p.x << "," << p.y << "," << p.z << ")";
    return os.str();
}

struct Seg {
    Vec3 a, b;
    int edge;   // route index
    int index;  // segment position within the route
};

bool boxes_apart(const Seg& s, const Seg& t, double margin) {
    auto apart = [&](double a1, double a2, double b1, double b2) {
        return std::max(a1, a2) + margin < std::min(b1, b2) ||
               std::max(b1, b2) + margin < std::min(a1, a2);
    };
    return apart(s.a.x, s.b.x, t.a.x, t.b.x) || apart(s.a.y, s.b.y, t.a.y, t.b.y) ||
           apart(s.a.z, s.b.z, t.a.z, t.b.z);
}

}  // namespace

Profile Profile::diamond() {
    Profile p;
    p.name = "diamond";
    p.min_angle_deg = std::acos(-1.0 / 3.0) * 180.0 / kPi;
    p.max_bends = 3;
    p.lattice = LatticeMode::body_diagonal;
    p.integer_vertices = true;
    p.volume_bound = [](int n) {
        return std::array<double, 3>{16.0 * n / 3, 16.0 * n / 3, 16.0 * n};
    };
    return p;
}

Profile Profile::freeform120() {
    Profile p;
    p.name = "freeform120";
    p.min_angle_deg = 120.0 - 1e-6;
    p.max_bends = 2;
    p.lattice = LatticeMode::none;
    p.integer_vertices = false;
    return p;
}

Profile Profile::grid120() {
    Profile p;
    p.name = "grid120";
    p.min_angle_deg = 120.0;
    p.max_bends = 3;
    p.lattice = LatticeMode::face_diagonal;
    p.integer_vertices = true;
    return p;
}

std::optional<Profile> Profile::by_name(const std::string& name) {
    if (name == "diamond") return diamond();
    if (name == "freeform120") return freeform120();
    if (name == "grid120") return grid120();
    return std::nullopt;
}

VerificationReport verify(const Drawing& d, const Profile& p) {
    VerificationReport rep;
    const Graph& g = d.graph;
    auto note = [&](const std::string& s) { rep.notes.push_back(s); };
    auto bad_shape = [&](const std::string& s) {
        rep.malformed = true;
        note(s);
    };

    if ((int)d.positions.size() != g.n()) bad_shape("positions/vertex count mismatch");
    if ((int)d.routes.size() != g.m()) bad_shape("routes/edge count mismatch");
    if (g.n() == 0) bad_shape("empty drawing");
    if (rep.malformed) return rep;

    bool exact = d.repr == Repr::integer;
    if (p.integer_vertices || exact) {
        for (const Vec3& q : d.positions)
            if (!is_integral(q)) {
                bad_shape("non-integral vertex " + fmt_point(q));
                break;
            }
        for (const Polyline& r : d.routes) {
            for (const Vec3& q : r)
                if (!is_integral(q)) {
                    bad_shape("non-integral route point " + fmt_point(q));
                    break;
                }
        }
        if (rep.malformed) return rep;
        exact = true;
    }

    Box3 box = bounding_box(d);
    rep.extent = box.hi - box.lo;
    double diameter = norm(rep.extent);
    double eps = std::max(p.clearance_abs, p.clearance_rel * diameter);
    if (eps == 0) eps = 1e-12;

    // Route shape: endpoints at vertex positions, no zero-length segment, no
    // collinear interior point (a straight "bend" would make the bend count
    // ambiguous), no fold-back.
    for (int e = 0; e < g.m(); ++e) {
        const Polyline& r = d.routes[e];
        auto [u, v] = g.edges()[e];
        if (r.size() < 2) {
            bad_shape("route " + std::to_string(e) + " has fewer than 2 points");
            continue;
        }
        if (!(r.front() == d.positions[u]) || !(r.back() == d.positions[v]))
            bad_shape("route " + std::to_string(e) + " does not join its endpoints");
        for (size_t i = 0; i + 1 < r.size(); ++i)
            if (r[i] == r[i + 1]) bad_shape("route " + std::to_string(e) + " repeats a point");
        for (size_t i = 0; i + 2 < r.size(); ++i) {
            Vec3 s1 = r[i + 1] - r[i], s2 = r[i + 2] - r[i + 1];
            bool collinear = exact
                                 ? icross(to_ivec(s1), to_ivec(s2)).is_zero()
                                 : norm(cross(s1, s2)) <= 1e-12 * norm(s1) * norm(s2);
            if (!collinear) continue;
            if (dot(s1, s2) > 0)
                bad_shape("route " + std::to_string(e) + " has a redundant collinear point at " +
                          fmt_point(r[i + 1]));
            else
                bad_shape("route " + std::to_string(e) + " folds back at " + fmt_point(r[i + 1]));
        }
    }
    if (rep.malformed) return rep;

    // Bend counts.
    for (int e = 0; e < g.m(); ++e) {
        int bends = (int)d.routes[e].size() - 2;
        if (bends > rep.max_bends_found) {
            rep.max_bends_found = bends;
            rep.max_bends_edge = e;
        }
    }
    rep.bends_ok = rep.max_bends_found <= p.max_bends;

    // Lattice conformance of every segment direction.
    DirectionClass want = p.lattice == LatticeMode::body_diagonal ? DirectionClass::body_diagonal
                                                                  : DirectionClass::face_diagonal;
    if (p.lattice != LatticeMode::none) {
        for (int e = 0; e < g.m(); ++e) {
            const Polyline& r = d.routes[e];
            for (size_t i = 0; i + 1 < r.size(); ++i) {
                IVec3 dir = to_ivec(r[i + 1] - r[i]);
                if (classify_direction(dir) != want)
                    rep.lattice_violations.push_back("edge " + std::to_string(e) + " segment " +
                                                     std::to_string(i) + " direction off-lattice");
            }
        }
        rep.lattice_ok = rep.lattice_violations.empty();
    }

    // in points into the joint, out leaves it; joint angle is measured between
    // the reversed incoming direction and the outgoing one (straight = 180).
    auto consider_joint = [&](const Vec3& in, const Vec3& out, const std::string& where) {
        double ang = angle_deg_between(-in, out);
        if (ang < rep.min_joint_angle_deg) {
            rep.min_joint_angle_deg = ang;
            rep.min_joint_location = where;
        }
        if (p.lattice != LatticeMode::none) {
            IVec3 i1 = to_ivec(in), i2 = to_ivec(out);
            if (classify_direction(i1) != want || classify_direction(i2) != want) return;  // reported above
            if (lattice_joint_check(i1, i2, want) == JointKind::violation) {
                rep.angle_ok = false;
                note("joint violation at " + where);
            }
        } else if (ang < p.min_angle_deg) {
            rep.angle_ok = false;
            note("joint angle " + std::to_string(ang) + " below threshold at " + where);
        }
    };

    // Bend joints.
    for (int e = 0; e < g.m(); ++e) {
        const Polyline& r = d.routes[e];
        for (size_t i = 0; i + 2 < r.size(); ++i)
            consider_joint(r[i + 1] - r[i], r[i + 2] - r[i + 1],
                           "edge " + std::to_string(e) + " bend " + std::to_string(i));
    }
    // Vertex joints: pairwise over directions leaving the vertex.
    std::vector<std::vector<std::pair<int, Vec3>>> fans(g.n());
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges()[e];
        const Polyline& r = d.routes[e];
        fans[u].push_back({e, r[1] - r[0]});
        fans[v].push_back({e, r[r.size() - 2] - r[r.size() - 1]});
    }
    for (int v = 0; v < g.n(); ++v)
        for (size_t i = 0; i < fans[v].size(); ++i)
            for (size_t j = i + 1; j < fans[v].size(); ++j)
                consider_joint(-fans[v][i].second, fans[v][j].second,
                               "vertex " + std::to_string(v) + " edges " +
                                   std::to_string(fans[v][i].first) + "/" +
                                   std::to_string(fans[v][j].first));

    // Conflicts. Segments of distinct routes may touch only at a shared
    // vertex; same-route segments only at their common bend.
    std::vector<Seg> segs;
    for (int e = 0; e < g.m(); ++e)
        for (size_t i = 0; i + 1 < d.routes[e].size(); ++i)
            segs.push_back({d.routes[e][i], d.routes[e][i + 1], e, (int)i});
    for (size_t a = 0; a < segs.size(); ++a) {
        for (size_t b = a + 1; b < segs.size(); ++b) {
            const Seg& s = segs[a];
            const Seg& t = segs[b];
            if (s.edge == t.edge && std::abs(s.index - t.index) <= 1) continue;
            if (boxes_apart(s, t, 2 * eps)) continue;
            bool allowed = false;
            if (s.edge != t.edge) {
                auto [u1, v1] = g.edges()[s.edge];
                auto [u2, v2] = g.edges()[t.edge];
                for (int shared : {u1, v1}) {
                    if (shared != u2 && shared != v2) continue;
                    const Vec3& q = d.positions[shared];
                    bool s_touch = s.a == q || s.b == q;
                    bool t_touch = t.a == q || t.b == q;
                    allowed = allowed || (s_touch && t_touch);
                }
            }
            if (segments_conflict(s.a, s.b, t.a, t.b, allowed, exact ? Repr::integer : Repr::real,
                                  eps))
                rep.conflicts.push_back("edge " + std::to_string(s.edge) + " seg " +
                                        std::to_string(s.index) + " vs edge " +
                                        std::to_string(t.edge) + " seg " + std::to_string(t.index));
        }
    }
    // A vertex may lie on a route only as that route's endpoint.
    for (int v = 0; v < g.n(); ++v) {
        const Vec3& q = d.positions[v];
        for (int e = 0; e < g.m(); ++e) {
            auto [u, w] = g.edges()[e];
            if (u == v || w == v) continue;
            const Polyline& r = d.routes[e];
            for (size_t i = 0; i + 1 < r.size(); ++i) {
                bool hit = exact ? point_on_segment_exact(to_ivec(q), to_ivec(r[i]), to_ivec(r[i + 1]))
                                 : point_segment_distance(q, r[i], r[i + 1]) < eps;
                if (hit)
                    rep.conflicts.push_back("vertex " + std::to_string(v) + " lies on edge " +
                                            std::to_string(e));
            }
        }
    }

    if (p.volume_bound) {
        int n_raw = g.n();
        int n_eff = d.n_augmented > 0 ? d.n_augmented : n_raw;
        auto lim = p.volume_bound(n_eff);
        rep.bbox_limit = lim;
        double ex[3] = {rep.extent.x, rep.extent.y, rep.extent.z};
        for (int i = 0; i < 3; ++i)
            if (ex[i] > lim[i] + 1e-9) rep.bbox_ok = false;
        auto lim_raw = p.volume_bound(n_raw);
        std::ostringstream os;
        os << "extent (" << ex[0] << "," << ex[1] << "," << ex[2] << "); limit at n=" << n_raw
           << " (" << lim_raw[0] << "," << lim_raw[1] << "," << lim_raw[2] << ")";
        if (n_eff != n_raw)
            os << ", at augmented n=" << n_eff << " (" << lim[0] << "," << lim[1] << "," << lim[2]
               << ")";
        note(os.str());
    }

    rep.pass = !rep.malformed && rep.angle_ok && rep.bends_ok && rep.lattice_ok && rep.bbox_ok &&
               rep.conflicts.empty();
    return rep;
}

std::vector<JointAngle> vertex_joint_angles(const Drawing& d, int v) {
    if (v < 0 || v >= d.graph.n()) fail(errc::bad_input, "vertex out of range");
    std::vector<std::pair<int, Vec3>> fan;
    for (int e = 0; e < d.graph.m(); ++e) {
        auto [a, b] = d.graph.edges()[e];
        const Polyline& r = d.routes[e];
        if (a == v) fan.push_back({e, r[1] - r[0]});
        if (b == v) fan.push_back({e, r[r.size() - 2] - r[r.size() - 1]});
    }
    std::vector<JointAngle> out;
    for (size_t i = 0; i < fan.size(); ++i)
        for (size_t j = i + 1; j < fan.size(); ++j)
            out.push_back({fan[i].first, fan[j].first,
                           angle_deg_between(fan[i].second, fan[j].second)});
    return out;
}

std::string VerificationReport::text() const {
    std::ostringstream os;
    os << (pass ? "PASS" : "FAIL") << "\n";
    os << "  min joint angle: " << min_joint_angle_deg;
    if (!min_joint_location.empty()) os << " at " << min_joint_location;
    os << "\n  max bends: " << max_bends_found;
    if (max_bends_edge >= 0) os << " on edge " << max_bends_edge;
    os << "\n  conflicts: " << conflicts.size() << "\n  lattice violations: "
       << lattice_violations.size() << "\n  extent: (" << extent.x << "," << extent.y << ","
       << extent.z << ")\n";
    if (malformed) os << "  malformed input\n";
    if (!angle_ok) os << "  angle check failed\n";
    if (!bends_ok) os << "  bend count exceeded\n";
    if (!bbox_ok) os << "  bounding box exceeded\n";
    for (const auto& c : conflicts) os << "    conflict: " << c << "\n";
    for (const auto& h : lattice_violations) os << "    lattice: " << h << "\n";
    for (const auto& m : notes) os << "  note: " << m << "\n";
    return os.str();
}

std::string VerificationReport::json() const {
    nlohmann::ordered_json j;
    j["pass"] = pass;
    j["malformed"] = malformed;
    j["angle_ok"] = angle_ok;
    j["bends_ok"] = bends_ok;
    j["lattice_ok"] = lattice_ok;
    j["bbox_ok"] = bbox_ok;
    j["min_joint_angle_deg"] = min_joint_angle_deg;
    j["min_joint_location"] = min_joint_location;
    j["max_bends_found"] = max_bends_found;
    j["max_bends_edge"] = max_bends_edge;
    j["conflicts"] = conflicts;
    j["lattice_violations"] = lattice_violations;
    j["extent"] = {extent.x, extent.y, extent.z};
    if (bbox_limit) j["bbox_limit"] = *bbox_limit;
    j["notes"] = notes;
    return j.dump(2);
}

}  // namespace ar3d
