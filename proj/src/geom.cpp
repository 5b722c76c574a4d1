#include "ar3d/geom.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ar3d/error.hpp"

namespace ar3d {

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double norm2(const Vec3& a) { return dot(a, a); }
double norm(const Vec3& a) { return std::sqrt(norm2(a)); }

__int128 idot(const IVec3& a, const IVec3& b) {
    return (__int128)a.x * b.x + (__int128)a.y * b.y + (__int128)a.z * b.z;
}

IVec3 icross(const IVec3& a, const IVec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

bool is_integral(const Vec3& p) {
    auto ok = [](double v) { return std::nearbyint(v) == v && std::abs(v) <= 9.0e15; };
    return ok(p.x) && ok(p.y) && ok(p.z);
}

IVec3 to_ivec(const Vec3& p) {
    if (!is_integral(p)) fail(errc::bad_input, "point has non-integral coordinates");
    return {(long long)std::llround(p.x), (long long)std::llround(p.y), (long long)std::llround(p.z)};
}

Vec3 to_vec(const IVec3& p) { return {(double)p.x, (double)p.y, (double)p.z}; }

IVec3 primitive(const IVec3& d) {
    if (d.is_zero()) fail(errc::zero_vector, "primitive() of the zero vector");
    long long g = std::gcd(std::gcd(std::llabs(d.x), std::llabs(d.y)), std::llabs(d.z));
    return {d.x / g, d.y / g, d.z / g};
}

DirectionClass classify_direction(const IVec3& d) {
    IVec3 p = primitive(d);
    int nonzero = (p.x != 0) + (p.y != 0) + (p.z != 0);
    bool units = std::llabs(p.x) <= 1 && std::llabs(p.y) <= 1 && std::llabs(p.z) <= 1;
    if (nonzero == 1) return DirectionClass::axis;
    if (nonzero == 2 && units) return DirectionClass::face_diagonal;
    if (nonzero == 3 && units) return DirectionClass::body_diagonal;
    return DirectionClass::other;
}

double joint_cos(const Vec3& incoming, const Vec3& outgoing) {
    double ni = norm(incoming), no = norm(outgoing);
    if (ni == 0 || no == 0) fail(errc::zero_vector, "joint_cos with zero direction");
    return -dot(incoming, outgoing) / (ni * no);
}

JointKind lattice_joint_check(const IVec3& incoming, const IVec3& outgoing, DirectionClass lattice) {
    if (lattice != DirectionClass::face_diagonal && lattice != DirectionClass::body_diagonal)
        fail(errc::bad_input, "lattice_joint_check expects a diagonal lattice class");
    IVec3 d1 = primitive(incoming), d2 = primitive(outgoing);
    if (classify_direction(d1) != lattice || classify_direction(d2) != lattice)
        fail(errc::not_in_lattice, "joint direction outside the requested lattice class");
    long long s = (long long)idot(d1, d2);
    long long straight = lattice == DirectionClass::body_diagonal ? 3 : 2;
    if (s == straight) return JointKind::straight;
    if (s == 1) return JointKind::optimal_bend;
    return JointKind::violation;
}

bool point_on_segment_exact(const IVec3& p, const IVec3& a, const IVec3& b) {
    IVec3 u = b - a, v = p - a;
    if (!icross(u, v).is_zero()) return false;
    __int128 t = idot(v, u);
    return t >= 0 && t <= idot(u, u);
}

SegmentMeet segments_meet_exact(const IVec3& a1, const IVec3& a2, const IVec3& b1, const IVec3& b2) {
    SegmentMeet r;
    IVec3 u = a2 - a1, w = b2 - b1, pq = b1 - a1;
    if (u.is_zero() || w.is_zero()) fail(errc::bad_input, "degenerate segment");
    IVec3 c = icross(u, w);
    if (c.is_zero()) {
        // Parallel. Same supporting line iff pq is parallel to u.
        if (!icross(pq, u).is_zero()) return r;
        __int128 len = idot(u, u);
        __int128 s1 = idot(pq, u), s2 = idot(b2 - a1, u);
        __int128 lo = std::min(s1, s2), hi = std::max(s1, s2);
        __int128 ilo = std::max<__int128>(lo, 0), ihi = std::min<__int128>(hi, len);
        if (ilo > ihi) return r;
        r.meets = true;
        if (ilo < ihi) {
            r.overlap = true;
        } else {
            // Boundary touch: an end of each parameter interval, hence an
            // endpoint of each segment.
            r.endpoint_endpoint = true;
        }
        return r;
    }
    __int128 D = idot(c, c);
    if (idot(pq, c) != 0) return r;  // skew lines
    __int128 t = idot(icross(pq, w), c);
    __int128 s = idot(icross(pq, u), c);
    if (D < 0) fail(errc::internal, "negative squared norm");
    if (t < 0 || t > D || s < 0 || s > D) return r;
    r.meets = true;
    r.endpoint_endpoint = (t == 0 || t == D) && (s == 0 || s == D);
    return r;
}

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
    Vec3 u = b - a;
    double uu = norm2(u);
    if (uu == 0) return norm(p - a);
    double t = std::clamp(dot(p - a, u) / uu, 0.0, 1.0);
    return norm(p - (a + t * u));
}

double segment_segment_distance(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2) {
    // Closest points between closed segments (Ericson, Real-Time Collision
    // Detection, 5.1.9).
    Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
    double a = norm2(d1), e = norm2(d2), f = dot(d2, r);
    double s = 0, t = 0;
    constexpr double tiny = 1e-30;
    if (a <= tiny && e <= tiny) {
        return norm(r);
    } else if (a <= tiny) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        double c = dot(d1, r);
        if (e <= tiny) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            double b = dot(d1, d2);
            double denom = a * e - b * b;
            s = denom != 0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
            t = (b * s + f) / e;
            if (t < 0) {
                t = 0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1) {
                t = 1;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    return norm((p1 + s * d1) - (p2 + t * d2));
}

namespace {

// Cuts the part of [a,b] within radius rad of endpoint a; empty result maps
// to the far endpoint.
void trim_near(Vec3& a, const Vec3& b, double rad) {
    double len = norm(b - a);
    if (len <= rad) {
        a = b;
        return;
    }
    a = a + (rad / len) * (b - a);
}

bool conflict_real(Vec3 a1, Vec3 a2, Vec3 b1, Vec3 b2, bool allowed, double eps) {
    if (allowed) {
        bool s11 = a1 == b1, s12 = a1 == b2, s21 = a2 == b1, s22 = a2 == b2;
        if ((s11 && s22) || (s12 && s21)) return true;  // identical support
        if (s11 || s12 || s21 || s22) {
            // Touching at a declared shared endpoint is fine; everything
            // beyond a 2*eps collar around it must still clear eps.
            if (s12 || s22) std::swap(b1, b2);
            if (s21 || s22) std::swap(a1, a2);
            trim_near(a1, a2, 2 * eps);
            trim_near(b1, b2, 2 * eps);
            if (a1 == a2 || b1 == b2) return false;
            return segment_segment_distance(a1, a2, b1, b2) < eps;
        }
    }
    return segment_segment_distance(a1, a2, b1, b2) < eps;
}

}  // namespace

bool segments_conflict(const Vec3& a1, const Vec3& a2, const Vec3& b1, const Vec3& b2,
                       bool shared_endpoint_allowed, Repr repr, double eps) {
    if (repr == Repr::integer) {
        SegmentMeet m = segments_meet_exact(to_ivec(a1), to_ivec(a2), to_ivec(b1), to_ivec(b2));
        if (!m.meets) return false;
        if (m.overlap) return true;
        if (m.endpoint_endpoint && shared_endpoint_allowed) return false;
        return true;
    }
    return conflict_real(a1, a2, b1, b2, shared_endpoint_allowed, eps);
}

Box3 bounding_box(const Drawing& d) {
    bool any = false;
    Box3 box{{0, 0, 0}, {0, 0, 0}};
    auto feed = [&](const Vec3& p) {
        if (!any) {
            box.lo = box.hi = p;
            any = true;
            return;
        }
        box.lo = {std::min(box.lo.x, p.x), std::min(box.lo.y, p.y), std::min(box.lo.z, p.z)};
        box.hi = {std::max(box.hi.x, p.x), std::max(box.hi.y, p.y), std::max(box.hi.z, p.z)};
    };
    for (const Vec3& p : d.positions) feed(p);
    for (const Polyline& r : d.routes)
        for (const Vec3& p : r) feed(p);
    if (!any) fail(errc::empty_drawing, "bounding_box of an empty drawing");
    return box;
}

Vec3 skew_to_cartesian(const Vec3& p) { return {p.y + p.z, p.x + p.y, p.x + p.z}; }

IVec3 skew_to_cartesian(const IVec3& p) { return {p.y + p.z, p.x + p.y, p.x + p.z}; }

Drawing to_cartesian(const Drawing& d) {
    if (d.frame == FrameTag::cartesian) return d;
    Drawing out = d;
    out.frame = FrameTag::cartesian;
    for (Vec3& p : out.positions) p = skew_to_cartesian(p);
    for (Polyline& r : out.routes)
        for (Vec3& p : r) p = skew_to_cartesian(p);
    return out;
}

}  // namespace ar3d
