#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ar3d/graph.hpp"

namespace ar3d {

struct Vec3 {
    double x = 0, y = 0, z = 0;

    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
    friend Vec3 operator*(const Vec3& a, double s) { return s * a; }
    friend Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    friend bool operator==(const Vec3& a, const Vec3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
    friend bool operator!=(const Vec3& a, const Vec3& b) { return !(a == b); }
};

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm2(const Vec3& a);
double norm(const Vec3& a);

// Exact-integer mirror of Vec3 for lattice predicates.
struct IVec3 {
    long long x = 0, y = 0, z = 0;

    friend IVec3 operator+(const IVec3& a, const IVec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend IVec3 operator-(const IVec3& a, const IVec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend IVec3 operator*(long long s, const IVec3& a) { return {s * a.x, s * a.y, s * a.z}; }
    IVec3 operator-() const { return {-x, -y, -z}; }
    friend bool operator==(const IVec3& a, const IVec3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
    friend bool operator!=(const IVec3& a, const IVec3& b) { return !(a == b); }
    bool is_zero() const { return x == 0 && y == 0 && z == 0; }
};

__int128 idot(const IVec3& a, const IVec3& b);
IVec3 icross(const IVec3& a, const IVec3& b);

bool is_integral(const Vec3& p);
// Throws BadInput unless all coordinates are exactly integral.
IVec3 to_ivec(const Vec3& p);
Vec3 to_vec(const IVec3& p);

enum class Repr { integer, real };
enum class FrameTag { cartesian, skew };

// First and last points are the positions of the edge's endpoints; interior
// points are bends. Consecutive points distinct, no collinear interior point.
using Polyline = std::vector<Vec3>;

struct Drawing {
    Graph graph;
    std::vector<Vec3> positions;   // per vertex
    std::vector<Polyline> routes;  // parallel to graph.edges(), oriented u -> v with u < v
    Repr repr = Repr::integer;
    FrameTag frame = FrameTag::cartesian;
    std::string algorithm;
    std::uint64_t seed = 0;
    int n_augmented = -1;  // vertex count before dummy removal, when the producer augmented
};

enum class DirectionClass { axis, face_diagonal, body_diagonal, other };

// Divides by gcd of absolute components. Throws ZeroVector on the zero vector.
IVec3 primitive(const IVec3& d);
DirectionClass classify_direction(const IVec3& d);

// Cosine of the joint angle, i.e. the angle between the reversed incoming
// direction and the outgoing direction; straight continuation gives -1.
double joint_cos(const Vec3& incoming, const Vec3& outgoing);

enum class JointKind { straight, optimal_bend, violation };

// Exact dot rule on primitive directions d1 (incoming travel) and d2
// (outgoing travel): body diagonals s=3 straight / s=1 optimal; face
// diagonals s=2 straight / s=1 optimal (120 degrees); anything else is a
// violation. Throws NotInLattice when a direction is not of the asked class.
JointKind lattice_joint_check(const IVec3& incoming, const IVec3& outgoing, DirectionClass lattice);

struct SegmentMeet {
    bool meets = false;
    bool overlap = false;            // common part has positive length
    bool endpoint_endpoint = false;  // single common point, an endpoint of both
};

// Exact intersection classification of two closed integer segments.
SegmentMeet segments_meet_exact(const IVec3& a1, const IVec3& a2, const IVec3& b1, const IVec3& b2);

bool point_on_segment_exact(const IVec3& p, const IVec3& a, const IVec3& b);

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b);
double segment_segment_distance(const Vec3& a1, const Vec3& a2, const Vec3& b1, const Vec3& b2);

// True iff the closed segments touch (integer: exactly; real: approach below
// eps) anywhere except a permitted shared endpoint.
bool segments_conflict(const Vec3& a1, const Vec3& a2, const Vec3& b1, const Vec3& b2,
                       bool shared_endpoint_allowed, Repr repr, double eps);

struct Box3 {
    Vec3 lo, hi;
};

// Componentwise extrema over vertices and bends. Throws EmptyDrawing.
Box3 bounding_box(const Drawing& d);

// p = a*(0,1,1) + b*(1,1,0) + c*(1,0,1).
Vec3 skew_to_cartesian(const Vec3& p);
IVec3 skew_to_cartesian(const IVec3& p);
// Applies the basis to every point of a skew-frame drawing; identity otherwise.
Drawing to_cartesian(const Drawing& d);

}  // namespace ar3d
