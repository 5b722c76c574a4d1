#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ar3d/geom.hpp"
#include "ar3d/graph.hpp"

namespace ar3d {

// Integer point in the skew frame: the Cartesian image is
// a*(0,1,1) + b*(1,1,0) + c*(1,0,1).
struct SkewPoint {
    long long a = 0, b = 0, c = 0;

    friend SkewPoint operator+(const SkewPoint& p, const SkewPoint& q) {
        return {p.a + q.a, p.b + q.b, p.c + q.c};
    }
    friend SkewPoint operator-(const SkewPoint& p, const SkewPoint& q) {
        return {p.a - q.a, p.b - q.b, p.c - q.c};
    }
    friend bool operator==(const SkewPoint& p, const SkewPoint& q) {
        return p.a == q.a && p.b == q.b && p.c == q.c;
    }
    friend bool operator!=(const SkewPoint& p, const SkewPoint& q) { return !(p == q); }
    friend bool operator<(const SkewPoint& p, const SkewPoint& q) {
        if (p.a != q.a) return p.a < q.a;
        if (p.b != q.b) return p.b < q.b;
        return p.c < q.c;
    }
};

inline IVec3 skew_coeffs(const SkewPoint& p) { return {p.a, p.b, p.c}; }
inline IVec3 skew_point_to_cartesian(const SkewPoint& p) { return skew_to_cartesian(skew_coeffs(p)); }

using SkewPath = std::vector<SkewPoint>;

// One cycle drawn flat in the c = 0 plane: every segment is e_X-, e_Y-,
// or (e_X - e_Y)-parallel, every joint is straight or exactly 120 degrees,
// and edge i of the cycle has at most 3 bends.
struct FlatCycleFragment {
    std::vector<int> cycle;                 // as passed in
    std::vector<SkewPoint> vertex_pos;      // parallel to cycle
    std::vector<SkewPath> edge_paths;       // edge i runs cycle[i] -> cycle[(i+1)%k]
    std::map<int, SkewPoint> pendant_pos;   // degree-one neighbor -> its position
    long long min_a = 0, max_a = 0, min_b = 0, max_b = 0;  // extents incl. bends and stubs
};

// pendant_flags maps a cycle vertex to either the id of its degree-one
// neighbor (placed one unit along +e_Y) or -1 to reserve a two-unit +e_Y
// extension window for a connector attached later. Duplicate x-coordinates
// are rejected (DuplicateX); odd values are rejected (OddX).
FlatCycleFragment flat_single_cycle(const std::vector<int>& cycle,
                                    const std::vector<long long>& x_coords,
                                    const std::map<int, int>& pendant_flags = {});

// Growable drawing of an induced subgraph S in skew coordinates. Invariants
// between operations: every vertex of S has at most one neighbor outside S
// and vice versa; all vertex c-coordinates are even; at most one vertex per
// a-plane still has an undrawn edge, and its +e_Y extension ray is the
// rightmost feature at-or-above it in that plane.
struct GridExtensibleState {
    struct Obstacle {
        SkewPoint p, q;
        int vp = -1, vq = -1;  // vertex ids at the ends, -1 for a bend
    };

    Graph graph;
    std::vector<char> placed;
    std::vector<char> exclusive;                              // placed alone on a fresh level
    std::vector<SkewPoint> position;                          // valid where placed
    std::map<std::pair<int, int>, SkewPath> route;            // edge (u<v) -> path u->v
    std::map<long long, int> ray_owner;                       // a-plane -> slot holder
    std::vector<Obstacle> material;                           // committed segments + stubs
    std::map<int, std::pair<SkewPoint, SkewPoint>> stubs;     // reserved +e_Y windows
    long long top_c = 0;        // max c over committed points, valid once nonempty
    long long next_level = 0;   // fresh-c allocator floor
    bool empty = true;
};

GridExtensibleState make_grid_state(const Graph& g);

// Asserts the between-operation invariants; throws InvariantBroken.
void check_grid_state(const GridExtensibleState& st);

// x-inheritance for a new cycle: a cycle vertex adjacent to a placed vertex
// (directly, or through an unplaced intermediate that also neighbors a
// placed vertex) takes the placed vertex's a-coordinate; an intermediate
// shared by two cycle vertices forces the later one onto the earlier one's
// plane; everything else receives the smallest unused even value >= 0.
// Throws ConflictingInheritance when one vertex is forced two ways.
std::map<int, long long> assign_x_coordinates(const GridExtensibleState& st,
                                              const std::vector<int>& cycle);

// Draws `cycle` flat in a fresh horizontal plane, connects it to the placed
// drawing with <= 3-bend paths, then absorbs the whole double-adjacency
// closure of the enlarged set. Throws InvariantBroken on registry breakage.
void add_flat_cycle(GridExtensibleState& st, const std::vector<int>& cycle);

// Full pipeline for a simple max-degree-3 graph: repeated closure absorption
// and flat cycle insertion, output converted to Cartesian coordinates.
Drawing layout_deg3_grid(const Graph& g);

}  // namespace ar3d
