#pragma once

#include <array>
#include <map>
#include <vector>

#include "ar3d/delta_y.hpp"
#include "ar3d/geom.hpp"
#include "ar3d/graph.hpp"

namespace ar3d {

// Closed fence around a cycle's xy-projection. Axis-parallel and 45-degree
// diagonal sides alternate, every corner turns by +-45 degrees (net +8
// quarter-turns), and each axis-parallel side carries one or two cycle
// vertices. Extra axis sides come from jog pairs along the bottom.
struct PolygonP {
    struct AxisSide {
        int corner = 0;  // index of the side's first corner in walk order
        double length = 0;
        int vertex_count = 0;
    };
    std::vector<std::array<double, 2>> corners;  // z = 0 plane, walk order
    std::vector<AxisSide> axis_sides;            // in walk order
};

// Fence for a cycle of the given length; attempt > 0 reshuffles the
// irrational side perturbations when a previous fence was degenerate.
PolygonP make_polygon_p(int cycle_len, int attempt = 0);

struct CycleDrawing {
    Drawing drawing;          // vertex i of the drawing is cycle[i]
    std::map<int, int> rays;  // position index -> +1 / -1 pendant ray sign
};

// Draws the cycle over a PolygonP fence: diagonal sides flat in z = 0,
// vertices lifted to +-l/(2k sqrt 3) by pendant label (none lifts up), every
// cycle-vertex joint exactly 120 degrees, at most two bends between
// consecutive vertices. Labels are keyed by cycle entries and must be +-1.
CycleDrawing single_cycle_drawing(const std::vector<int>& cycle,
                                  const std::map<int, int>& pendant_labels);

// Partial drawing of g, grown monotonically upward. Every placed vertex with
// an unplaced neighbor owns a vertical +z extension ray from its position;
// no three ray bases are collinear in the xy-projection.
struct ExtensibleState {
    Graph g;
    std::vector<char> placed;
    std::vector<Vec3> position;   // valid where placed
    std::vector<Polyline> route;  // parallel to g.edges(); empty = undrawn
    double z_top = 0;             // max z over all placed features

    int placed_count() const;
    // ray bases: placed vertex with exactly one unplaced neighbor.
    std::map<int, Vec3> rays() const;
};

ExtensibleState make_state(const Graph& g);

// Structural invariants; with full also verifies the placed-subgraph drawing
// at the 120-degree profile. Throws InvariantBroken.
void check_extensible(const ExtensibleState& st, bool full = false);

// Places a chordless unplaced cycle of length >= 4 above everything drawn so
// far; connections down to placed neighbors ride their extension rays with
// two 120-degree bends.
ExtensibleState extend_with_cycle(const ExtensibleState& st, const std::vector<int>& cycle);

// Places a vertex with at most two placed neighbors: on a fresh vertical
// line, on its neighbor's ray, or joined to two rays by transverse segments.
ExtensibleState extend_with_vertex(const ExtensibleState& st, int v);

// Places a vertex whose three neighbors are all placed: three horizontal
// mini-segments at mutual 120 degrees, joined to the three rays by
// transverse segments meeting them at exactly 120 degrees.
ExtensibleState extend_with_triskelion(const ExtensibleState& st, int v);

// Fixed catalogue drawing of K4: integer vertices and bends, vertex fans
// exactly 120 degrees, bend joints arccos(-1/sqrt 3) ~ 125.3 degrees.
Drawing draw_k4();

// Undoes triangle contractions in reverse order: merged vertices become
// small triangle figures (hexagon, heptagon, or glued-polygon pairs) scaled
// into the local clearance. Throws LogMismatch when a record does not fit.
Drawing expand_delta_y(const Drawing& d, const DeltaYLog& log);

// Full pipeline for max-degree-3 graphs: triangle reduction, K4 components
// from the catalogue, incremental extension for the rest, expansion, and a
// final pass through the 120-degree verifier profile.
Drawing layout_deg3_two_bend(const Graph& g);

}  // namespace ar3d
