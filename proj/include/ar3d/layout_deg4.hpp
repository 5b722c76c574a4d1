#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "ar3d/cycle_cover.hpp"
#include "ar3d/geom.hpp"
#include "ar3d/graph.hpp"

namespace ar3d {

using Poly2 = std::vector<std::array<long long, 2>>;

// Orthogonal stage of the degree-4 pipeline. Vertex coordinates come from the
// cover ranks (x = 2 r_green + 2 c_green, y = 2 r_red + 2 c_red); every edge
// is routed with exactly two bends, green edges vertical-horizontal-vertical
// and red edges mirrored. Routes are stored in u < v orientation.
struct Layout2D {
    std::vector<std::array<long long, 2>> coords;  // per vertex, both even
    std::map<int, Poly2> green_routes;             // by edge index
    std::map<int, Poly2> red_routes;
    std::vector<SignLabeling> green_signs;  // per green cycle, rotated order
    std::vector<SignLabeling> red_signs;
    CycleCover cover;  // cyclic shifts applied, ranks recomputed
};

// Plans the 2D drawing. Cyclically shifts cycle orders until no closing edge
// has equal horizontal and vertical endpoint distance and every odd cycle has
// a feasible mixed edge; throws InfeasibleParameters when the shift passes do
// not settle (the caller may retry with another cover).
Layout2D plan_2d(const Graph& g, const CycleCover& cover);

// Rotates (x,y) -> (x+y, y-x) and raises each route along body diagonals, z
// climbing one unit per lattice step to the route midpoint and descending
// after it; green edges above the plane, red below. Three bends per edge.
Drawing lift_3d(const Graph& g, const Layout2D& plan);

// Full pipeline for graphs of maximum degree 4: regularize, split into two
// cycle covers, plan, lift, verify, then strip the regularization edges and
// vertices. The result passes the diamond profile.
Drawing layout_deg4(const Graph& g, std::uint64_t seed = 0);

}  // namespace ar3d
