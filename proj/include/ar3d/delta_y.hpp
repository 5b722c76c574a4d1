#pragma once

#include <utility>
#include <vector>

#include "ar3d/graph.hpp"

namespace ar3d {

// One triangle-elimination contraction. Vertex ids in members, induced_edges
// and boundary refer to the labeling in force just before this step; the
// relabel table maps that labeling to the post-step one (-1 for removed
// vertices). The merged vertex keeps members[0]'s slot.
struct DeltaYRecord {
    std::vector<int> members;                        // sorted; size 3, 4 or 5
    std::vector<std::pair<int, int>> induced_edges;  // edges inside the set
    std::vector<std::pair<int, int>> boundary;       // (member, outside neighbor)
    std::vector<int> relabel;                        // old id -> new id
};

struct DeltaYLog {
    std::vector<DeltaYRecord> records;
};

// Contracts triangles until every component is triangle-free, except that a
// component which is K4 from the start is left alone. A triangle sharing an
// edge with a second triangle is contracted together with it (4 vertices);
// when the two 4-set tips also share an outside neighbor, that neighbor
// joins the contraction (5 vertices). A component that becomes K4 mid-way
// contracts to a single vertex in one step.
std::pair<Graph, DeltaYLog> delta_y_reduce(const Graph& g);

// One forward replay step; throws LogMismatch when the record does not fit g.
Graph delta_y_apply(const Graph& g, const DeltaYRecord& rec);

}  // namespace ar3d
