#pragma once

#include "ar3d/graph.hpp"

namespace ar3d {

// Extends a simple graph of max degree 4 to a simple 4-regular supergraph on
// the same vertices plus at most 6 extra vertices flagged dummy. All input
// edges are preserved; extra edges may also join two input vertices (the
// caller recovers them by edge-set difference).
Graph augment_to_4_regular(const Graph& g);

}  // namespace ar3d
