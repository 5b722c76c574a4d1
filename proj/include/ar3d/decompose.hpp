#pragma once

#include <vector>

#include "ar3d/graph.hpp"

namespace ar3d {

// A minimum-length cycle as a vertex list (no repeated endpoint); minimality
// makes it chordless. Throws Acyclic when the graph is a forest.
std::vector<int> shortest_chordless_cycle(const Graph& g);

// Least superset of seed closed under: an outside vertex with at most one
// neighbor outside joins the set. Returns the closure sorted.
std::vector<int> double_adjacency_closure(const Graph& g, const std::vector<int>& seed);
// The vertices the closure adds, in the deterministic smallest-id-first
// order the grid driver absorbs them in.
std::vector<int> double_adjacency_closure_order(const Graph& g, const std::vector<int>& seed);

struct PeelStep {
    enum class Kind { add_cycle, add_vertex };
    Kind kind;
    std::vector<int> cycle;  // add_cycle
    int vertex = -1;         // add_vertex
};

// Incremental construction order for a triangle-free max-degree-3 graph:
// attach any vertex that has a placed neighbor and at most one unplaced one;
// otherwise place a shortest cycle of the unplaced subgraph; forests seed
// from a leaf. Throws TriangleFound on graphs with triangles.
std::vector<PeelStep> peel_order(const Graph& g);

}  // namespace ar3d
