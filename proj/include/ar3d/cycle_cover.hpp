#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ar3d/graph.hpp"

namespace ar3d {

// Two spanning 2-regular subgraphs of a 4-regular graph, with the global
// rank/cycle-index bookkeeping the degree-4 planner consumes: concatenating
// the cycles of one color lists every vertex once, and r_*(v) is the position
// of v in that concatenation while c_*(v) is its cycle's index.
struct CycleCover {
    std::vector<std::vector<int>> green_cycles;
    std::vector<std::vector<int>> red_cycles;
    std::vector<int> r_green, r_red;
    std::vector<int> c_green, c_red;
    int m_green = 0, m_red = 0;
};

// Colors an Euler circuit of each component alternately; throws
// NotFourRegular unless every degree is 4. Deterministic.
CycleCover euler_split(const Graph& g);
// Same, with the tour's neighbor preference shuffled by seed (seed 0 is the
// plain deterministic order).
CycleCover euler_split_seeded(const Graph& g, std::uint64_t seed);

// Signs of the two ends of each cycle edge. Edge i runs cycle[i] ->
// cycle[(i+1) % k]; end_signs[i] = {sign at cycle[i], sign at cycle[i+1]},
// each +1 or -1. At every vertex one incident end is + and one is -. Even
// cycles have all edges sign-equal at both ends; odd cycles have exactly one
// mixed edge whose lower end (by height) is +.
struct SignLabeling {
    std::vector<std::pair<int, int>> end_signs;
    int mixed_edge = -1;
};

// Mixed edge (odd k) at position 0; even cycles start ++. Throws
// DuplicateHeight when two cycle vertices share a height.
SignLabeling sign_labeling(const std::vector<int>& cycle, const std::vector<long long>& height);

// mixed_pos places the mixed edge for odd k (ignored for even k); flip swaps
// the ++/-- roles for even k (ignored for odd k, where the lower-end rule
// pins the free bit).
SignLabeling sign_labeling_ex(const std::vector<int>& cycle, const std::vector<long long>& height,
                              int mixed_pos, bool flip);

}  // namespace ar3d
