#pragma once

#include <cstdint>

#include "ar3d/graph.hpp"

namespace ar3d {

// Uniform-ish simple d-regular graph via the pairing model with rejection;
// deterministic for a fixed seed. Throws InfeasibleParameters when n*d is
// odd or d >= n or n <= 0.
Graph gen_random_regular(int n, int d, std::uint64_t seed);

}  // namespace ar3d
