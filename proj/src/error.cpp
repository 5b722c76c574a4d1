#include "ar3d/error.hpp"

namespace ar3d {

const char* errc_name(errc c) {
    switch (c) {
        case errc::self_loop: return "SelfLoop";
        case errc::parallel_edge: return "ParallelEdge";
        case errc::degree_exceeded: return "DegreeExceeded";
        case errc::not_four_regular: return "NotFourRegular";
        case errc::duplicate_height: return "DuplicateHeight";
        case errc::acyclic: return "Acyclic";
        case errc::infeasible_parameters: return "InfeasibleParameters";
        case errc::triangle_found: return "TriangleFound";
        case errc::cycle_too_short: return "CycleTooShort";
        case errc::not_chordless: return "NotChordless";
        case errc::length_below_four: return "LengthBelowFour";
        case errc::too_many_placed_neighbors: return "TooManyPlacedNeighbors";
        case errc::too_many_unplaced_neighbors: return "TooManyUnplacedNeighbors";
        case errc::neighbors_not_placed: return "NeighborsNotPlaced";
        case errc::log_mismatch: return "LogMismatch";
        case errc::midpoint_at_bend: return "MidpointAtBend";
        case errc::duplicate_x: return "DuplicateX";
        case errc::odd_x: return "OddX";
        case errc::conflicting_inheritance: return "ConflictingInheritance";
        case errc::invariant_broken: return "InvariantBroken";
        case errc::zero_vector: return "ZeroVector";
        case errc::empty_drawing: return "EmptyDrawing";
        case errc::not_in_lattice: return "NotInLattice";
        case errc::bad_input: return "BadInput";
        case errc::internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace ar3d
