#pragma once

#include <stdexcept>
#include <string>

namespace ar3d {

enum class errc {
    self_loop,
    parallel_edge,
    degree_exceeded,
    not_four_regular,
    duplicate_height,
    acyclic,
    infeasible_parameters,
    triangle_found,
    cycle_too_short,
    not_chordless,
    length_below_four,
    too_many_placed_neighbors,
    too_many_unplaced_neighbors,
    neighbors_not_placed,
    log_mismatch,
    midpoint_at_bend,
    duplicate_x,
    odd_x,
    conflicting_inheritance,
    invariant_broken,
    zero_vector,
    empty_drawing,
    not_in_lattice,
    bad_input,
    internal,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace ar3d
