#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ar3d/geom.hpp"

namespace ar3d {

enum class LatticeMode { none, face_diagonal, body_diagonal };

struct Profile {
    std::string name;
    double min_angle_deg = 0;
    int max_bends = 1 << 20;
    LatticeMode lattice = LatticeMode::none;
    bool integer_vertices = false;
    // Per-axis extent limits as a function of the effective vertex count
    // (the augmented count when the drawing records one).
    std::function<std::array<double, 3>(int)> volume_bound;
    // Real drawings: clearance = max(abs floor, rel * diameter).
    double clearance_rel = 1e-6;
    double clearance_abs = 0;

    // Exact diamond-lattice profile: arccos(-1/3) resolution, 3 bends.
    static Profile diamond();
    // Real-coordinate 120-degree profile, 2 bends.
    static Profile freeform120();
    // Exact face-diagonal 120-degree profile, 3 bends.
    static Profile grid120();
    static std::optional<Profile> by_name(const std::string& name);
};

struct VerificationReport {
    bool pass = false;
    bool malformed = false;
    bool angle_ok = true;
    bool bends_ok = true;
    bool lattice_ok = true;
    bool bbox_ok = true;
    double min_joint_angle_deg = 180;
    std::string min_joint_location;
    int max_bends_found = 0;
    int max_bends_edge = -1;
    std::vector<std::string> conflicts;
    std::vector<std::string> lattice_violations;
    std::vector<std::string> notes;
    Vec3 extent{0, 0, 0};
    std::optional<std::array<double, 3>> bbox_limit;

    std::string text() const;
    std::string json() const;
};

// Checks joints (vertex fans and bends), bend counts, pairwise conflicts,
// lattice conformance and the volume bound. Failures become report entries,
// never exceptions. Exact arithmetic drives every verdict on integer
// drawings; real drawings use the profile clearance.
VerificationReport verify(const Drawing& d, const Profile& p);

struct JointAngle {
    int edge_a = -1, edge_b = -1;
    double angle_deg = 0;
};

// Pairwise angles between the first segments of the routes meeting at v.
std::vector<JointAngle> vertex_joint_angles(const Drawing& d, int v);

}  // namespace ar3d
