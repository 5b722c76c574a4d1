#pragma once

#include <iosfwd>
#include <string>

#include "ar3d/geom.hpp"
#include "ar3d/graph.hpp"

namespace ar3d {

// Text graph format: "n m" header, then one "u v" line per edge; blank lines
// and lines starting with '#' are skipped. Throws BadInput on malformed
// text; parse -> serialize -> parse is the identity on canonical form.
Graph load_graph_text(std::istream& in);
Graph load_graph_file(const std::string& path);
std::string graph_text(const Graph& g);

// JSON drawing document: a meta block plus per-vertex positions and per-edge
// bend lists. Integer drawings keep coordinates as JSON integers, real
// drawings as shortest round-trip decimal strings; load(save(d)) == d for
// both. Field order is fixed, so equal drawings serialize byte-identically.
std::string drawing_json(const Drawing& d);
Drawing load_drawing_json(std::istream& in);
Drawing load_drawing_file(const std::string& path);

// Default verification profile for a producer tag, "" when unknown.
std::string profile_for_algorithm(const std::string& algorithm);

// Wavefront scene: every vertex and bend becomes a "v" line, every route a
// polyline "l" element over 1-based indices. Integer drawings print integer
// coordinates, so re-parsing the "v" lines recovers them exactly.
std::string export_obj(const Drawing& d);

enum class ProjPlane { xy, xz, yz };

// Orthographic projection of the drawing onto one coordinate plane: routes
// as polylines, vertices as hollow circles, bends as small filled dots.
std::string export_svg_projection(const Drawing& d, ProjPlane plane);

}  // namespace ar3d
