#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stamstar/geom.hpp"

namespace stamstar {

// A polycube: a finite 6-connected set of unit voxels. Canonical frame:
// voxels sorted, bounding-box min corner at the origin.
struct Shape {
  std::vector<Vec3> voxels;

  bool contains(Vec3 v) const;
  bool operator==(const Shape&) const = default;
};

enum class ShapeError { NONE, EMPTY, DISCONNECTED, PARSE_ERROR };
const char* shape_error_name(ShapeError e);

struct ShapeResult {
  std::optional<Shape> shape;
  ShapeError error = ShapeError::NONE;
  std::string message;  // "line N: why" when PARSE_ERROR
};

// Voxel-list format: one "x y z" per line, '#' starts a comment, blank
// lines ignored. Duplicate voxels are rejected. The loaded shape is
// translated into the canonical frame.
ShapeResult load_shape(std::string_view text);
std::string shape_to_text(const Shape& s);

// Every voxel becomes a c*c*c block of voxels.
Shape scale(const Shape& s, int c);

// Deterministic BFS tree rooted at the lexicographically smallest voxel,
// neighbors probed in fixed face order. Edges are (parent, child) in
// discovery order; |edges| = |voxels| - 1.
std::vector<std::pair<Vec3, Vec3>> spanning_tree(const Shape& s);

struct HamCircuit {
  std::vector<Vec3> cells;
  bool closed = true;
};

// Hamiltonian circuit over scale(s,2). Each voxel block carries one of two
// mirror-image 8-cycles in a coordinate-parity checkerboard; block cycles
// are spliced into one cycle along each spanning-tree edge by swapping a
// fixed facing edge pair across the shared face. The fixed pairs are chosen
// so that no two splices on one block ever consume the same edge, so the
// merge cannot fail. Always succeeds for a valid shape.
HamCircuit hamiltonian_circuit(const Shape& s);

// Independent check, sharing no code with the builder: cells are exactly
// the voxels of scale(base,2), each visited once, consecutive cells (and
// last-to-first when closed) 6-adjacent.
bool validate_circuit(const Shape& base, const HamCircuit& c, std::string* why = nullptr);

enum class StartRule { FIRST_EXTERIOR };

// Cut a closed circuit into an open path. The cut keeps circuit order and
// drops the wrap edge, so the path starts at the chosen cell and ends at
// its former circuit predecessor. FIRST_EXTERIOR picks the first cell in
// circuit order with at least one exposed face.
HamCircuit open_path(const HamCircuit& c, StartRule rule);
std::optional<HamCircuit> open_path_at(const HamCircuit& c, Vec3 start);

// Circuit file format: a CLOSED or OPEN header line, then "x y z" lines in
// order.
std::string circuit_to_text(const HamCircuit& c);
std::optional<HamCircuit> circuit_from_text(std::string_view text, std::string* why = nullptr);

}  // namespace stamstar
