#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stamstar/lattice.hpp"
#include "stamstar/model.hpp"

namespace stamstar {

// A seed tile placement. Orientation serializes as the images of local +x
// and +z, which is stable regardless of internal rotation numbering.
//
// A placement may override the type's initial glue states and mark signals
// as already fired. That is how a seed encodes a mid-life assembly, e.g. a
// template row whose one-shot signals were spent before time zero.
struct Placement {
  std::string type;
  Site site{};
  Rot rot{};
  std::vector<std::pair<uint16_t, GlueState>> glue_init;  // glue index -> state
  std::vector<uint16_t> fired;                            // signal indices, now POST
  bool operator==(const Placement&) const = default;
};

// A full simulable system: tile set, seed placements, free-form metadata.
// Seed bonds are not serialized; the engine bonds every coincident
// complementary ON pair at load (the same closure its INTRABIND rule
// enforces after every event).
struct SystemSpec {
  TileSet tiles;
  std::vector<Placement> seed;
  std::vector<std::pair<std::string, std::string>> meta;
};

// Line-oriented text schema. parse(emit(s)) reproduces s exactly, and
// emit(parse(t)) == t for canonically formatted t.
std::string emit_system(const SystemSpec& s);

struct ParseResult {
  std::optional<SystemSpec> system;
  std::string error;  // empty on success, else "line N: why"
};
ParseResult parse_system(std::string_view text);

std::optional<Dir> parse_dir(std::string_view name);

}  // namespace stamstar
