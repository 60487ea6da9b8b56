#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "stamstar/lattice.hpp"
#include "stamstar/model.hpp"

namespace stamstar {

// A placed tile with its mutable glue/signal state.
struct TileInst {
  int type = 0;  // index into the TileSet
  Site site{};
  Rot rot{};
  std::vector<GlueState> glue;  // parallel to TileType::glues
  std::vector<SigPhase> sig;    // parallel to TileType::signals
  // Dangling-chain placements can be abstracted: the tile keeps a nominal
  // site but stops blocking occupancy and hosting attachments.
  bool abstracted = false;
};

struct Bond {
  uint32_t tile_a = 0, glue_a = 0;
  uint32_t tile_b = 0, glue_b = 0;
  bool operator==(const Bond&) const = default;
};

// One supertile: tiles plus the bond multigraph. glue_bond mirrors bonds for
// O(1) "is this glue bound" lookups and is maintained by the mutators below.
struct Assembly {
  std::vector<TileInst> tiles;
  std::vector<Bond> bonds;
  std::vector<std::vector<int32_t>> glue_bond;  // per tile, per glue: bond index or -1

  int add_tile(const TileSet& ts, int type, Site site, Rot rot);
  int add_bond(uint32_t ta, uint32_t ga, uint32_t tb, uint32_t gb);
  void remove_bond(int bond_index);
  bool glue_bound(uint32_t tile, uint32_t glue) const { return glue_bond[tile][glue] >= 0; }
  size_t size() const { return tiles.size(); }
};

// Fresh instance of one tile type at a site, glue states and signal phases
// at their initial values.
Assembly singleton_assembly(const TileSet& ts, int type, Site site = Site::cube({0, 0, 0}),
                            Rot rot = {});

int bond_strength(const TileSet& ts, const Assembly& a, const Bond& b);
bool bond_flexible(const TileSet& ts, const Assembly& a, const Bond& b);

// Occupancy of all non-abstracted tiles. Returns nullopt when two tiles
// claim one site (geometrically impossible placements).
std::optional<std::unordered_map<Site, int, SiteHash>> occupancy(const Assembly& a);

// In-place rigid motion: rotate about the lattice origin, then translate by
// whole cells. Cube cells map to cells because rotations permute signed axes.
void transform(Assembly& a, Rot r, Vec3 cell_offset);
Vec3 rotate_cell(Rot r, Vec3 cell);
Site transform_site(Rot r, Vec3 cell_offset, const Site& s);

// Connected components of the bond graph; each entry lists tile indices.
std::vector<std::vector<int>> bond_components(const Assembly& a);

// New assembly from a tile subset (bonds inside the subset survive; indices
// remap in subset order).
Assembly extract(const Assembly& a, const std::vector<int>& tile_indices);

// Canonical serialization, minimized over the 24 rotations and translation.
// full=true includes glue states, signal phases and the bond set (state-level
// identity); full=false is the type-level view: (type, site, rot) multiset.
std::string canonical_bytes(const TileSet& ts, const Assembly& a, bool full);
uint64_t canonical_hash(const TileSet& ts, const Assembly& a, bool full);

// The state-level canonical representative itself: minimizing pose applied,
// tiles reordered into serialization order, bonds remapped and sorted. Two
// assemblies are the same supertile state iff their canonical forms compare
// equal field-for-field.
Assembly canonical_form(const TileSet& ts, const Assembly& a);

// World anchor of one glue of one placed tile.
AnchorPt tile_anchor(const TileSet& ts, const TileInst& t, uint32_t glue);
Dir tile_glue_face(const TileSet& ts, const TileInst& t, uint32_t glue);

// Cell->tile map for a rigidly bound assembly; fails with nullopt on overlap.
std::optional<std::unordered_map<Site, int, SiteHash>> lattice_embed(const Assembly& a);

// Text voxel dump: one line per tile, "x y z <type>" for cubes and
// "x y z <type> slot=<face>" for slabs, sorted; bit-exact across platforms.
std::string voxel_dump(const TileSet& ts, const Assembly& a);

}  // namespace stamstar
