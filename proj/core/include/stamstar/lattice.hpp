#pragma once

#include <cstdint>
#include <unordered_set>

#include "stamstar/geom.hpp"
#include "stamstar/model.hpp"

namespace stamstar {

// Where a tile body sits. A cube occupies a cell. A slab occupies the thin
// band pressed against one face of its key cell, inside the inter-cell gap;
// the two halves of a gap are distinct sites (slot(c,f) vs slot(c+f,opp f)),
// so back-to-back slab pairs are representable.
struct Site {
  Vec3 cell{};
  int8_t slot = -1;  // -1 = cube, else Dir index of the key-cell face

  static Site cube(Vec3 c) { return {c, -1}; }
  static Site slab(Vec3 c, Dir f) { return {c, int8_t(f)}; }
  bool is_cube() const { return slot < 0; }
  Dir face() const { return Dir(slot); }
  bool operator==(const Site&) const = default;
  auto operator<=>(const Site&) const = default;
};

struct SiteHash {
  size_t operator()(const Site& s) const {
    return Vec3Hash{}(s.cell) * 31 + size_t(uint8_t(s.slot) + 1);
  }
};

// Slabs admit 8 orientations in a slot: the big-face normal (local z) must
// align with the slot axis, either way round. Cubes admit all 24.
bool placement_rot_valid(TileBody body, const Site& site, Rot rot);

// Anchor geometry. Every glue anchor point decomposes into an integer
// quarter-unit position q (cell pitch = 4 quarters) plus a micro-offset m in
// half-epsilon units along each axis, capturing where inside the gap
// structure the point sits. True coordinate per axis:
//   (q div 4)*(1+2*eps) + (q mod 4)/4 + (eps/2)*m
struct AnchorPt {
  Vec3 q;
  Vec3 m;
  bool operator==(const AnchorPt&) const = default;
};

// Local quarter-unit coordinates of a face anchor. Cube body is [0,4]^3,
// slab body is [0,4]^2 x {0} with big faces along local z.
Vec3 local_face_point(TileBody body, Dir face, int a, int b);

AnchorPt world_anchor(TileBody body, const Site& site, Rot rot, const GlueDef& g);
inline Dir world_face(Rot rot, Dir local_face) { return rotate(rot, local_face); }

// Metric binding test for two glue endpoints of one length class:
//   flexible   : |dm|^2 <= 18   (reach (3/2)*sqrt(2)*eps, any orientation)
//   rigid cubic: faces antiparallel, dm = 4*dir(faceA) (2-eps gap, no shear)
//   rigid flat : faces antiparallel, dm = 0 (flush)
bool geometry_bindable(const AnchorPt& a, Dir face_a, const AnchorPt& b, Dir face_b,
                       LengthClass len);

// Hinge pivots. A 90-degree lattice rotation about an axis line through
// quarter-point q maps the cell grid to itself iff the two coordinates
// perpendicular to the axis are both 0 or both 2 (mod 4).
bool pivot_axis_legal(Vec3 q, Dir axis);

// Image of a site under a quarter-turn about (axis through pivot_q).
// Requires a legal pivot.
Site rotate_site(const Site& s, Vec3 pivot_q, Dir axis, int quarter_turns);
Vec3 rotate_quarter_point(Vec3 p, Vec3 pivot_q, Dir axis, int quarter_turns);

// True iff a 6-connected path of empty cells leads from `from` to outside
// the bounding box [lo, hi] (inclusive).
bool escape_path_exists(const std::unordered_set<Vec3, Vec3Hash>& occupied_cells, Vec3 from,
                        Vec3 lo, Vec3 hi);

}  // namespace stamstar
