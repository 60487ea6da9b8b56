#include "stamstar/lattice.hpp"

#include <cassert>
#include <queue>

namespace stamstar {

bool placement_rot_valid(TileBody body, const Site& site, Rot rot) {
  if (body == TileBody::CUBE) return site.is_cube();
  if (site.is_cube()) return false;
  Dir up = rotate(rot, Dir::PZ);
  return up == site.face() || up == opposite(site.face());
}

Vec3 local_face_point(TileBody body, Dir face, int a, int b) {
  assert(a >= 0 && a <= 4 && b >= 0 && b <= 4);
  if (body == TileBody::CUBE) {
    switch (face) {
      case Dir::PX: return {4, a, b};
      case Dir::NX: return {0, a, b};
      case Dir::PY: return {a, 4, b};
      case Dir::NY: return {a, 0, b};
      case Dir::PZ: return {a, b, 4};
      case Dir::NZ: return {a, b, 0};
    }
  } else {
    switch (face) {
      case Dir::PZ:
      case Dir::NZ: return {a, b, 0};
      case Dir::PX: return {4, a, 0};
      case Dir::NX: return {0, a, 0};
      case Dir::PY: return {a, 4, 0};
      case Dir::NY: return {a, 0, 0};
    }
  }
  return {};
}

namespace {

int axis_of(Dir d) { return int(uint8_t(d)) >> 1; }
bool positive(Dir d) { return (uint8_t(d) & 1) == 0; }

int comp(Vec3 v, int axis) { return axis == 0 ? v.x : axis == 1 ? v.y : v.z; }
void set_comp(Vec3& v, int axis, int val) {
  (axis == 0 ? v.x : axis == 1 ? v.y : v.z) = val;
}

}  // namespace

AnchorPt world_anchor(TileBody body, const Site& site, Rot rot, const GlueDef& g) {
  AnchorPt out{};
  Vec3 pl = local_face_point(body, g.face, g.a, g.b);
  if (body == TileBody::CUBE) {
    Vec3 center = 4 * site.cell + Vec3{2, 2, 2};
    out.q = center + rotate(rot, pl - Vec3{2, 2, 2});
    for (int ax = 0; ax < 3; ++ax)
      set_comp(out.m, ax, comp(out.q, ax) == 4 * comp(site.cell, ax) + 4 ? -4 : 0);
    return out;
  }
  assert(placement_rot_valid(body, site, rot));
  Dir f = site.face();
  Vec3 center = 4 * site.cell + Vec3{2, 2, 2} + 2 * dir_vec(f);
  out.q = center + rotate(rot, pl - Vec3{2, 2, 0});
  int n = axis_of(f);
  Dir fw = rotate(rot, g.face);
  // normal-axis micro depends on which surface of the band carries the glue
  int boundary = positive(f) ? -4 : 0;
  int mn;
  if (fw == opposite(f)) mn = boundary;                      // big face toward the key cell
  else if (fw == f) mn = -2;                                 // big face toward mid-gap
  else mn = positive(f) ? -3 : -1;                           // thin face, mid-band
  for (int ax = 0; ax < 3; ++ax) {
    if (ax == n) set_comp(out.m, ax, mn);
    else set_comp(out.m, ax, comp(out.q, ax) == 4 * comp(site.cell, ax) + 4 ? -4 : 0);
  }
  return out;
}

bool geometry_bindable(const AnchorPt& a, Dir face_a, const AnchorPt& b, Dir face_b,
                       LengthClass len) {
  if (a.q != b.q) return false;
  Vec3 d = b.m - a.m;
  switch (len) {
    case LengthClass::FLEXIBLE:
      return d.x * d.x + d.y * d.y + d.z * d.z <= 18;
    case LengthClass::RIGID_CUBIC:
      return face_b == opposite(face_a) && d == 4 * dir_vec(face_a);
    case LengthClass::RIGID_FLAT:
      return face_b == opposite(face_a) && d == Vec3{0, 0, 0};
  }
  return false;
}

bool pivot_axis_legal(Vec3 q, Dir axis) {
  int n = axis_of(axis);
  int r0 = -1;
  for (int ax = 0; ax < 3; ++ax) {
    if (ax == n) continue;
    int r = ((comp(q, ax) % 4) + 4) % 4;
    if (r != 0 && r != 2) return false;
    if (r0 < 0) r0 = r;
    else if (r != r0) return false;
  }
  return true;
}

Vec3 rotate_quarter_point(Vec3 p, Vec3 pivot_q, Dir axis, int quarter_turns) {
  Rot r = rot_about(axis, quarter_turns);
  return pivot_q + rotate(r, p - pivot_q);
}

Site rotate_site(const Site& s, Vec3 pivot_q, Dir axis, int quarter_turns) {
  assert(pivot_axis_legal(pivot_q, axis));
  Vec3 lo = rotate_quarter_point(4 * s.cell, pivot_q, axis, quarter_turns);
  Vec3 hi = rotate_quarter_point(4 * s.cell + Vec3{4, 4, 4}, pivot_q, axis, quarter_turns);
  Vec3 c{std::min(lo.x, hi.x), std::min(lo.y, hi.y), std::min(lo.z, hi.z)};
  assert(c.x % 4 == 0 && c.y % 4 == 0 && c.z % 4 == 0);
  Vec3 cell{c.x / 4, c.y / 4, c.z / 4};
  if (s.is_cube()) return Site::cube(cell);
  return Site::slab(cell, rotate(rot_about(axis, quarter_turns), s.face()));
}

bool escape_path_exists(const std::unordered_set<Vec3, Vec3Hash>& occupied_cells, Vec3 from,
                        Vec3 lo, Vec3 hi) {
  auto outside = [&](Vec3 c) {
    return c.x < lo.x || c.y < lo.y || c.z < lo.z || c.x > hi.x || c.y > hi.y || c.z > hi.z;
  };
  if (occupied_cells.count(from)) return false;
  if (outside(from)) return true;
  std::unordered_set<Vec3, Vec3Hash> seen{from};
  std::queue<Vec3> bfs;
  bfs.push(from);
  while (!bfs.empty()) {
    Vec3 c = bfs.front();
    bfs.pop();
    for (int d = 0; d < kDirCount; ++d) {
      Vec3 n = c + dir_vec(Dir(d));
      if (outside(n)) return true;
      if (occupied_cells.count(n) || seen.count(n)) continue;
      seen.insert(n);
      bfs.push(n);
    }
  }
  return false;
}

}  // namespace stamstar
