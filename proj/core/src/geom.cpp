#include "stamstar/geom.hpp"

#include <cassert>
#include <cstdio>
#include <vector>

namespace stamstar {

Dir vec_dir(Vec3 v) {
  for (int i = 0; i < 6; i++)
    if (dir_vec(Dir(i)) == v) return Dir(i);
  assert(!"vec_dir: not a unit axis vector");
  return Dir::PX;
}

const char* dir_name(Dir d) {
  static const char* names[6] = {"+x", "-x", "+y", "-y", "+z", "-z"};
  return names[size_t(d)];
}

namespace {

struct Mat {
  std::array<int8_t, 9> m;  // row-major
  Vec3 apply(Vec3 v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }
  bool operator==(const Mat&) const = default;
};

Mat mat_mul(const Mat& a, const Mat& b) {
  Mat r{};
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++) {
      int s = 0;
      for (int k = 0; k < 3; k++) s += a.m[i * 3 + k] * b.m[k * 3 + j];
      r.m[i * 3 + j] = int8_t(s);
    }
  return r;
}

struct RotTables {
  std::vector<Mat> mats;
  uint8_t compose[24][24];
  uint8_t inverse[24];
  RotTables() {
    Mat id{{1, 0, 0, 0, 1, 0, 0, 0, 1}};
    Mat rx{{1, 0, 0, 0, 0, -1, 0, 1, 0}};  // +90 about +x
    Mat ry{{0, 0, 1, 0, 1, 0, -1, 0, 0}};  // +90 about +y
    Mat rz{{0, -1, 0, 1, 0, 0, 0, 0, 1}};  // +90 about +z
    mats.push_back(id);
    // close under generators; 24 proper rotations
    for (size_t i = 0; i < mats.size(); i++) {
      for (const Mat& g : {rx, ry, rz}) {
        Mat c = mat_mul(g, mats[i]);
        bool seen = false;
        for (const Mat& m : mats)
          if (m == c) { seen = true; break; }
        if (!seen) mats.push_back(c);
      }
    }
    assert(mats.size() == 24);
    for (int a = 0; a < 24; a++)
      for (int b = 0; b < 24; b++) {
        Mat c = mat_mul(mats[a], mats[b]);
        for (int k = 0; k < 24; k++)
          if (mats[k] == c) { compose[a][b] = uint8_t(k); break; }
      }
    for (int a = 0; a < 24; a++)
      for (int b = 0; b < 24; b++)
        if (compose[a][b] == 0) inverse[a] = uint8_t(b);
  }
};

const RotTables& tables() {
  static RotTables t;
  return t;
}

}  // namespace

Vec3 rotate(Rot r, Vec3 v) { return tables().mats[r.id].apply(v); }
Dir rotate(Rot r, Dir d) { return vec_dir(rotate(r, dir_vec(d))); }
Rot compose(Rot a, Rot b) { return Rot{tables().compose[a.id][b.id]}; }
Rot inverse(Rot r) { return Rot{tables().inverse[r.id]}; }

Rot rot_about(Dir axis, int quarter_turns) {
  int q = ((quarter_turns % 4) + 4) % 4;
  Vec3 a = dir_vec(axis);
  // find the generator matrix for +90 about this axis, then iterate
  Rot step{0};
  bool found = false;
  for (int i = 0; i < 24 && !found; i++) {
    const Mat& m = tables().mats[size_t(i)];
    if (m.apply(a) != a) continue;
    // +90: for axis +z, maps +x to +y (right-handed); generalize via triple product
    Vec3 u = (a.x != 0) ? Vec3{0, 1, 0} : Vec3{1, 0, 0};
    Vec3 mu = m.apply(u);
    // cross(a, u) should equal mu for a +90 turn
    Vec3 cr{a.y * u.z - a.z * u.y, a.z * u.x - a.x * u.z, a.x * u.y - a.y * u.x};
    if (mu == cr) { step = Rot{uint8_t(i)}; found = true; }
  }
  assert(found);
  Rot r{0};
  for (int i = 0; i < q; i++) r = compose(step, r);
  return r;
}

Rot rot_from_images(Vec3 ix, Vec3 iz) {
  for (int i = 0; i < 24; i++) {
    Rot r{uint8_t(i)};
    if (rotate(r, Vec3{1, 0, 0}) == ix && rotate(r, Vec3{0, 0, 1}) == iz) return r;
  }
  assert(!"rot_from_images: images do not define a rotation");
  return Rot{0};
}

Pose compose(const Pose& a, const Pose& b) {
  return Pose{compose(a.rot, b.rot), rotate(a.rot, b.offset) + a.offset};
}

Pose inverse(const Pose& p) {
  Rot ri = inverse(p.rot);
  return Pose{ri, -rotate(ri, p.offset)};
}

}  // namespace stamstar
