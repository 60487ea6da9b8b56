#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <set>

#include "doctest.h"
#include "stamstar/geom.hpp"

using namespace stamstar;

TEST_CASE("rotation 0 is the identity") {
  for (Vec3 v : {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}, Vec3{3, -2, 7}}) {
    CHECK(rotate(Rot{0}, v) == v);
  }
  for (int d = 0; d < kDirCount; ++d) CHECK(rotate(Rot{0}, Dir(d)) == Dir(d));
}

TEST_CASE("the 24 rotations are distinct and closed") {
  std::set<std::array<Vec3, 3>> images;
  for (int r = 0; r < kRotCount; ++r) {
    Rot rr{uint8_t(r)};
    images.insert({rotate(rr, Vec3{1, 0, 0}), rotate(rr, Vec3{0, 1, 0}),
                   rotate(rr, Vec3{0, 0, 1})});
  }
  CHECK(images.size() == 24);
  for (int a = 0; a < kRotCount; ++a)
    for (int b = 0; b < kRotCount; ++b) {
      Rot c = compose(Rot{uint8_t(a)}, Rot{uint8_t(b)});
      Vec3 probe{1, 2, 3};
      CHECK(rotate(c, probe) == rotate(Rot{uint8_t(a)}, rotate(Rot{uint8_t(b)}, probe)));
    }
}

TEST_CASE("inverse undoes every rotation") {
  for (int r = 0; r < kRotCount; ++r) {
    Rot rr{uint8_t(r)};
    CHECK(compose(inverse(rr), rr).id == 0);
    CHECK(compose(rr, inverse(rr)).id == 0);
  }
}

TEST_CASE("quarter turns about +z follow the right-hand rule") {
  Rot q = rot_about(Dir::PZ, 1);
  CHECK(rotate(q, Vec3{1, 0, 0}) == Vec3{0, 1, 0});
  CHECK(rotate(q, Vec3{0, 1, 0}) == Vec3{-1, 0, 0});
  CHECK(rotate(q, Vec3{0, 0, 1}) == Vec3{0, 0, 1});
  CHECK(rot_about(Dir::PZ, 4).id == 0);
  CHECK(rot_about(Dir::PZ, -1).id == rot_about(Dir::PZ, 3).id);
}

TEST_CASE("quarter turns about a negative axis match the opposite turn") {
  CHECK(rot_about(Dir::NZ, 1).id == rot_about(Dir::PZ, -1).id);
  CHECK(rot_about(Dir::NX, 2).id == rot_about(Dir::PX, 2).id);
}

TEST_CASE("rot_from_images reconstructs every rotation") {
  for (int r = 0; r < kRotCount; ++r) {
    Rot rr{uint8_t(r)};
    Rot back = rot_from_images(rotate(rr, Vec3{1, 0, 0}), rotate(rr, Vec3{0, 0, 1}));
    CHECK(back.id == rr.id);
  }
}

TEST_CASE("pose algebra composes like functions") {
  Pose a{rot_about(Dir::PX, 1), {3, 0, -2}};
  Pose b{rot_about(Dir::PY, 2), {-1, 5, 4}};
  Vec3 p{2, -3, 1};
  CHECK(compose(a, b).apply(p) == a.apply(b.apply(p)));
  Pose ia = inverse(a);
  CHECK(ia.apply(a.apply(p)) == p);
  CHECK(a.apply(ia.apply(p)) == p);
}

TEST_CASE("direction helpers agree with vectors") {
  for (int d = 0; d < kDirCount; ++d) {
    Dir dd = Dir(d);
    CHECK(vec_dir(dir_vec(dd)) == dd);
    CHECK(dir_vec(opposite(dd)) == -dir_vec(dd));
  }
  for (int r = 0; r < kRotCount; ++r)
    for (int d = 0; d < kDirCount; ++d)
      CHECK(dir_vec(rotate(Rot{uint8_t(r)}, Dir(d))) == rotate(Rot{uint8_t(r)}, dir_vec(Dir(d))));
}
