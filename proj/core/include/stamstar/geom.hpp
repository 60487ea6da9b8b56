#pragma once
#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>

namespace stamstar {

struct Vec3 {
  int x = 0, y = 0, z = 0;
  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  friend Vec3 operator*(int k, Vec3 a) { return {k * a.x, k * a.y, k * a.z}; }
  bool operator==(const Vec3&) const = default;
  auto operator<=>(const Vec3&) const = default;
};

inline int manhattan(Vec3 a, Vec3 b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y) + std::abs(a.z - b.z);
}

// Face directions, fixed order used across the whole codebase.
enum class Dir : uint8_t { PX = 0, NX = 1, PY = 2, NY = 3, PZ = 4, NZ = 5 };
constexpr int kDirCount = 6;

inline Vec3 dir_vec(Dir d) {
  static constexpr std::array<Vec3, 6> v{{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}};
  return v[size_t(d)];
}
inline Dir opposite(Dir d) { return Dir(uint8_t(d) ^ 1); }
Dir vec_dir(Vec3 v);  // v must be a unit axis vector
const char* dir_name(Dir d);

// The 24 orientation-preserving cube rotations as integer matrices.
// rot 0 is the identity. Composition and inverse are table-driven.
struct Rot {
  uint8_t id = 0;
  bool operator==(const Rot&) const = default;
  auto operator<=>(const Rot&) const = default;
};

Vec3 rotate(Rot r, Vec3 v);
Dir rotate(Rot r, Dir d);
Rot compose(Rot a, Rot b);  // apply b first, then a
Rot inverse(Rot r);
Rot rot_about(Dir axis, int quarter_turns);  // right-handed about +axis direction
Rot rot_from_images(Vec3 image_of_x, Vec3 image_of_z);  // aborts if not a rotation
constexpr int kRotCount = 24;

// A rigid placement: world = rot * local + offset.
struct Pose {
  Rot rot;
  Vec3 offset;
  Vec3 apply(Vec3 local) const { return rotate(rot, local) + offset; }
  Dir apply(Dir d) const { return rotate(rot, d); }
  bool operator==(const Pose&) const = default;
};
Pose compose(const Pose& a, const Pose& b);  // a after b
Pose inverse(const Pose& p);

struct Vec3Hash {
  size_t operator()(const Vec3& v) const {
    uint64_t h = 1469598103934665603ull;
    for (int c : {v.x, v.y, v.z}) { h ^= uint64_t(uint32_t(c)); h *= 1099511628211ull; }
    return size_t(h);
  }
};

}  // namespace stamstar
