#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "doctest.h"
#include "stamstar/polycube.hpp"

using namespace stamstar;

namespace {

struct TestRng {
  uint64_t s;
  uint64_t next() {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return s >> 33;
  }
};

Shape make_shape(std::vector<Vec3> voxels) {
  Vec3 lo = voxels.at(0);
  for (const Vec3& v : voxels) {
    lo.x = std::min(lo.x, v.x);
    lo.y = std::min(lo.y, v.y);
    lo.z = std::min(lo.z, v.z);
  }
  for (Vec3& v : voxels) v = v - lo;
  std::sort(voxels.begin(), voxels.end());
  return Shape{std::move(voxels)};
}

Shape random_polycube(TestRng& rng, int n) {
  std::vector<Vec3> vox{{0, 0, 0}};
  std::unordered_set<Vec3, Vec3Hash> set{{0, 0, 0}};
  while (int(vox.size()) < n) {
    Vec3 base = vox[rng.next() % vox.size()];
    Vec3 cand = base + dir_vec(Dir(rng.next() % 6));
    if (set.insert(cand).second) vox.push_back(cand);
  }
  return make_shape(std::move(vox));
}

// independent flood fill, sharing nothing with Shape::contains
size_t flood_count(const std::vector<Vec3>& voxels) {
  if (voxels.empty()) return 0;
  std::unordered_set<Vec3, Vec3Hash> set(voxels.begin(), voxels.end());
  std::unordered_set<Vec3, Vec3Hash> seen{voxels[0]};
  std::vector<Vec3> stack{voxels[0]};
  while (!stack.empty()) {
    Vec3 v = stack.back();
    stack.pop_back();
    for (int d = 0; d < 6; ++d) {
      Vec3 n = v + dir_vec(Dir(d));
      if (set.count(n) && seen.insert(n).second) stack.push_back(n);
    }
  }
  return seen.size();
}

struct Dsu {
  std::vector<int> p;
  explicit Dsu(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

}  // namespace

TEST_CASE("load_shape accepts a single voxel and canonicalizes placement") {
  auto r = load_shape("7 -3 11\n");
  REQUIRE(r.shape.has_value());
  CHECK(r.shape->voxels == std::vector<Vec3>{{0, 0, 0}});
  CHECK(r.error == ShapeError::NONE);
}

TEST_CASE("load_shape rejects the documented failure modes") {
  CHECK(load_shape("").error == ShapeError::EMPTY);
  CHECK(load_shape("# only a comment\n\n").error == ShapeError::EMPTY);
  CHECK(load_shape("0 0 0\n2 0 0\n").error == ShapeError::DISCONNECTED);
  CHECK(load_shape("a b c\n").error == ShapeError::PARSE_ERROR);
  CHECK(load_shape("1 2\n").error == ShapeError::PARSE_ERROR);
  CHECK(load_shape("1 2 3 4\n").error == ShapeError::PARSE_ERROR);
  auto dup = load_shape("0 0 0\n0 0 0\n");
  CHECK(dup.error == ShapeError::PARSE_ERROR);
  CHECK(dup.message.find("line 2") != std::string::npos);
}

TEST_CASE("load_shape translates to the min corner and tolerates comments") {
  auto r = load_shape("# a vertical domino, offset\n5 5 9\n5 5 8  # upper\n");
  REQUIRE(r.shape.has_value());
  CHECK(r.shape->voxels == std::vector<Vec3>{{0, 0, 0}, {0, 0, 1}});
}

TEST_CASE("load_shape recount matches an independent flood fill") {
  auto r = load_shape("0 0 0\n1 0 0\n1 1 0\n1 1 1\n");
  REQUIRE(r.shape.has_value());
  CHECK(r.shape->voxels.size() == 4);
  CHECK(flood_count(r.shape->voxels) == 4);
  Vec3 hi{0, 0, 0};
  for (const Vec3& v : r.shape->voxels) {
    hi.x = std::max(hi.x, v.x);
    hi.y = std::max(hi.y, v.y);
    hi.z = std::max(hi.z, v.z);
  }
  CHECK(hi == Vec3{1, 1, 1});
}

TEST_CASE("shape text round trip") {
  TestRng rng{12};
  for (int it = 0; it < 50; ++it) {
    Shape s = random_polycube(rng, 1 + int(rng.next() % 30));
    auto back = load_shape(shape_to_text(s));
    REQUIRE(back.shape.has_value());
    CHECK(*back.shape == s);
  }
}

TEST_CASE("scale produces c^3 copies and keeps connectivity") {
  Shape one = make_shape({{0, 0, 0}});
  Shape block = scale(one, 2);
  std::vector<Vec3> want;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) want.push_back({i, j, k});
  std::sort(want.begin(), want.end());
  CHECK(block.voxels == want);

  Shape domino = make_shape({{0, 0, 0}, {1, 0, 0}});
  CHECK(scale(domino, 2).voxels.size() == 16);

  TestRng rng{99};
  for (int it = 0; it < 30; ++it) {
    Shape s = random_polycube(rng, 1 + int(rng.next() % 20));
    CHECK(scale(s, 1) == s);
    for (int c = 2; c <= 3; ++c) {
      Shape sc = scale(s, c);
      size_t c3 = size_t(c) * size_t(c) * size_t(c);
      CHECK(sc.voxels.size() == c3 * s.voxels.size());
      CHECK(flood_count(sc.voxels) == sc.voxels.size());
    }
  }
}

TEST_CASE("spanning_tree is a tree over 6-adjacent voxels") {
  CHECK(spanning_tree(make_shape({{0, 0, 0}})).empty());

  Shape bar = make_shape({{0, 0, 0}, {0, 0, 1}, {0, 0, 2}});
  auto bar_edges = spanning_tree(bar);
  REQUIRE(bar_edges.size() == 2);

  TestRng rng{7};
  for (int it = 0; it < 40; ++it) {
    Shape s = random_polycube(rng, 1 + int(rng.next() % 40));
    auto edges = spanning_tree(s);
    CHECK(edges.size() + 1 == s.voxels.size());
    std::unordered_map<Vec3, int, Vec3Hash> index;
    for (size_t i = 0; i < s.voxels.size(); ++i) index[s.voxels[i]] = int(i);
    Dsu dsu(s.voxels.size());
    for (const auto& [a, b] : edges) {
      CHECK(manhattan(a, b) == 1);
      REQUIRE(index.count(a));
      REQUIRE(index.count(b));
      CHECK(dsu.unite(index[a], index[b]));  // acyclic: every edge merges
    }
  }
}

TEST_CASE("one voxel gives the 8-cell block cycle") {
  Shape one = make_shape({{0, 0, 0}});
  HamCircuit c = hamiltonian_circuit(one);
  CHECK(c.closed);
  CHECK(c.cells.size() == 8);
  std::string why;
  CHECK_MESSAGE(validate_circuit(one, c, &why), why);
}

TEST_CASE("domino gives a validated 16-cell circuit") {
  Shape domino = make_shape({{0, 0, 0}, {1, 0, 0}});
  HamCircuit c = hamiltonian_circuit(domino);
  CHECK(c.cells.size() == 16);
  std::string why;
  CHECK_MESSAGE(validate_circuit(domino, c, &why), why);
}

TEST_CASE("random polycubes: circuits validate and respect the checkerboard") {
  // block-local edge sets of the two mirror-image 8-cycles, rebuilt here
  // independently of the builder's tables
  auto cycle_edges = [](bool mirrored) {
    std::vector<Vec3> cyc{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                          {0, 1, 1}, {1, 1, 1}, {1, 0, 1}, {0, 0, 1}};
    if (mirrored)
      for (Vec3& v : cyc) v.x = 1 - v.x;
    std::set<std::pair<Vec3, Vec3>> edges;
    for (size_t i = 0; i < 8; ++i) {
      Vec3 a = cyc[i], b = cyc[(i + 1) % 8];
      edges.insert({std::min(a, b), std::max(a, b)});
    }
    return edges;
  };
  auto even_edges = cycle_edges(false);
  auto odd_edges = cycle_edges(true);

  TestRng rng{2026};
  for (int it = 0; it < 120; ++it) {
    Shape s = random_polycube(rng, 1 + int(rng.next() % 50));
    HamCircuit c = hamiltonian_circuit(s);
    std::string why;
    REQUIRE_MESSAGE(validate_circuit(s, c, &why), why);
    size_t n = c.cells.size();
    for (size_t i = 0; i < n; ++i) {
      Vec3 a = c.cells[i], b = c.cells[(i + 1) % n];
      auto fl = [](int v) { return v >= 0 ? v / 2 : (v - 1) / 2; };
      Vec3 ba{fl(a.x), fl(a.y), fl(a.z)};
      Vec3 bb{fl(b.x), fl(b.y), fl(b.z)};
      if (!(ba == bb)) continue;  // splice edges cross between blocks
      Vec3 la = a - 2 * ba, lb = b - 2 * ba;
      bool odd = ((ba.x + ba.y + ba.z) & 1) != 0;
      auto& edges = odd ? odd_edges : even_edges;
      CHECK(edges.count({std::min(la, lb), std::max(la, lb)}) == 1);
    }
  }
}

TEST_CASE("hamiltonian_circuit is deterministic") {
  TestRng rng{5};
  Shape s = random_polycube(rng, 25);
  HamCircuit a = hamiltonian_circuit(s);
  HamCircuit b = hamiltonian_circuit(s);
  CHECK(a.cells == b.cells);
}

TEST_CASE("open_path cuts at the requested cell and keeps the visit order") {
  Shape one = make_shape({{0, 0, 0}});
  HamCircuit c = hamiltonian_circuit(one);
  auto cut = open_path_at(c, Vec3{0, 0, 0});
  REQUIRE(cut.has_value());
  CHECK_FALSE(cut->closed);
  CHECK(cut->cells.size() == 8);
  CHECK(cut->cells.front() == Vec3{0, 0, 0});
  // the dropped wrap edge means the path endpoint neighbors the start
  CHECK(manhattan(cut->cells.back(), cut->cells.front()) == 1);
  for (size_t i = 0; i + 1 < cut->cells.size(); ++i)
    CHECK(manhattan(cut->cells[i], cut->cells[i + 1]) == 1);
  CHECK_FALSE(open_path_at(c, Vec3{9, 9, 9}).has_value());
}

TEST_CASE("open_path FIRST_EXTERIOR starts at a cell with an exposed face") {
  TestRng rng{31};
  for (int it = 0; it < 20; ++it) {
    Shape s = random_polycube(rng, 1 + int(rng.next() % 30));
    HamCircuit c = hamiltonian_circuit(s);
    HamCircuit p = open_path(c, StartRule::FIRST_EXTERIOR);
    CHECK_FALSE(p.closed);
    CHECK(p.cells.size() == c.cells.size());
    std::unordered_set<Vec3, Vec3Hash> cells(c.cells.begin(), c.cells.end());
    bool exposed = false;
    for (int d = 0; d < 6; ++d)
      if (!cells.count(p.cells.front() + dir_vec(Dir(d)))) exposed = true;
    CHECK(exposed);
    auto sorted = p.cells;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  }
}

TEST_CASE("circuit text round trip and header check") {
  TestRng rng{44};
  Shape s = random_polycube(rng, 9);
  HamCircuit c = hamiltonian_circuit(s);
  auto back = circuit_from_text(circuit_to_text(c));
  REQUIRE(back.has_value());
  CHECK(back->cells == c.cells);
  CHECK(back->closed == c.closed);

  HamCircuit p = open_path(c, StartRule::FIRST_EXTERIOR);
  auto back2 = circuit_from_text(circuit_to_text(p));
  REQUIRE(back2.has_value());
  CHECK_FALSE(back2->closed);

  std::string why;
  CHECK_FALSE(circuit_from_text("SIDEWAYS\n0 0 0\n", &why).has_value());
  CHECK(why.find("header") != std::string::npos);
  CHECK_FALSE(circuit_from_text("CLOSED\n", &why).has_value());
}
