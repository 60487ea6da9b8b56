#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <climits>

#include "doctest.h"
#include "stamstar/assembly.hpp"
#include "stamstar/rng.hpp"
#include "stamstar/stability.hpp"

using namespace stamstar;

namespace {

// one cube type with a strength-s glue on every face, all ON
TileSet cube_set(int s = 1) {
  TileSet ts;
  TileType t;
  t.name = "c";
  const char* doms[6] = {"x", "x*", "y", "y*", "z", "z*"};
  for (int d = 0; d < 6; ++d)
    t.glues.push_back(
        {doms[d], Dir(d), 2, 2, s, false, LengthClass::RIGID_CUBIC, GlueState::ON});
  ts.types = {t};
  return ts;
}

// assembly from explicit cells, bonding adjacent cells with matched faces
Assembly block_of(const TileSet& ts, const std::vector<Vec3>& cells) {
  Assembly a;
  for (Vec3 c : cells) a.add_tile(ts, 0, Site::cube(c), Rot{0});
  for (size_t i = 0; i < cells.size(); ++i)
    for (size_t j = i + 1; j < cells.size(); ++j) {
      Vec3 d = cells[j] - cells[i];
      if (manhattan(cells[i], cells[j]) != 1) continue;
      Dir f = vec_dir(d);
      // glue index == face index in cube_set; bond matched complementary faces
      uint32_t gi = uint32_t(f), gj = uint32_t(opposite(f));
      const std::string& di = ts[0].glues[gi].domain;
      const std::string& dj = ts[0].glues[gj].domain;
      if (!domains_complementary(di, dj)) continue;
      a.add_bond(uint32_t(i), gi, uint32_t(j), gj);
    }
  return a;
}

}  // namespace

TEST_CASE("occupancy rejects two tiles in one site") {
  TileSet ts = cube_set();
  Assembly a;
  a.add_tile(ts, 0, Site::cube({0, 0, 0}), Rot{0});
  a.add_tile(ts, 0, Site::cube({1, 0, 0}), Rot{0});
  CHECK(occupancy(a).has_value());
  a.add_tile(ts, 0, Site::cube({1, 0, 0}), Rot{0});
  CHECK(!occupancy(a).has_value());
  CHECK(!lattice_embed(a).has_value());
}

TEST_CASE("lattice embedding of a rigid pair and an eight-block") {
  TileSet ts = cube_set();
  Assembly pair = block_of(ts, {{0, 0, 0}, {1, 0, 0}});
  auto occ = lattice_embed(pair);
  REQUIRE(occ.has_value());
  CHECK(occ->size() == 2);
  CHECK(occ->count(Site::cube({0, 0, 0})) == 1);
  CHECK(occ->count(Site::cube({1, 0, 0})) == 1);

  std::vector<Vec3> cells;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) cells.push_back({x, y, z});
  Assembly block = block_of(ts, cells);
  CHECK(block.bonds.size() == 12);
  auto bocc = lattice_embed(block);
  REQUIRE(bocc.has_value());
  CHECK(bocc->size() == 8);
}

TEST_CASE("canonical form is invariant under rigid motion") {
  TileSet ts = cube_set();
  Assembly a = block_of(ts, {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}});
  uint64_t h_full = canonical_hash(ts, a, true);
  uint64_t h_type = canonical_hash(ts, a, false);
  Rng rng(7);
  for (int it = 0; it < 40; ++it) {
    Assembly b = a;
    transform(b, Rot{uint8_t(rng.bounded(kRotCount))},
              {int(rng.bounded(9)) - 4, int(rng.bounded(9)) - 4, int(rng.bounded(9)) - 4});
    CHECK(canonical_hash(ts, b, true) == h_full);
    CHECK(canonical_hash(ts, b, false) == h_type);
  }
  // state-level identity distinguishes a changed glue state; type-level does not
  Assembly c = a;
  c.tiles[0].glue[4] = GlueState::OFF;
  CHECK(canonical_hash(ts, c, true) != h_full);
  CHECK(canonical_hash(ts, c, false) == h_type);
}

TEST_CASE("transform keeps slab sites attached to their cubes") {
  TileSet ts = cube_set();
  TileType slab;
  slab.name = "s";
  slab.body = TileBody::SLAB;
  ts.types.push_back(slab);
  Assembly a;
  a.add_tile(ts, 0, Site::cube({2, 1, 0}), Rot{0});
  a.add_tile(ts, 1, Site::slab({2, 1, 0}, Dir::PZ), Rot{0});
  for (int r = 0; r < kRotCount; ++r) {
    Assembly b = a;
    transform(b, Rot{uint8_t(r)}, {5, -3, 2});
    // slab key cell must still be the cube's cell, face rotated accordingly
    CHECK(b.tiles[1].site.cell == b.tiles[0].site.cell);
    CHECK(b.tiles[1].site.face() == rotate(Rot{uint8_t(r)}, Dir::PZ));
  }
}

TEST_CASE("a four-cycle of strength-1 bonds is stable at threshold 2") {
  TileSet ts = cube_set(1);
  Assembly ring = block_of(ts, {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}});
  CHECK(ring.bonds.size() == 4);
  CHECK(min_bond_cut(ts, ring) == 2);
  CHECK(tau_stable(ts, ring, 2));
  CHECK(!break_components(ts, ring, 2).has_value());
}

TEST_CASE("a strength-1 bridge breaks into both sides exactly once") {
  TileSet ts = cube_set(1);
  // bar of three: two bridges, each strength 1
  Assembly bar = block_of(ts, {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}});
  CHECK(min_bond_cut(ts, bar) == 1);
  CHECK(!tau_stable(ts, bar, 2));
  auto halves = break_components(ts, bar, 2);
  REQUIRE(halves.has_value());
  CHECK(halves->first.size() + halves->second.size() == 3);
  auto pieces = resolve_breaks(ts, bar, 2);
  size_t total = 0;
  for (const Assembly& p : pieces) {
    total += p.size();
    CHECK(tau_stable(ts, p, 2));
  }
  CHECK(total == 3);
  CHECK(pieces.size() == 3);
}

TEST_CASE("strength-2 bonds keep a chain stable") {
  TileSet ts = cube_set(2);
  Assembly bar = block_of(ts, {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}});
  CHECK(tau_stable(ts, bar, 2));
  CHECK(min_bond_cut(ts, bar) == 2);
}

TEST_CASE("minimum cut matches exhaustive search on random small graphs") {
  Rng rng(0xC0FFEE);
  TileSet ts = cube_set(1);
  for (int it = 0; it < 300; ++it) {
    // random connected assembly on n nodes; bonds carry strength 1 or 2
    int n = 2 + int(rng.bounded(7));
    Assembly a;
    // place tiles far apart; bonds here are graph edges, geometry unused
    for (int i = 0; i < n; ++i) a.add_tile(ts, 0, Site::cube({i * 3, 0, 0}), Rot{0});
    struct E {
      int u, v, s;
    };
    std::vector<E> edges;
    for (int v = 1; v < n; ++v) edges.push_back({int(rng.bounded(uint64_t(v))), v, 1});
    int extra = int(rng.bounded(uint64_t(n)));
    for (int k = 0; k < extra; ++k) {
      int u = int(rng.bounded(uint64_t(n))), v = int(rng.bounded(uint64_t(n)));
      if (u != v) edges.push_back({u, v, 1});
    }
    for (E& e : edges) e.s = 1 + int(rng.bounded(2));
    // exhaustive min cut over vertex bipartitions
    int best = INT_MAX;
    for (int mask = 1; mask < (1 << n) - 1; ++mask) {
      int cut = 0;
      for (const E& e : edges)
        if (((mask >> e.u) & 1) != ((mask >> e.v) & 1)) cut += e.s;
      best = std::min(best, cut);
    }
    // A strength-s edge is represented as s parallel strength-1 bonds, which
    // has the same cut structure. Each tile pair can host three such bonds
    // (one per complementary face pair); denser draws are skipped, not faked.
    Assembly fa;
    for (int i = 0; i < n; ++i) fa.add_tile(ts, 0, Site::cube({i * 3, 0, 0}), Rot{0});
    std::vector<std::vector<int>> used(n, std::vector<int>(n, 0));
    bool representable = true;
    for (const E& e : edges) {
      for (int dup = 0; dup < e.s && representable; ++dup) {
        // pick an unused complementary face pair for this tile pair
        int tries = 0;
        for (; tries < 3; ++tries) {
          uint32_t gi = uint32_t(2 * tries);      // +x, +y, +z glues
          uint32_t gj = uint32_t(2 * tries + 1);  // -x, -y, -z glues
          if (!fa.glue_bound(uint32_t(e.u), gi) && !fa.glue_bound(uint32_t(e.v), gj)) {
            fa.add_bond(uint32_t(e.u), gi, uint32_t(e.v), gj);
            break;
          }
        }
        if (tries == 3) representable = false;
      }
      if (!representable) break;
    }
    if (!representable) continue;  // rare dense case; skip rather than fake
    CHECK(min_bond_cut(ts, fa) == best);
    CHECK(tau_stable(ts, fa, 2) == (best >= 2));
  }
}

TEST_CASE("extract preserves inner bonds and drops crossing ones") {
  TileSet ts = cube_set(1);
  Assembly bar = block_of(ts, {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}});
  Assembly left = extract(bar, {0, 1});
  CHECK(left.size() == 2);
  CHECK(left.bonds.size() == 1);
  Assembly mixed = extract(bar, {0, 2});
  CHECK(mixed.bonds.empty());
  auto comps = bond_components(mixed);
  CHECK(comps.size() == 2);
}
