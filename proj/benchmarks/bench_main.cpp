#include <benchmark/benchmark.h>

#include "stamstar/assembly.hpp"
#include "stamstar/stability.hpp"

using namespace stamstar;

namespace {

TileSet cube_set() {
  TileSet ts;
  TileType t;
  t.name = "c";
  const char* doms[6] = {"x", "x*", "y", "y*", "z", "z*"};
  for (int d = 0; d < 6; ++d)
    t.glues.push_back({doms[d], Dir(d), 2, 2, 1, false, LengthClass::RIGID_CUBIC, GlueState::ON});
  ts.types = {t};
  return ts;
}

Assembly cube_block(const TileSet& ts, int n) {
  Assembly a;
  auto idx = [n](int x, int y, int z) { return (x * n + y) * n + z; };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) a.add_tile(ts, 0, Site::cube({x, y, z}), Rot{0});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        if (x + 1 < n) a.add_bond(idx(x, y, z), 0, idx(x + 1, y, z), 1);
        if (y + 1 < n) a.add_bond(idx(x, y, z), 2, idx(x, y + 1, z), 3);
        if (z + 1 < n) a.add_bond(idx(x, y, z), 4, idx(x, y, z + 1), 5);
      }
  return a;
}

}  // namespace

static void BM_CanonicalHash(benchmark::State& state) {
  TileSet ts = cube_set();
  Assembly a = cube_block(ts, int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(canonical_hash(ts, a, true));
}
BENCHMARK(BM_CanonicalHash)->Arg(2)->Arg(4)->Arg(6);

static void BM_TauStable(benchmark::State& state) {
  TileSet ts = cube_set();
  Assembly a = cube_block(ts, int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tau_stable(ts, a, 2));
}
BENCHMARK(BM_TauStable)->Arg(2)->Arg(4)->Arg(6);

BENCHMARK_MAIN();
