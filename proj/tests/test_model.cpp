#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "stamstar/model.hpp"
#include "stamstar/tileset_io.hpp"

using namespace stamstar;

TEST_CASE("glue state machine admits exactly the three live transitions") {
  CHECK(glue_transition(GlueState::LATENT, GlueAction::ACTIVATE) == GlueState::ON);
  CHECK(glue_transition(GlueState::ON, GlueAction::DEACTIVATE) == GlueState::OFF);
  CHECK(glue_transition(GlueState::LATENT, GlueAction::DEACTIVATE) == GlueState::OFF);
  CHECK(!glue_transition(GlueState::OFF, GlueAction::ACTIVATE).has_value());
  CHECK(!glue_transition(GlueState::OFF, GlueAction::DEACTIVATE).has_value());
  CHECK(!glue_transition(GlueState::ON, GlueAction::ACTIVATE).has_value());
}

TEST_CASE("domain complementation pairs x with x*") {
  CHECK(domains_complementary("n", "n*"));
  CHECK(domains_complementary("n*", "n"));
  CHECK(!domains_complementary("n", "n"));
  CHECK(!domains_complementary("n*", "n*"));
  CHECK(!domains_complementary("n", "m*"));
  CHECK(!domains_complementary("no", "n*"));
  CHECK(complement_label("w1b") == "w1b*");
  CHECK(complement_label("w1b*") == "w1b");
}

static TileSet two_tile_set() {
  TileSet ts;
  TileType a;
  a.name = "a";
  a.glues.push_back({"n", Dir::PX, 2, 2, 2, false, LengthClass::RIGID_CUBIC, GlueState::ON});
  a.glues.push_back({"m", Dir::PY, 2, 2, 1, false, LengthClass::RIGID_CUBIC, GlueState::LATENT});
  a.signals.push_back({0, 1, GlueAction::ACTIVATE});
  TileType b;
  b.name = "b";
  b.glues.push_back({"n*", Dir::NX, 2, 2, 2, false, LengthClass::RIGID_CUBIC, GlueState::ON});
  ts.types = {a, b};
  return ts;
}

TEST_CASE("glue type compatibility is symmetric and strict") {
  TileSet ts = two_tile_set();
  const GlueDef& n = ts[0].glues[0];
  const GlueDef& nstar = ts[1].glues[0];
  CHECK(glue_types_compatible(n, nstar));
  CHECK(glue_types_compatible(nstar, n));
  GlueDef weak = nstar;
  weak.strength = 1;
  CHECK(!glue_types_compatible(n, weak));
  GlueDef flexed = nstar;
  flexed.length = LengthClass::FLEXIBLE;
  flexed.flexible = true;
  CHECK(!glue_types_compatible(n, flexed));
  CHECK(!glue_types_compatible(n, n));
}

TEST_CASE("validate_tileset accepts a clean set and reports defects") {
  TileSet ts = two_tile_set();
  CHECK(validate_tileset(ts).empty());

  TileSet bad = ts;
  bad.types[0].signals.push_back({0, 1, GlueAction::DEACTIVATE});  // duplicate pair
  CHECK(!validate_tileset(bad).empty());

  bad = ts;
  bad.types[0].signals[0].target = 9;
  CHECK(!validate_tileset(bad).empty());

  bad = ts;
  bad.types[1].glues[0].strength = 1;  // n* disagrees with n
  CHECK(!validate_tileset(bad).empty());

  bad = ts;
  bad.types[0].glues[0].flexible = true;  // flag without FLEXIBLE class
  CHECK(!validate_tileset(bad).empty());

  bad = ts;
  bad.types[0].signals.push_back({0, 0, GlueAction::DEACTIVATE});
  CHECK(validate_tileset(bad, 2).empty());
  CHECK(!validate_tileset(bad, 1).empty());  // fan-out budget
}

TEST_CASE("slab thin-face glues must anchor on the strip") {
  TileSet ts;
  TileType s;
  s.name = "s";
  s.body = TileBody::SLAB;
  s.glues.push_back({"q", Dir::PX, 2, 1, 1, false, LengthClass::RIGID_CUBIC, GlueState::ON});
  ts.types = {s};
  CHECK(!validate_tileset(ts).empty());
  ts.types[0].glues[0].b = 0;
  CHECK(validate_tileset(ts).empty());
}

TEST_CASE("system files round-trip through emit and parse") {
  SystemSpec sys;
  sys.tiles = two_tile_set();
  sys.tiles.tau = 2;
  sys.meta.emplace_back("wasteBound", "4");
  sys.meta.emplace_back("note", "two words here");
  sys.seed.push_back({"a", Site::cube({0, 0, 0}), Rot{0}});
  sys.seed.push_back({"b", Site::slab({1, 0, 0}, Dir::PZ), rot_about(Dir::PZ, 1)});

  std::string text = emit_system(sys);
  ParseResult pr = parse_system(text);
  REQUIRE(pr.error.empty());
  REQUIRE(pr.system.has_value());
  const SystemSpec& back = *pr.system;
  CHECK(back.tiles.tau == sys.tiles.tau);
  CHECK(back.meta == sys.meta);
  REQUIRE(back.tiles.types.size() == sys.tiles.types.size());
  for (size_t i = 0; i < back.tiles.types.size(); ++i) {
    const TileType &x = back.tiles.types[i], &y = sys.tiles.types[i];
    CHECK(x.name == y.name);
    CHECK(x.body == y.body);
    CHECK(x.in_soup == y.in_soup);
    REQUIRE(x.glues.size() == y.glues.size());
    for (size_t g = 0; g < x.glues.size(); ++g) {
      CHECK(x.glues[g].domain == y.glues[g].domain);
      CHECK(x.glues[g].face == y.glues[g].face);
      CHECK(x.glues[g].a == y.glues[g].a);
      CHECK(x.glues[g].b == y.glues[g].b);
      CHECK(x.glues[g].strength == y.glues[g].strength);
      CHECK(x.glues[g].flexible == y.glues[g].flexible);
      CHECK(x.glues[g].length == y.glues[g].length);
      CHECK(x.glues[g].init == y.glues[g].init);
    }
    REQUIRE(x.signals.size() == y.signals.size());
    for (size_t s = 0; s < x.signals.size(); ++s) {
      CHECK(x.signals[s].source == y.signals[s].source);
      CHECK(x.signals[s].target == y.signals[s].target);
      CHECK(x.signals[s].action == y.signals[s].action);
    }
  }
  REQUIRE(back.seed.size() == sys.seed.size());
  for (size_t i = 0; i < back.seed.size(); ++i) CHECK(back.seed[i] == sys.seed[i]);
  // canonical text is a fixed point
  CHECK(emit_system(back) == text);
}

TEST_CASE("parser reports malformed input with line numbers") {
  CHECK(!parse_system("").error.empty());
  CHECK(!parse_system("bogus v1\n").error.empty());
  CHECK(!parse_system("stamstar-system v1\nglue n +x 2 2 1 rigid cubic on\n").error.empty());
  CHECK(!parse_system("stamstar-system v1\ntile t cube soup\n").error.empty());
  ParseResult pr = parse_system("stamstar-system v1\ntile t cube soup\nglue n +q 2 2 1 rigid cubic on\nend\n");
  CHECK(pr.error.find("line 3") != std::string::npos);
}
