#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stamstar/geom.hpp"

namespace stamstar {

enum class GlueState : uint8_t { LATENT, ON, OFF };
enum class GlueAction : uint8_t { ACTIVATE, DEACTIVATE };

// State machine for a glue hit by a signal action. Returns nullopt when the
// action has no effect (ON+activate, OFF+anything, LATENT handled below).
//   LATENT + activate   -> ON
//   ON     + deactivate -> OFF
//   LATENT + deactivate -> OFF
// OFF is absorbing.
std::optional<GlueState> glue_transition(GlueState s, GlueAction a);

const char* glue_state_name(GlueState s);
const char* glue_action_name(GlueAction a);

// Glue geometry classes. A rigid cubic glue spans the 2-epsilon inter-cell
// gap, a rigid flat glue requires flush contact, a flexible glue reaches
// anywhere within (3/2)*sqrt(2)*epsilon.
enum class LengthClass : uint8_t { RIGID_CUBIC, RIGID_FLAT, FLEXIBLE };

const char* length_class_name(LengthClass c);

// Domain labels pair "x" with "x*".
bool is_complement_label(std::string_view domain);
std::string complement_label(std::string_view domain);
bool domains_complementary(std::string_view a, std::string_view b);

enum class TileBody : uint8_t { CUBE, SLAB };

// One glue site on a tile type. face/anchor are in the tile's local frame:
// a cube spans [0,4]^3 quarter-units, a slab spans [0,4]^2 x {0} with its
// big faces along local z (PZ = outward face). Anchors (a,b) index the 5x5
// lattice of quarter-unit points on the face; thin slab faces use b = 0.
struct GlueDef {
  std::string domain;
  Dir face = Dir::PX;
  uint8_t a = 2, b = 2;
  int strength = 1;
  bool flexible = false;
  LengthClass length = LengthClass::RIGID_CUBIC;
  GlueState init = GlueState::LATENT;
};

// Signal wired into a tile type: when `source` becomes bound, `action` is
// queued against `target` (indices into TileType::glues).
struct SignalDef {
  uint16_t source = 0;
  uint16_t target = 0;
  GlueAction action = GlueAction::ACTIVATE;
};

// Per-instance signal lifecycle. PRE -> FIRING happens when the source glue
// binds and the action could still change the target; FIRING -> POST when the
// scheduler executes it. Signals never rearm.
enum class SigPhase : uint8_t { PRE, FIRING, POST };

struct TileType {
  std::string name;
  TileBody body = TileBody::CUBE;
  bool in_soup = true;
  std::vector<GlueDef> glues;
  std::vector<SignalDef> signals;

  int glue_index(std::string_view domain, Dir face) const;  // -1 if absent
};

struct TileSet {
  std::vector<TileType> types;
  int tau = 2;

  int index_of(std::string_view name) const;  // -1 if absent
  const TileType& operator[](size_t i) const { return types[i]; }
  size_t size() const { return types.size(); }
};

// Structural checks independent of any assembly:
//  - signal glue indices in range, at most one signal per (source,target)
//  - per-glue signal fan-out within `signal_budget` when budget >= 0
//  - glues sharing a domain (or its complement) agree on strength, length
//    class and flexibility
//  - flexible flag iff FLEXIBLE length class
//  - slab glue faces respect the slab footprint (thin faces use b = 0)
// Returns human-readable problems; empty means valid.
std::vector<std::string> validate_tileset(const TileSet& ts, int signal_budget = -1);

// Domain-level binding test: complementary labels, equal strength, equal
// length class. Geometry and ON-ness are checked elsewhere.
bool glue_types_compatible(const GlueDef& a, const GlueDef& b);

}  // namespace stamstar
