#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stamstar/assembly.hpp"
#include "stamstar/rng.hpp"
#include "stamstar/stability.hpp"
#include "stamstar/tileset_io.hpp"

namespace stamstar {

inline constexpr uint64_t kInfCount = ~0ull;

struct EngineConfig {
  uint64_t seed = 1;
  uint64_t budget = 0;
  int64_t tile_budget = -1;  // copies per soup tile type; -1 = unlimited
  uint64_t starvation_bound = 10000;
  bool strict_census = false;  // census classes by state-level identity
  bool want_trace = true;      // record event lines (census always computed)
};

enum class EventKind : uint8_t { COMBINE, BREAK, HINGE, INTRABIND, SIGNAL_EXEC };
constexpr int kEventKinds = 5;

struct CensusRow {
  uint64_t class_hash = 0;  // type-level identity (state-level in strict mode)
  uint64_t rep_hash = 0;    // representative state-level hash
  uint64_t count = 0;       // kInfCount renders as "inf"
  uint64_t size = 0;        // tiles per assembly
  bool terminal = false;
};

enum class RunStatus : uint8_t { BUDGET_EXHAUSTED, STUCK };

// One supertile species: a canonical-pose representative plus how many
// identical instances exist. All caches describe the representative and stay
// valid because species are immutable once created.
struct Species {
  Assembly proto;
  uint64_t full_hash = 0;
  uint64_t type_hash = 0;
  uint64_t count = 0;
  bool soup = false;  // replenishing singleton

  struct SurfaceGlue {
    uint32_t tile = 0, glue = 0;
    AnchorPt anchor{};
    Dir face = Dir::PX;
    LengthClass length = LengthClass::RIGID_CUBIC;
    int strength = 0;
  };
  std::vector<SurfaceGlue> on_unbound;
  std::vector<std::pair<uint32_t, uint32_t>> firing;  // (tile, signal index)
  struct GluePair {
    uint32_t tile_a = 0, glue_a = 0, tile_b = 0, glue_b = 0;
    int strength = 0;
  };
  std::vector<GluePair> in_pairs;          // coincident complementary ON pairs
  std::vector<Assembly> hinge_successors;  // deduped one-hinge rotations
  std::unordered_map<Site, int, SiteHash> occupied;
  // base domain labels on the surface, split by star side; a species pair
  // can dock only when one's plain set meets the other's starred set
  std::set<std::string> plain_bases, star_bases;
};

// A way two species can dock: relative pose of B against A plus the full
// contact set of coincident complementary ON glue pairs under that pose.
struct CombineClass {
  Rot rot{};      // applied to B's proto
  Vec3 shift{};   // cell translation applied after rotation
  struct Contact {
    uint32_t tile_a = 0, glue_a = 0;  // on A
    uint32_t tile_b = 0, glue_b = 0;  // on B (proto indices)
    int strength = 0;
  };
  std::vector<Contact> contacts;
  int total_strength = 0;
};

class SystemState {
 public:
  // Throws std::runtime_error on malformed systems (overlapping or unstable
  // seed, invalid tile references, validation failures).
  SystemState(const SystemSpec& spec, const EngineConfig& cfg);

  // Advance by one event (scheduled or forced). False when stuck.
  bool step();

  // Events so far; strictly increases by one per step.
  uint64_t clock() const { return clock_; }

  // Counts of currently enabled actions per category, in kind order
  // {combine, break, hinge, intrabind, signal}. Forced pending work reports
  // under its own kind and preempts the scheduler.
  std::array<uint64_t, kEventKinds> enabled_action_counts();

  std::vector<CensusRow> census();

  // True when no partner among the compiled tile types or live species can
  // tau-attach, no coincident complementary ON pair exists, and no signal is
  // FIRING. (Attachment is tested against the current species set plus every
  // tile type, the strongest witnesses available.)
  bool species_terminal(const Species& s);

  const std::map<uint64_t, Species>& live() const { return live_; }
  const Species* find_species(uint64_t full_hash) const;
  const TileSet& tiles() const { return spec_.tiles; }
  const SystemSpec& spec() const { return spec_; }
  uint64_t system_hash() const { return system_hash_; }
  const std::string& trace() const { return trace_; }
  const std::array<uint64_t, kEventKinds>& starvation_ledger() const { return ages_; }
  uint64_t max_age_seen() const { return max_age_seen_; }

  RunStatus run();  // steps until budget or stuck, then appends the census

 private:
  struct Pending {
    // Either an assembly awaiting stabilization (BREAK events while unstable)
    // or an assembly with queued immediate post-combine intrabinds.
    Assembly state;
    std::vector<CombineClass::Contact> binds;  // empty = stabilization item
  };
  using CombineKey = std::tuple<uint64_t, uint64_t, uint64_t>;  // ha<=hb, idx

  uint64_t deposit(Assembly a);
  void take_instance(uint64_t hash);
  const Species* find_any(uint64_t hash) const;  // live or archived
  void build_caches(Species& s);
  const std::vector<CombineClass>& combine_classes(uint64_t ha, uint64_t hb);
  void on_live_added(uint64_t h);
  void on_live_removed(uint64_t h);
  void refresh_self_pair(uint64_t h);
  void add_pair_entries(uint64_t ha, uint64_t hb);
  void fire_signals(Assembly& a, uint32_t tile, uint32_t glue);
  void emit(EventKind kind, const std::string& line);
  bool exec_forced();
  void exec_combine(uint64_t ha, uint64_t hb, size_t cls_index);
  void exec_signal(uint64_t h, uint32_t tile, uint32_t sig);
  void exec_intrabind(uint64_t h, Species::GluePair p);
  void drain_settled();
  void exec_hinge(uint64_t h, size_t succ_index);

  SystemSpec spec_;
  EngineConfig cfg_;
  uint64_t system_hash_ = 0;
  Rng rng_;
  uint64_t clock_ = 0;
  std::string trace_;

  std::map<uint64_t, Species> live_;     // count > 0
  std::map<uint64_t, Species> archive_;  // seen before, count == 0
  std::map<std::pair<uint64_t, uint64_t>, std::vector<CombineClass>> combine_cache_;
  std::set<CombineKey> combines_;  // currently enabled docking classes
  std::unordered_map<uint64_t, std::vector<CombineKey>> keys_by_species_;
  uint64_t hinge_total_ = 0, intrabind_total_ = 0, signal_total_ = 0;
  std::vector<uint64_t> type_singleton_hashes_;  // one species per tile type
  std::deque<Pending> forced_;
  std::array<uint64_t, kEventKinds> ages_{};
  uint64_t max_age_seen_ = 0;
};

// Convenience one-shot runner. Returns the census and status; the trace text
// (header, events, census) is appended to *trace_out when non-null.
struct RunResult {
  RunStatus status = RunStatus::BUDGET_EXHAUSTED;
  uint64_t events = 0;
  std::vector<CensusRow> census;
};
RunResult run_system(const SystemSpec& spec, const EngineConfig& cfg,
                     std::string* trace_out);

// Re-runs the trace's recorded (seed, budget, bounds) against the given
// system and byte-compares. Returns empty on success, else a mismatch report.
std::string verify_trace(const SystemSpec& spec, const std::string& trace_text);

std::string render_census(const std::vector<CensusRow>& rows);

}  // namespace stamstar
