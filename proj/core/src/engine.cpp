#include "stamstar/engine.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "stamstar/hash.hpp"
#include "stamstar/lattice.hpp"

namespace stamstar {

namespace {

std::string hex16(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string count_str(uint64_t c) {
  return c == kInfCount ? std::string("inf") : std::to_string(c);
}

struct Dsu {
  std::vector<int> p;
  explicit Dsu(size_t n) : p(n) {
    for (size_t i = 0; i < n; ++i) p[i] = int(i);
  }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

// All inclusion-minimal subsets of contacts whose strengths sum to >= tau and
// whose glue endpoints are pairwise distinct, in index-lexicographic order.
std::vector<std::vector<int>> minimal_sufficient_subsets(
    const std::vector<CombineClass::Contact>& contacts, int tau) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto conflicts = [&](int j) {
    for (int i : cur) {
      const auto& a = contacts[i];
      const auto& b = contacts[j];
      if (a.tile_a == b.tile_a && a.glue_a == b.glue_a) return true;
      if (a.tile_b == b.tile_b && a.glue_b == b.glue_b) return true;
    }
    return false;
  };
  auto rec = [&](auto&& self, size_t start, int sum, int min_str) -> void {
    if (sum >= tau) {
      if (sum - min_str < tau) out.push_back(cur);
      return;
    }
    for (size_t j = start; j < contacts.size(); ++j) {
      if (conflicts(int(j))) continue;
      cur.push_back(int(j));
      self(self, j + 1, sum + contacts[j].strength,
           std::min(min_str, contacts[j].strength));
      cur.pop_back();
    }
  };
  rec(rec, 0, 0, INT32_MAX);
  return out;
}

std::string base_label(std::string_view domain) {
  if (!domain.empty() && domain.back() == '*')
    return std::string(domain.substr(0, domain.size() - 1));
  return std::string(domain);
}

bool sets_intersect(const std::set<std::string>& a, const std::set<std::string>& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) return true;
    if (*ia < *ib)
      ++ia;
    else
      ++ib;
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// construction

SystemState::SystemState(const SystemSpec& spec, const EngineConfig& cfg)
    : spec_(spec), cfg_(cfg), rng_(cfg.seed) {
  std::vector<std::string> problems = validate_tileset(spec_.tiles);
  if (!problems.empty())
    throw std::runtime_error("invalid tile set: " + problems.front());
  if (spec_.tiles.tau < 1) throw std::runtime_error("tau must be at least 1");
  system_hash_ = fnv1a64(emit_system(spec_));

  const TileSet& ts = spec_.tiles;

  // one species per tile type; soup types get their replenishing count
  for (size_t ty = 0; ty < ts.size(); ++ty) {
    const TileType& tt = ts.types[ty];
    Site site = tt.body == TileBody::CUBE ? Site::cube({0, 0, 0})
                                          : Site::slab({0, 0, 0}, Dir::PZ);
    Assembly one = singleton_assembly(ts, int(ty), site, Rot{0});
    Assembly canon = canonical_form(ts, one);
    uint64_t h = canonical_hash(ts, canon, true);
    type_singleton_hashes_.push_back(h);
    Species s;
    s.proto = std::move(canon);
    s.full_hash = h;
    s.type_hash = canonical_hash(ts, s.proto, false);
    if (tt.in_soup) {
      s.count = cfg_.tile_budget >= 0 ? uint64_t(cfg_.tile_budget) : kInfCount;
      s.soup = cfg_.tile_budget < 0;
    } else {
      s.count = 0;
    }
    build_caches(s);
    if (s.count > 0) {
      live_.emplace(h, std::move(s));
    } else {
      archive_.emplace(h, std::move(s));
    }
  }
  for (auto& [h, s] : live_) on_live_added(h);

  // seed: place, close coincident complementary ON pairs into bonds, split
  // into supertiles, require tau-stability of each
  if (!spec_.seed.empty()) {
    Assembly seed;
    for (const Placement& p : spec_.seed) {
      int ty = ts.index_of(p.type);
      if (ty < 0) throw std::runtime_error("seed places unknown type " + p.type);
      if (!placement_rot_valid(ts[ty].body, p.site, p.rot))
        throw std::runtime_error("seed orientation invalid for " + p.type);
      seed.add_tile(ts, ty, p.site, p.rot);
      TileInst& inst = seed.tiles.back();
      for (const auto& [gi, st] : p.glue_init) {
        if (gi >= inst.glue.size())
          throw std::runtime_error("seed glue override out of range for " + p.type);
        inst.glue[gi] = st;
      }
      for (uint16_t si : p.fired) {
        if (si >= inst.sig.size())
          throw std::runtime_error("seed signal override out of range for " + p.type);
        inst.sig[si] = SigPhase::POST;
      }
    }
    if (!occupancy(seed)) throw std::runtime_error("seed placements overlap");
    // deterministic greedy closure
    struct End {
      uint32_t tile, glue;
      AnchorPt anchor;
      Dir face;
    };
    std::vector<End> ends;
    for (uint32_t i = 0; i < seed.tiles.size(); ++i) {
      const TileType& tt = ts[seed.tiles[i].type];
      for (uint32_t g = 0; g < tt.glues.size(); ++g) {
        if (seed.tiles[i].glue[g] != GlueState::ON) continue;
        ends.push_back({i, g, tile_anchor(ts, seed.tiles[i], g),
                        tile_glue_face(ts, seed.tiles[i], g)});
      }
    }
    for (size_t x = 0; x < ends.size(); ++x) {
      for (size_t y = x + 1; y < ends.size(); ++y) {
        const End& a = ends[x];
        const End& b = ends[y];
        if (a.tile == b.tile) continue;
        if (seed.glue_bound(a.tile, a.glue) || seed.glue_bound(b.tile, b.glue)) continue;
        const GlueDef& ga = ts[seed.tiles[a.tile].type].glues[a.glue];
        const GlueDef& gb = ts[seed.tiles[b.tile].type].glues[b.glue];
        if (!glue_types_compatible(ga, gb)) continue;
        if (!geometry_bindable(a.anchor, a.face, b.anchor, b.face, ga.length)) continue;
        seed.add_bond(a.tile, a.glue, b.tile, b.glue);
        fire_signals(seed, a.tile, a.glue);
        fire_signals(seed, b.tile, b.glue);
      }
    }
    for (const std::vector<int>& comp : bond_components(seed)) {
      Assembly part = extract(seed, comp);
      if (!tau_stable(ts, part, ts.tau))
        throw std::runtime_error("seed supertile is not tau-stable");
      deposit(std::move(part));
    }
  }

  if (cfg_.want_trace) {
    std::ostringstream os;
    os << "stamstar-trace v1\n";
    os << "rng splitmix64-ctr " << cfg_.seed << "\n";
    os << "system " << hex16(system_hash_) << "\n";
    os << "tau " << ts.tau << "\n";
    os << "budget " << cfg_.budget << "\n";
    os << "tile-budget "
       << (cfg_.tile_budget < 0 ? std::string("inf") : std::to_string(cfg_.tile_budget))
       << "\n";
    os << "starvation-bound " << cfg_.starvation_bound << "\n";
    os << "strict-census " << (cfg_.strict_census ? 1 : 0) << "\n";
    trace_ += os.str();
  }
}

// ---------------------------------------------------------------------------
// species bookkeeping

const Species* SystemState::find_species(uint64_t h) const {
  auto it = live_.find(h);
  return it == live_.end() ? nullptr : &it->second;
}

const Species* SystemState::find_any(uint64_t h) const {
  if (const Species* s = find_species(h)) return s;
  auto it = archive_.find(h);
  return it == archive_.end() ? nullptr : &it->second;
}

void SystemState::build_caches(Species& s) {
  const TileSet& ts = spec_.tiles;
  auto occ = occupancy(s.proto);
  assert(occ);
  s.occupied = std::move(*occ);

  s.on_unbound.clear();
  s.firing.clear();
  s.in_pairs.clear();
  s.plain_bases.clear();
  s.star_bases.clear();
  for (uint32_t i = 0; i < s.proto.tiles.size(); ++i) {
    const TileInst& t = s.proto.tiles[i];
    if (t.abstracted) continue;
    const TileType& tt = ts[t.type];
    for (uint32_t g = 0; g < tt.glues.size(); ++g) {
      if (t.glue[g] != GlueState::ON || s.proto.glue_bound(i, g)) continue;
      const GlueDef& gd = tt.glues[g];
      s.on_unbound.push_back({i, g, tile_anchor(ts, t, g), tile_glue_face(ts, t, g),
                              gd.length, gd.strength});
      if (!gd.domain.empty() && gd.domain.back() == '*')
        s.star_bases.insert(base_label(gd.domain));
      else
        s.plain_bases.insert(gd.domain);
    }
    for (uint32_t k = 0; k < tt.signals.size(); ++k)
      if (t.sig[k] == SigPhase::FIRING) s.firing.push_back({i, k});
  }

  // coincident complementary ON pairs inside the supertile
  std::unordered_map<Vec3, std::vector<int>, Vec3Hash> by_q;
  for (size_t k = 0; k < s.on_unbound.size(); ++k)
    by_q[s.on_unbound[k].anchor.q].push_back(int(k));
  for (auto& [q, list] : by_q) {
    for (size_t x = 0; x < list.size(); ++x) {
      for (size_t y = x + 1; y < list.size(); ++y) {
        const auto& a = s.on_unbound[list[x]];
        const auto& b = s.on_unbound[list[y]];
        if (a.tile == b.tile) continue;
        const GlueDef& ga = ts[s.proto.tiles[a.tile].type].glues[a.glue];
        const GlueDef& gb = ts[s.proto.tiles[b.tile].type].glues[b.glue];
        if (!glue_types_compatible(ga, gb)) continue;
        if (!geometry_bindable(a.anchor, a.face, b.anchor, b.face, ga.length)) continue;
        s.in_pairs.push_back({a.tile, a.glue, b.tile, b.glue, ga.strength});
      }
    }
  }
  std::sort(s.in_pairs.begin(), s.in_pairs.end(), [](const auto& x, const auto& y) {
    return std::tuple(x.tile_a, x.glue_a, x.tile_b, x.glue_b) <
           std::tuple(y.tile_a, y.glue_a, y.tile_b, y.glue_b);
  });

  // one-hinge rotations: turn one rigid side of one flexible bond +-90 about
  // a legal axis through the bond anchor; every surviving cross bond must
  // stay in reach and the result must be collision-free
  s.hinge_successors.clear();
  bool any_abstracted = false;
  for (const TileInst& t : s.proto.tiles)
    if (t.abstracted) any_abstracted = true;
  if (!any_abstracted && s.proto.tiles.size() > 1) {
    Dsu dsu(s.proto.tiles.size());
    for (const Bond& b : s.proto.bonds)
      if (!bond_flexible(ts, s.proto, b)) dsu.unite(int(b.tile_a), int(b.tile_b));
    std::set<std::string> seen;
    for (const Bond& hb : s.proto.bonds) {
      if (!bond_flexible(ts, s.proto, hb)) continue;
      int ca = dsu.find(int(hb.tile_a));
      int cb = dsu.find(int(hb.tile_b));
      if (ca == cb) continue;  // a rigid loop closes over this bond
      Vec3 pivot = tile_anchor(ts, s.proto.tiles[hb.tile_a], hb.glue_a).q;
      for (int side : {ca, cb}) {
        for (Dir axis : {Dir::PX, Dir::PY, Dir::PZ}) {
          if (!pivot_axis_legal(pivot, axis)) continue;
          for (int quarter : {1, -1}) {
            Rot r = rot_about(axis, quarter);
            Assembly succ = s.proto;
            for (uint32_t i = 0; i < succ.tiles.size(); ++i) {
              if (dsu.find(int(i)) != side) continue;
              succ.tiles[i].site = rotate_site(succ.tiles[i].site, pivot, axis, quarter);
              succ.tiles[i].rot = compose(r, succ.tiles[i].rot);
            }
            auto valid = [&](const Assembly& cand) {
              if (!occupancy(cand)) return false;
              for (const Bond& b : cand.bonds) {
                if ((dsu.find(int(b.tile_a)) == side) == (dsu.find(int(b.tile_b)) == side))
                  continue;
                const GlueDef& gd = ts[cand.tiles[b.tile_a].type].glues[b.glue_a];
                AnchorPt aa = tile_anchor(ts, cand.tiles[b.tile_a], b.glue_a);
                AnchorPt ab = tile_anchor(ts, cand.tiles[b.tile_b], b.glue_b);
                if (!geometry_bindable(aa, tile_glue_face(ts, cand.tiles[b.tile_a], b.glue_a),
                                       ab, tile_glue_face(ts, cand.tiles[b.tile_b], b.glue_b),
                                       gd.length))
                  return false;
              }
              return true;
            };
            if (!valid(succ)) {
              // the rigid image can miss by one half-gap: a moving side made
              // only of slabs in parallel like-facing slots may settle into
              // the partner half of each gap (same q, micro shift along the
              // shared normal) when reach or collision rejects the image
              bool flippable = true;
              Dir f{};
              bool first = true;
              for (uint32_t i = 0; i < succ.tiles.size() && flippable; ++i) {
                if (dsu.find(int(i)) != side) continue;
                if (succ.tiles[i].site.is_cube()) flippable = false;
                else if (first) { f = succ.tiles[i].site.face(); first = false; }
                else if (succ.tiles[i].site.face() != f) flippable = false;
              }
              if (!flippable || first) continue;
              for (uint32_t i = 0; i < succ.tiles.size(); ++i) {
                if (dsu.find(int(i)) != side) continue;
                succ.tiles[i].site =
                    Site::slab(succ.tiles[i].site.cell + dir_vec(f), opposite(f));
              }
              if (!valid(succ)) continue;
            }
            std::string key = canonical_bytes(ts, succ, true);
            if (seen.insert(std::move(key)).second)
              s.hinge_successors.push_back(std::move(succ));
          }
        }
      }
    }
  }
}

uint64_t SystemState::deposit(Assembly a) {
  const TileSet& ts = spec_.tiles;
  Assembly canon = canonical_form(ts, a);
  uint64_t h = canonical_hash(ts, canon, true);
  if (auto it = live_.find(h); it != live_.end()) {
    if (it->second.count != kInfCount) {
      ++it->second.count;
      if (it->second.count == 2) refresh_self_pair(h);
    }
    return h;
  }
  if (auto it = archive_.find(h); it != archive_.end()) {
    auto node = archive_.extract(it);
    node.mapped().count = 1;
    live_.insert(std::move(node));
    on_live_added(h);
    return h;
  }
  Species s;
  s.proto = std::move(canon);
  s.full_hash = h;
  s.type_hash = canonical_hash(ts, s.proto, false);
  s.count = 1;
  build_caches(s);
  assert(tau_stable(ts, s.proto, ts.tau));
  live_.emplace(h, std::move(s));
  on_live_added(h);
  return h;
}

void SystemState::take_instance(uint64_t h) {
  auto it = live_.find(h);
  assert(it != live_.end() && it->second.count > 0);
  Species& s = it->second;
  if (s.count == kInfCount) return;  // replenishing soup
  --s.count;
  if (s.count == 1) {
    refresh_self_pair(h);
  } else if (s.count == 0) {
    on_live_removed(h);
    auto node = live_.extract(it);
    archive_.insert(std::move(node));
  }
}

void SystemState::on_live_added(uint64_t h) {
  Species& s = live_.at(h);
  hinge_total_ += s.hinge_successors.size();
  intrabind_total_ += s.in_pairs.size();
  signal_total_ += s.firing.size();
  for (auto& [h2, s2] : live_) {
    if (h2 == h)
      refresh_self_pair(h);
    else
      add_pair_entries(std::min(h, h2), std::max(h, h2));
  }
}

void SystemState::on_live_removed(uint64_t h) {
  Species& s = live_.at(h);
  hinge_total_ -= s.hinge_successors.size();
  intrabind_total_ -= s.in_pairs.size();
  signal_total_ -= s.firing.size();
  if (auto it = keys_by_species_.find(h); it != keys_by_species_.end()) {
    for (const CombineKey& k : it->second) combines_.erase(k);
    keys_by_species_.erase(it);
  }
}

void SystemState::refresh_self_pair(uint64_t h) {
  const Species& s = live_.at(h);
  bool ok = s.count == kInfCount || s.count >= 2;
  const std::vector<CombineClass>& cls = combine_classes(h, h);
  for (size_t i = 0; i < cls.size(); ++i) {
    CombineKey k{h, h, i};
    if (ok) {
      if (combines_.insert(k).second) keys_by_species_[h].push_back(k);
    } else {
      combines_.erase(k);
    }
  }
}

void SystemState::add_pair_entries(uint64_t ha, uint64_t hb) {
  const std::vector<CombineClass>& cls = combine_classes(ha, hb);
  for (size_t i = 0; i < cls.size(); ++i) {
    CombineKey k{ha, hb, i};
    if (combines_.insert(k).second) {
      keys_by_species_[ha].push_back(k);
      keys_by_species_[hb].push_back(k);
    }
  }
}

// ---------------------------------------------------------------------------
// docking-class enumeration

const std::vector<CombineClass>& SystemState::combine_classes(uint64_t ha, uint64_t hb) {
  if (ha > hb) std::swap(ha, hb);
  auto key = std::pair(ha, hb);
  if (auto it = combine_cache_.find(key); it != combine_cache_.end()) return it->second;

  const TileSet& ts = spec_.tiles;
  const Species* A = find_any(ha);
  const Species* B = find_any(hb);
  assert(A && B);
  std::vector<CombineClass> out;

  bool domains_meet = sets_intersect(A->plain_bases, B->star_bases) ||
                      sets_intersect(A->star_bases, B->plain_bases);
  if (!domains_meet || A->on_unbound.empty() || B->on_unbound.empty())
    return combine_cache_.emplace(key, std::move(out)).first->second;

  // exact-q index over A's surface for contact sweeps
  std::unordered_map<Vec3, std::vector<int>, Vec3Hash> a_by_q;
  for (size_t i = 0; i < A->on_unbound.size(); ++i)
    a_by_q[A->on_unbound[i].anchor.q].push_back(int(i));

  std::set<std::pair<uint8_t, Vec3>> seen_pose;
  std::set<std::string> seen_merged;  // self-pair mirror dedup

  for (int rid = 0; rid < kRotCount; ++rid) {
    Rot r{uint8_t(rid)};
    Assembly br = B->proto;
    transform(br, r, {0, 0, 0});
    struct BEnd {
      uint32_t tile, glue;
      AnchorPt anchor;
      Dir face;
    };
    std::vector<BEnd> bends;
    bends.reserve(B->on_unbound.size());
    for (const Species::SurfaceGlue& sg : B->on_unbound)
      bends.push_back({sg.tile, sg.glue, tile_anchor(ts, br.tiles[sg.tile], sg.glue),
                       tile_glue_face(ts, br.tiles[sg.tile], sg.glue)});

    for (const BEnd& be : bends) {
      const GlueDef& gb = ts[br.tiles[be.tile].type].glues[be.glue];
      for (const Species::SurfaceGlue& ag : A->on_unbound) {
        const GlueDef& ga = ts[A->proto.tiles[ag.tile].type].glues[ag.glue];
        if (!glue_types_compatible(ga, gb)) continue;
        Vec3 dq = ag.anchor.q - be.anchor.q;
        if (dq.x % 4 || dq.y % 4 || dq.z % 4) continue;
        Vec3 t{dq.x / 4, dq.y / 4, dq.z / 4};
        AnchorPt shifted{be.anchor.q + 4 * t, be.anchor.m};
        if (!geometry_bindable(ag.anchor, ag.face, shifted, be.face, ga.length)) continue;
        if (!seen_pose.insert({uint8_t(rid), t}).second) continue;

        // occupancy disjointness of the docked pair
        bool clash = false;
        for (const TileInst& ti : br.tiles) {
          if (ti.abstracted) continue;
          Site moved{ti.site.cell + t, ti.site.slot};
          if (A->occupied.count(moved)) {
            clash = true;
            break;
          }
        }
        if (clash) continue;

        // full contact set under this pose
        CombineClass cls;
        cls.rot = r;
        cls.shift = t;
        for (const BEnd& b2 : bends) {
          Vec3 q2 = b2.anchor.q + 4 * t;
          auto hit = a_by_q.find(q2);
          if (hit == a_by_q.end()) continue;
          const GlueDef& g2 = ts[br.tiles[b2.tile].type].glues[b2.glue];
          AnchorPt sh2{q2, b2.anchor.m};
          for (int ai : hit->second) {
            const Species::SurfaceGlue& a2 = A->on_unbound[ai];
            const GlueDef& ga2 = ts[A->proto.tiles[a2.tile].type].glues[a2.glue];
            if (!glue_types_compatible(ga2, g2)) continue;
            if (!geometry_bindable(a2.anchor, a2.face, sh2, b2.face, ga2.length)) continue;
            cls.contacts.push_back({a2.tile, a2.glue, b2.tile, b2.glue, ga2.strength});
          }
        }
        std::sort(cls.contacts.begin(), cls.contacts.end(),
                  [](const auto& x, const auto& y) {
                    return std::tuple(x.tile_a, x.glue_a, x.tile_b, x.glue_b) <
                           std::tuple(y.tile_a, y.glue_a, y.tile_b, y.glue_b);
                  });
        cls.total_strength = 0;
        for (const auto& c : cls.contacts) cls.total_strength += c.strength;
        if (cls.total_strength < ts.tau) continue;
        if (minimal_sufficient_subsets(cls.contacts, ts.tau).empty()) continue;

        if (ha == hb) {
          // docking X onto X from either side describes the same class
          Assembly merged = A->proto;
          for (const TileInst& ti : br.tiles) {
            TileInst moved = ti;
            moved.site.cell = moved.site.cell + t;
            merged.tiles.push_back(std::move(moved));
            merged.glue_bond.emplace_back(merged.tiles.back().glue.size(), -1);
          }
          for (const Bond& b : B->proto.bonds)
            merged.add_bond(b.tile_a + uint32_t(A->proto.tiles.size()), b.glue_a,
                            b.tile_b + uint32_t(A->proto.tiles.size()), b.glue_b);
          if (!seen_merged.insert(canonical_bytes(ts, merged, true)).second) continue;
        }
        out.push_back(std::move(cls));
      }
    }
  }
  return combine_cache_.emplace(key, std::move(out)).first->second;
}

// ---------------------------------------------------------------------------
// signal plumbing

void SystemState::fire_signals(Assembly& a, uint32_t tile, uint32_t glue) {
  const TileType& tt = spec_.tiles[a.tiles[tile].type];
  for (uint32_t k = 0; k < tt.signals.size(); ++k) {
    const SignalDef& sd = tt.signals[k];
    if (sd.source != glue) continue;
    if (a.tiles[tile].sig[k] != SigPhase::PRE) continue;  // one shot per signal
    GlueState cur = a.tiles[tile].glue[sd.target];
    if (glue_transition(cur, sd.action))
      a.tiles[tile].sig[k] = SigPhase::FIRING;
    // an action that is invalid right now stays PRE and may fire on a later
    // re-bond of the source glue
  }
}

void SystemState::emit(EventKind kind, const std::string& line) {
  ++clock_;
  (void)kind;
  if (cfg_.want_trace) {
    trace_ += "e ";
    trace_ += std::to_string(clock_);
    trace_ += ' ';
    trace_ += line;
    trace_ += '\n';
  }
}

// ---------------------------------------------------------------------------
// event execution

bool SystemState::exec_forced() {
  const TileSet& ts = spec_.tiles;
  while (!forced_.empty()) {
    Pending& p = forced_.front();
    if (!p.binds.empty()) {
      // immediate post-combine intrabinds; stale entries are dropped
      while (!p.binds.empty()) {
        CombineClass::Contact c = p.binds.front();
        p.binds.erase(p.binds.begin());
        if (p.state.glue_bound(c.tile_a, c.glue_a) ||
            p.state.glue_bound(c.tile_b, c.glue_b))
          continue;
        if (p.state.tiles[c.tile_a].glue[c.glue_a] != GlueState::ON ||
            p.state.tiles[c.tile_b].glue[c.glue_b] != GlueState::ON)
          continue;
        p.state.add_bond(c.tile_a, c.glue_a, c.tile_b, c.glue_b);
        fire_signals(p.state, c.tile_a, c.glue_a);
        fire_signals(p.state, c.tile_b, c.glue_b);
        std::string line;
        if (cfg_.want_trace) {
          std::ostringstream os;
          os << "intrabind . " << c.tile_a << ":" << c.glue_a << "-" << c.tile_b << ":"
             << c.glue_b << " -> " << hex16(canonical_hash(ts, p.state, true));
          line = os.str();
        }
        bool done = p.binds.empty();
        if (done) {
          Assembly st = std::move(p.state);
          forced_.pop_front();
          emit(EventKind::INTRABIND, line);
          deposit(std::move(st));
        } else {
          emit(EventKind::INTRABIND, line);
        }
        return true;
      }
      Assembly st = std::move(p.state);
      forced_.pop_front();
      deposit(std::move(st));
      continue;
    }
    // stabilization item
    if (tau_stable(ts, p.state, ts.tau)) {
      Assembly st = std::move(p.state);
      forced_.pop_front();
      deposit(std::move(st));
      continue;
    }
    auto parts = break_components(ts, p.state, ts.tau);
    assert(parts);
    std::string line;
    if (cfg_.want_trace) {
      line = "break . -> " + hex16(canonical_hash(ts, parts->first, true)) + " " +
             hex16(canonical_hash(ts, parts->second, true));
    }
    size_t before = p.state.tiles.size();
    assert(parts->first.tiles.size() + parts->second.tiles.size() == before);
    (void)before;
    forced_.pop_front();
    forced_.push_front({std::move(parts->second), {}});
    forced_.push_front({std::move(parts->first), {}});
    emit(EventKind::BREAK, line);
    return true;
  }
  return false;
}

void SystemState::exec_combine(uint64_t ha, uint64_t hb, size_t cls_index) {
  const TileSet& ts = spec_.tiles;
  CombineClass cls = combine_classes(ha, hb)[cls_index];
  Assembly a = live_.at(ha).proto;
  Assembly b = live_.at(hb).proto;
  take_instance(ha);
  take_instance(hb);
  transform(b, cls.rot, cls.shift);

  uint32_t na = uint32_t(a.tiles.size());
  Assembly m = std::move(a);
  for (TileInst& ti : b.tiles) {
    m.tiles.push_back(std::move(ti));
    m.glue_bond.emplace_back(m.tiles.back().glue.size(), -1);
  }
  for (const Bond& bd : b.bonds)
    m.add_bond(bd.tile_a + na, bd.glue_a, bd.tile_b + na, bd.glue_b);
  for (auto& c : cls.contacts) c.tile_b += na;

  std::vector<std::vector<int>> subsets = minimal_sufficient_subsets(cls.contacts, ts.tau);
  assert(!subsets.empty());
  const std::vector<int>& pick = subsets[rng_.bounded(subsets.size())];

  std::vector<char> chosen(cls.contacts.size(), 0);
  std::ostringstream glues;
  for (size_t i = 0; i < pick.size(); ++i) {
    const auto& c = cls.contacts[pick[i]];
    chosen[pick[i]] = 1;
    m.add_bond(c.tile_a, c.glue_a, c.tile_b, c.glue_b);
    fire_signals(m, c.tile_a, c.glue_a);
    fire_signals(m, c.tile_b, c.glue_b);
    if (cfg_.want_trace) {
      if (i) glues << ",";
      glues << c.tile_a << ":" << c.glue_a << "-" << c.tile_b << ":" << c.glue_b;
    }
  }
  std::vector<CombineClass::Contact> leftovers;
  for (size_t i = 0; i < cls.contacts.size(); ++i)
    if (!chosen[i]) leftovers.push_back(cls.contacts[i]);

  std::string line;
  if (cfg_.want_trace) {
    std::ostringstream os;
    os << "combine " << hex16(ha) << " " << hex16(hb) << " rot " << int(cls.rot.id)
       << " t " << cls.shift.x << " " << cls.shift.y << " " << cls.shift.z << " glues "
       << glues.str() << " -> " << hex16(canonical_hash(ts, m, true));
    line = os.str();
  }
  emit(EventKind::COMBINE, line);
  if (leftovers.empty())
    deposit(std::move(m));
  else
    forced_.push_back({std::move(m), std::move(leftovers)});
}

void SystemState::exec_signal(uint64_t h, uint32_t tile, uint32_t sig) {
  const TileSet& ts = spec_.tiles;
  Assembly a = live_.at(h).proto;
  take_instance(h);
  const SignalDef& sd = ts[a.tiles[tile].type].signals[sig];
  assert(a.tiles[tile].sig[sig] == SigPhase::FIRING);
  a.tiles[tile].sig[sig] = SigPhase::POST;
  GlueState cur = a.tiles[tile].glue[sd.target];
  std::optional<GlueState> next = glue_transition(cur, sd.action);
  bool removed_bond = false;
  if (next) {
    a.tiles[tile].glue[sd.target] = *next;
    if (*next == GlueState::OFF) {
      int bidx = a.glue_bond[tile][sd.target];
      if (bidx >= 0) {
        a.remove_bond(bidx);
        removed_bond = true;
      }
    }
  }
  std::string line;
  if (cfg_.want_trace) {
    std::ostringstream os;
    os << "signal " << hex16(h) << " " << tile << ":" << sig << " "
       << (next ? "applied" : "nochange") << " -> "
       << hex16(canonical_hash(ts, a, true));
    line = os.str();
  }
  emit(EventKind::SIGNAL_EXEC, line);
  if (removed_bond)
    forced_.push_back({std::move(a), {}});  // settle: break until stable
  else
    deposit(std::move(a));
}

void SystemState::exec_intrabind(uint64_t h, Species::GluePair p) {
  const TileSet& ts = spec_.tiles;
  Assembly a = live_.at(h).proto;
  take_instance(h);
  a.add_bond(p.tile_a, p.glue_a, p.tile_b, p.glue_b);
  fire_signals(a, p.tile_a, p.glue_a);
  fire_signals(a, p.tile_b, p.glue_b);
  std::string line;
  if (cfg_.want_trace) {
    std::ostringstream os;
    os << "intrabind " << hex16(h) << " " << p.tile_a << ":" << p.glue_a << "-"
       << p.tile_b << ":" << p.glue_b << " -> " << hex16(canonical_hash(ts, a, true));
    line = os.str();
  }
  emit(EventKind::INTRABIND, line);
  deposit(std::move(a));
}

void SystemState::exec_hinge(uint64_t h, size_t succ_index) {
  Assembly succ = live_.at(h).hinge_successors[succ_index];
  take_instance(h);
  std::string line;
  if (cfg_.want_trace) {
    std::ostringstream os;
    os << "hinge " << hex16(h) << " " << succ_index << " -> "
       << hex16(canonical_hash(spec_.tiles, succ, true));
    line = os.str();
  }
  emit(EventKind::HINGE, line);
  deposit(std::move(succ));
}

// ---------------------------------------------------------------------------
// scheduling

void SystemState::drain_settled() {
  while (!forced_.empty()) {
    Pending& p = forced_.front();
    if (!p.binds.empty()) break;
    if (!tau_stable(spec_.tiles, p.state, spec_.tiles.tau)) break;
    Assembly st = std::move(p.state);
    forced_.pop_front();
    deposit(std::move(st));
  }
}

std::array<uint64_t, kEventKinds> SystemState::enabled_action_counts() {
  drain_settled();
  std::array<uint64_t, kEventKinds> n{};
  if (!forced_.empty()) {
    // pending forced work preempts; report it under its own kind
    const Pending& p = forced_.front();
    if (!p.binds.empty())
      n[size_t(EventKind::INTRABIND)] = p.binds.size();
    else
      n[size_t(EventKind::BREAK)] = 1;
    return n;
  }
  n[size_t(EventKind::COMBINE)] = combines_.size();
  n[size_t(EventKind::HINGE)] = hinge_total_;
  n[size_t(EventKind::INTRABIND)] = intrabind_total_;
  n[size_t(EventKind::SIGNAL_EXEC)] = signal_total_;
  return n;
}

bool SystemState::step() {
  if (exec_forced()) return true;

  struct Cat {
    EventKind kind;
    uint64_t n;
  };
  std::array<Cat, 4> cats{{{EventKind::COMBINE, combines_.size()},
                           {EventKind::HINGE, hinge_total_},
                           {EventKind::INTRABIND, intrabind_total_},
                           {EventKind::SIGNAL_EXEC, signal_total_}}};
  std::vector<int> enabled;
  for (int i = 0; i < 4; ++i)
    if (cats[i].n > 0) enabled.push_back(i);
  if (enabled.empty()) return false;  // stuck

  // starvation ledger: an enabled category older than the bound wins outright
  int chosen = -1;
  uint64_t worst = 0;
  for (int i : enabled) {
    uint64_t age = ages_[size_t(cats[i].kind)];
    if (age >= cfg_.starvation_bound && age > worst) {
      worst = age;
      chosen = i;
    }
  }
  if (chosen < 0) chosen = enabled[rng_.bounded(enabled.size())];
  for (int i = 0; i < 4; ++i) {
    size_t k = size_t(cats[i].kind);
    if (cats[i].n == 0 || i == chosen) {
      ages_[k] = 0;  // age means: enabled this long without being picked
    } else {
      ++ages_[k];
      max_age_seen_ = std::max(max_age_seen_, ages_[k]);
    }
  }

  uint64_t pickn = cats[chosen].n;
  uint64_t k = rng_.bounded(pickn);
  switch (cats[chosen].kind) {
    case EventKind::COMBINE: {
      auto it = combines_.begin();
      std::advance(it, k);
      auto [ha, hb, idx] = *it;
      exec_combine(ha, hb, idx);
      break;
    }
    case EventKind::HINGE: {
      for (auto& [h, s] : live_) {
        if (k < s.hinge_successors.size()) {
          exec_hinge(h, size_t(k));
          return true;
        }
        k -= s.hinge_successors.size();
      }
      assert(false);
      break;
    }
    case EventKind::INTRABIND: {
      for (auto& [h, s] : live_) {
        if (k < s.in_pairs.size()) {
          exec_intrabind(h, s.in_pairs[size_t(k)]);
          return true;
        }
        k -= s.in_pairs.size();
      }
      assert(false);
      break;
    }
    case EventKind::SIGNAL_EXEC: {
      for (auto& [h, s] : live_) {
        if (k < s.firing.size()) {
          auto [tile, sig] = s.firing[size_t(k)];
          exec_signal(h, tile, sig);
          return true;
        }
        k -= s.firing.size();
      }
      assert(false);
      break;
    }
    default:
      assert(false);
  }
  return true;
}

// ---------------------------------------------------------------------------
// terminality and census

bool SystemState::species_terminal(const Species& s) {
  if (!s.firing.empty()) return false;
  if (!s.in_pairs.empty()) return false;
  // partner witnesses: every live species and every tile type singleton
  for (const auto& [h2, s2] : live_) {
    (void)s2;
    if (!combine_classes(s.full_hash, h2).empty()) return false;
  }
  for (uint64_t h2 : type_singleton_hashes_)
    if (!combine_classes(s.full_hash, h2).empty()) return false;
  return true;
}

std::vector<CensusRow> SystemState::census() {
  std::map<uint64_t, CensusRow> rows;
  for (auto& [h, s] : live_) {
    uint64_t cls = cfg_.strict_census ? s.full_hash : s.type_hash;
    auto [it, fresh] = rows.try_emplace(cls);
    CensusRow& r = it->second;
    bool term = species_terminal(s);
    if (fresh) {
      r.class_hash = cls;
      r.rep_hash = h;
      r.count = s.count;
      r.size = s.proto.tiles.size();
      r.terminal = term;
    } else {
      r.rep_hash = std::min(r.rep_hash, h);
      if (r.count != kInfCount && s.count != kInfCount)
        r.count += s.count;
      else
        r.count = kInfCount;
      r.terminal = r.terminal && term;
    }
  }
  std::vector<CensusRow> out;
  out.reserve(rows.size());
  for (auto& [cls, r] : rows) out.push_back(r);
  return out;
}

std::string render_census(const std::vector<CensusRow>& rows) {
  std::string s = "census\n";
  for (const CensusRow& r : rows) {
    s += "c " + hex16(r.class_hash) + " n " + count_str(r.count) + " size " +
         std::to_string(r.size) + " terminal " + (r.terminal ? "1" : "0") + " rep " +
         hex16(r.rep_hash) + "\n";
  }
  s += "end-census\n";
  return s;
}

RunStatus SystemState::run() {
  RunStatus status = RunStatus::BUDGET_EXHAUSTED;
  while (clock_ < cfg_.budget) {
    if (!step()) {
      status = RunStatus::STUCK;
      break;
    }
  }
  if (cfg_.want_trace) {
    trace_ += std::string("end ") +
              (status == RunStatus::STUCK ? "stuck" : "budget") + " events " +
              std::to_string(clock_) + "\n";
    trace_ += render_census(census());
  }
  return status;
}

// ---------------------------------------------------------------------------
// one-shot runner and trace verification

RunResult run_system(const SystemSpec& spec, const EngineConfig& cfg,
                     std::string* trace_out) {
  EngineConfig c = cfg;
  c.want_trace = cfg.want_trace && trace_out != nullptr;
  SystemState st(spec, c);
  RunResult r;
  r.status = st.run();
  r.events = st.clock();
  r.census = st.census();
  if (trace_out) *trace_out = st.trace();
  return r;
}

std::string verify_trace(const SystemSpec& spec, const std::string& trace_text) {
  // header: seed, budget, tile budget, starvation bound, strict flag
  EngineConfig cfg;
  cfg.want_trace = true;
  std::istringstream in(trace_text);
  std::string line;
  bool saw_magic = false;
  uint64_t recorded_system = 0;
  while (std::getline(in, line)) {
    if (line.rfind("e ", 0) == 0 || line == "census") break;
    std::istringstream ls(line);
    std::string w;
    ls >> w;
    if (w == "stamstar-trace") {
      saw_magic = true;
    } else if (w == "rng") {
      std::string id;
      ls >> id >> cfg.seed;
      if (id != "splitmix64-ctr") return "unknown rng id: " + id;
    } else if (w == "system") {
      std::string hx;
      ls >> hx;
      recorded_system = std::stoull(hx, nullptr, 16);
    } else if (w == "budget") {
      ls >> cfg.budget;
    } else if (w == "tile-budget") {
      std::string v;
      ls >> v;
      cfg.tile_budget = v == "inf" ? -1 : std::stoll(v);
    } else if (w == "starvation-bound") {
      ls >> cfg.starvation_bound;
    } else if (w == "strict-census") {
      int v = 0;
      ls >> v;
      cfg.strict_census = v != 0;
    }
  }
  if (!saw_magic) return "not a trace file";
  uint64_t actual_system = fnv1a64(emit_system(spec));
  if (recorded_system != actual_system)
    return "system hash mismatch: trace " + hex16(recorded_system) + " vs " +
           hex16(actual_system);

  std::string replay;
  run_system(spec, cfg, &replay);
  if (replay == trace_text) return "";
  // locate first divergent line for the report
  std::istringstream a(trace_text), b(replay);
  std::string la, lb;
  size_t n = 0;
  while (true) {
    bool ga = bool(std::getline(a, la));
    bool gb = bool(std::getline(b, lb));
    ++n;
    if (!ga && !gb) break;
    if (la != lb || ga != gb)
      return "divergence at line " + std::to_string(n) + ": recorded \"" +
             (ga ? la : std::string("<eof>")) + "\" vs replay \"" +
             (gb ? lb : std::string("<eof>")) + "\"";
  }
  return "trace differs in length only";
}

}  // namespace stamstar
