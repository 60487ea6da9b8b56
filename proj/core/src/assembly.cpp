#include "stamstar/assembly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "stamstar/hash.hpp"

namespace stamstar {

int Assembly::add_tile(const TileSet& ts, int type, Site site, Rot rot) {
  const TileType& tt = ts[type];
  assert(placement_rot_valid(tt.body, site, rot));
  TileInst t;
  t.type = type;
  t.site = site;
  t.rot = rot;
  t.glue.reserve(tt.glues.size());
  for (const GlueDef& g : tt.glues) t.glue.push_back(g.init);
  t.sig.assign(tt.signals.size(), SigPhase::PRE);
  tiles.push_back(std::move(t));
  glue_bond.emplace_back(tt.glues.size(), -1);
  return int(tiles.size()) - 1;
}

int Assembly::add_bond(uint32_t ta, uint32_t ga, uint32_t tb, uint32_t gb) {
  assert(!glue_bound(ta, ga) && !glue_bound(tb, gb));
  assert(ta != tb);
  bonds.push_back({ta, ga, tb, gb});
  int idx = int(bonds.size()) - 1;
  glue_bond[ta][ga] = idx;
  glue_bond[tb][gb] = idx;
  return idx;
}

void Assembly::remove_bond(int bond_index) {
  const Bond& b = bonds[bond_index];
  glue_bond[b.tile_a][b.glue_a] = -1;
  glue_bond[b.tile_b][b.glue_b] = -1;
  if (bond_index != int(bonds.size()) - 1) {
    bonds[bond_index] = bonds.back();
    const Bond& moved = bonds[bond_index];
    glue_bond[moved.tile_a][moved.glue_a] = bond_index;
    glue_bond[moved.tile_b][moved.glue_b] = bond_index;
  }
  bonds.pop_back();
}

Assembly singleton_assembly(const TileSet& ts, int type, Site site, Rot rot) {
  Assembly a;
  a.add_tile(ts, type, site, rot);
  return a;
}

int bond_strength(const TileSet& ts, const Assembly& a, const Bond& b) {
  const GlueDef& ga = ts[a.tiles[b.tile_a].type].glues[b.glue_a];
  const GlueDef& gb = ts[a.tiles[b.tile_b].type].glues[b.glue_b];
  return std::min(ga.strength, gb.strength);
}

bool bond_flexible(const TileSet& ts, const Assembly& a, const Bond& b) {
  return ts[a.tiles[b.tile_a].type].glues[b.glue_a].flexible;
}

std::optional<std::unordered_map<Site, int, SiteHash>> occupancy(const Assembly& a) {
  std::unordered_map<Site, int, SiteHash> occ;
  occ.reserve(a.tiles.size());
  for (size_t i = 0; i < a.tiles.size(); ++i) {
    if (a.tiles[i].abstracted) continue;
    if (!occ.emplace(a.tiles[i].site, int(i)).second) return std::nullopt;
  }
  return occ;
}

Vec3 rotate_cell(Rot r, Vec3 cell) {
  Vec3 lo = rotate(r, cell);
  Vec3 hi = rotate(r, cell + Vec3{1, 1, 1});
  return {std::min(lo.x, hi.x), std::min(lo.y, hi.y), std::min(lo.z, hi.z)};
}

Site transform_site(Rot r, Vec3 cell_offset, const Site& s) {
  Vec3 c = rotate_cell(r, s.cell) + cell_offset;
  if (s.is_cube()) return Site::cube(c);
  return Site::slab(c, rotate(r, s.face()));
}

void transform(Assembly& a, Rot r, Vec3 cell_offset) {
  for (TileInst& t : a.tiles) {
    t.site = transform_site(r, cell_offset, t.site);
    t.rot = compose(r, t.rot);
  }
}

std::vector<std::vector<int>> bond_components(const Assembly& a) {
  std::vector<int> comp(a.tiles.size(), -1);
  std::vector<std::vector<int>> adj(a.tiles.size());
  for (const Bond& b : a.bonds) {
    adj[b.tile_a].push_back(b.tile_b);
    adj[b.tile_b].push_back(b.tile_a);
  }
  std::vector<std::vector<int>> out;
  for (size_t s = 0; s < a.tiles.size(); ++s) {
    if (comp[s] >= 0) continue;
    int id = int(out.size());
    out.emplace_back();
    std::vector<int> stack{int(s)};
    comp[s] = id;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      out[id].push_back(v);
      for (int w : adj[v])
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

Assembly extract(const Assembly& a, const std::vector<int>& tile_indices) {
  Assembly out;
  std::unordered_map<int, int> remap;
  remap.reserve(tile_indices.size());
  for (int idx : tile_indices) {
    remap[idx] = int(out.tiles.size());
    out.tiles.push_back(a.tiles[idx]);
    out.glue_bond.push_back(
        std::vector<int32_t>(a.glue_bond[idx].size(), -1));
  }
  for (const Bond& b : a.bonds) {
    auto ia = remap.find(int(b.tile_a));
    auto ib = remap.find(int(b.tile_b));
    if (ia == remap.end() || ib == remap.end()) continue;
    out.add_bond(uint32_t(ia->second), b.glue_a, uint32_t(ib->second), b.glue_b);
  }
  return out;
}

namespace {

void put_i32(std::string& s, int32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(char((uint32_t(v) >> (8 * i)) & 0xff));
}

std::vector<int> pose_order(const Assembly& a) {
  // (site, rot, type) orders distinct sites; state bytes break ties between
  // co-sited abstracted tiles so the ordering is always deterministic
  std::vector<int> order(a.tiles.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const TileInst& u = a.tiles[x];
    const TileInst& v = a.tiles[y];
    auto ku = std::tuple(u.site, u.rot.id, u.type, u.abstracted);
    auto kv = std::tuple(v.site, v.rot.id, v.type, v.abstracted);
    if (ku != kv) return ku < kv;
    if (u.glue != v.glue) return u.glue < v.glue;
    return u.sig < v.sig;
  });
  return order;
}

std::string serialize_pose(const TileSet&, const Assembly& a, bool full) {
  std::vector<int> order = pose_order(a);
  std::string s;
  s.reserve(a.tiles.size() * 24);
  std::vector<int> remap(a.tiles.size());
  for (size_t pos = 0; pos < order.size(); ++pos) remap[order[pos]] = int(pos);
  for (int i : order) {
    const TileInst& t = a.tiles[i];
    put_i32(s, t.site.cell.x);
    put_i32(s, t.site.cell.y);
    put_i32(s, t.site.cell.z);
    s.push_back(char(t.site.slot));
    s.push_back(char(t.rot.id));
    put_i32(s, t.type);
    if (full) {
      s.push_back(char(t.abstracted));
      for (GlueState g : t.glue) s.push_back(char(g));
      for (SigPhase p : t.sig) s.push_back(char(p));
    }
  }
  if (full) {
    std::vector<std::tuple<int, uint32_t, int, uint32_t>> eb;
    eb.reserve(a.bonds.size());
    for (const Bond& b : a.bonds) {
      int x = remap[b.tile_a], y = remap[b.tile_b];
      uint32_t gx = b.glue_a, gy = b.glue_b;
      if (std::tuple(x, gx) > std::tuple(y, gy)) {
        std::swap(x, y);
        std::swap(gx, gy);
      }
      eb.emplace_back(x, gx, y, gy);
    }
    std::sort(eb.begin(), eb.end());
    for (auto& [x, gx, y, gy] : eb) {
      put_i32(s, x);
      put_i32(s, int(gx));
      put_i32(s, y);
      put_i32(s, int(gy));
    }
  }
  return s;
}

}  // namespace

std::string canonical_bytes(const TileSet& ts, const Assembly& a, bool full) {
  std::string best;
  for (int rid = 0; rid < kRotCount; ++rid) {
    Assembly copy = a;
    transform(copy, Rot{uint8_t(rid)}, {0, 0, 0});
    Vec3 mn = copy.tiles.empty() ? Vec3{} : copy.tiles[0].site.cell;
    for (const TileInst& t : copy.tiles) {
      mn.x = std::min(mn.x, t.site.cell.x);
      mn.y = std::min(mn.y, t.site.cell.y);
      mn.z = std::min(mn.z, t.site.cell.z);
    }
    for (TileInst& t : copy.tiles) t.site.cell = t.site.cell - mn;
    std::string s = serialize_pose(ts, copy, full);
    if (best.empty() || s < best) best = std::move(s);
  }
  return best;
}

uint64_t canonical_hash(const TileSet& ts, const Assembly& a, bool full) {
  return fnv1a64(canonical_bytes(ts, a, full));
}

Assembly canonical_form(const TileSet& ts, const Assembly& a) {
  Assembly best;
  std::string best_bytes;
  for (int rid = 0; rid < kRotCount; ++rid) {
    Assembly copy = a;
    transform(copy, Rot{uint8_t(rid)}, {0, 0, 0});
    Vec3 mn = copy.tiles.empty() ? Vec3{} : copy.tiles[0].site.cell;
    for (const TileInst& t : copy.tiles) {
      mn.x = std::min(mn.x, t.site.cell.x);
      mn.y = std::min(mn.y, t.site.cell.y);
      mn.z = std::min(mn.z, t.site.cell.z);
    }
    for (TileInst& t : copy.tiles) t.site.cell = t.site.cell - mn;
    std::string s = serialize_pose(ts, copy, true);
    if (best_bytes.empty() || s < best_bytes) {
      best_bytes = std::move(s);
      best = std::move(copy);
    }
  }
  std::vector<int> order = pose_order(best);
  std::vector<int> remap(best.tiles.size());
  for (size_t pos = 0; pos < order.size(); ++pos) remap[order[pos]] = int(pos);
  Assembly out;
  out.tiles.reserve(best.tiles.size());
  for (int i : order) {
    out.tiles.push_back(best.tiles[i]);
    out.glue_bond.emplace_back(best.glue_bond[i].size(), -1);
  }
  std::vector<Bond> eb = best.bonds;
  for (Bond& b : eb) {
    b.tile_a = uint32_t(remap[b.tile_a]);
    b.tile_b = uint32_t(remap[b.tile_b]);
    if (std::tuple(b.tile_a, b.glue_a) > std::tuple(b.tile_b, b.glue_b)) {
      std::swap(b.tile_a, b.tile_b);
      std::swap(b.glue_a, b.glue_b);
    }
  }
  std::sort(eb.begin(), eb.end(), [](const Bond& x, const Bond& y) {
    return std::tuple(x.tile_a, x.glue_a, x.tile_b, x.glue_b) <
           std::tuple(y.tile_a, y.glue_a, y.tile_b, y.glue_b);
  });
  for (const Bond& b : eb) out.add_bond(b.tile_a, b.glue_a, b.tile_b, b.glue_b);
  return out;
}

AnchorPt tile_anchor(const TileSet& ts, const TileInst& t, uint32_t glue) {
  const TileType& tt = ts[t.type];
  return world_anchor(tt.body, t.site, t.rot, tt.glues[glue]);
}

Dir tile_glue_face(const TileSet& ts, const TileInst& t, uint32_t glue) {
  return rotate(t.rot, ts[t.type].glues[glue].face);
}

std::optional<std::unordered_map<Site, int, SiteHash>> lattice_embed(const Assembly& a) {
  return occupancy(a);
}

std::string voxel_dump(const TileSet& ts, const Assembly& a) {
  std::vector<std::string> lines;
  lines.reserve(a.tiles.size());
  for (const TileInst& t : a.tiles) {
    std::ostringstream os;
    os << t.site.cell.x << ' ' << t.site.cell.y << ' ' << t.site.cell.z << ' '
       << ts[t.type].name;
    if (!t.site.is_cube()) os << " slot=" << dir_name(t.site.face());
    lines.push_back(os.str());
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const std::string& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

}  // namespace stamstar
