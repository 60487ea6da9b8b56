#include "stamstar/tileset_io.hpp"

#include <sstream>

namespace stamstar {

std::optional<Dir> parse_dir(std::string_view name) {
  for (int i = 0; i < kDirCount; ++i)
    if (name == dir_name(Dir(i))) return Dir(i);
  return std::nullopt;
}

namespace {

const char* body_name(TileBody b) { return b == TileBody::CUBE ? "cube" : "slab"; }

std::optional<GlueState> parse_state(std::string_view s) {
  if (s == "latent") return GlueState::LATENT;
  if (s == "on") return GlueState::ON;
  if (s == "off") return GlueState::OFF;
  return std::nullopt;
}

std::optional<LengthClass> parse_length(std::string_view s) {
  if (s == "cubic") return LengthClass::RIGID_CUBIC;
  if (s == "flat") return LengthClass::RIGID_FLAT;
  if (s == "diag") return LengthClass::FLEXIBLE;
  return std::nullopt;
}

}  // namespace

std::string emit_system(const SystemSpec& s) {
  std::ostringstream os;
  os << "stamstar-system v1\n";
  os << "tau " << s.tiles.tau << "\n";
  for (const auto& [k, v] : s.meta) os << "meta " << k << " " << v << "\n";
  for (const TileType& t : s.tiles.types) {
    os << "tile " << t.name << " " << body_name(t.body) << " "
       << (t.in_soup ? "soup" : "seedonly") << "\n";
    for (const GlueDef& g : t.glues) {
      os << "glue " << g.domain << " " << dir_name(g.face) << " " << int(g.a) << " "
         << int(g.b) << " " << g.strength << " " << (g.flexible ? "flexible" : "rigid")
         << " " << length_class_name(g.length) << " " << glue_state_name(g.init) << "\n";
    }
    for (const SignalDef& sig : t.signals) {
      os << "signal " << sig.source << " " << glue_action_name(sig.action) << " "
         << sig.target << "\n";
    }
    os << "end\n";
  }
  for (const Placement& p : s.seed) {
    os << "place " << p.type << " " << p.site.cell.x << " " << p.site.cell.y << " "
       << p.site.cell.z << " ";
    if (p.site.is_cube()) os << "cell";
    else os << "slot:" << dir_name(p.site.face());
    os << " " << dir_name(rotate(p.rot, Dir::PX)) << " " << dir_name(rotate(p.rot, Dir::PZ));
    for (const auto& [idx, st] : p.glue_init) os << " g" << idx << "=" << glue_state_name(st);
    for (uint16_t idx : p.fired) os << " s" << idx << "=fired";
    os << "\n";
  }
  return os.str();
}

ParseResult parse_system(std::string_view text) {
  SystemSpec sys;
  TileType* open_tile = nullptr;
  int lineno = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header_seen = false;

  auto fail = [&](const std::string& why) {
    return ParseResult{std::nullopt, "line " + std::to_string(lineno) + ": " + why};
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (size_t h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (!header_seen) {
      std::string ver;
      if (word != "stamstar-system" || !(ls >> ver) || ver != "v1")
        return fail("expected header 'stamstar-system v1'");
      header_seen = true;
      continue;
    }
    if (word == "tau") {
      if (!(ls >> sys.tiles.tau)) return fail("tau needs an integer");
    } else if (word == "meta") {
      std::string key, rest;
      if (!(ls >> key)) return fail("meta needs a key");
      std::getline(ls, rest);
      if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
      sys.meta.emplace_back(key, rest);
    } else if (word == "tile") {
      if (open_tile) return fail("previous tile record not closed with 'end'");
      std::string name, body, avail;
      if (!(ls >> name >> body >> avail)) return fail("tile needs name, body, availability");
      TileType t;
      t.name = name;
      if (body == "cube") t.body = TileBody::CUBE;
      else if (body == "slab") t.body = TileBody::SLAB;
      else return fail("body must be cube or slab");
      if (avail == "soup") t.in_soup = true;
      else if (avail == "seedonly") t.in_soup = false;
      else return fail("availability must be soup or seedonly");
      sys.tiles.types.push_back(std::move(t));
      open_tile = &sys.tiles.types.back();
    } else if (word == "glue") {
      if (!open_tile) return fail("glue outside a tile record");
      GlueDef g;
      std::string face, flex, len, init;
      int a, b;
      if (!(ls >> g.domain >> face >> a >> b >> g.strength >> flex >> len >> init))
        return fail("glue needs domain face a b strength flexibility length state");
      auto fd = parse_dir(face);
      if (!fd) return fail("bad face " + face);
      g.face = *fd;
      if (a < 0 || a > 4 || b < 0 || b > 4) return fail("anchor outside 0..4");
      g.a = uint8_t(a);
      g.b = uint8_t(b);
      if (flex == "flexible") g.flexible = true;
      else if (flex == "rigid") g.flexible = false;
      else return fail("flexibility must be rigid or flexible");
      auto lc = parse_length(len);
      if (!lc) return fail("length class must be cubic, flat or diag");
      g.length = *lc;
      auto st = parse_state(init);
      if (!st) return fail("state must be latent, on or off");
      g.init = *st;
      open_tile->glues.push_back(std::move(g));
    } else if (word == "signal") {
      if (!open_tile) return fail("signal outside a tile record");
      SignalDef sd;
      std::string act;
      int src, tgt;
      if (!(ls >> src >> act >> tgt)) return fail("signal needs source action target");
      if (act == "activate") sd.action = GlueAction::ACTIVATE;
      else if (act == "deactivate") sd.action = GlueAction::DEACTIVATE;
      else return fail("action must be activate or deactivate");
      if (src < 0 || tgt < 0) return fail("negative glue index");
      sd.source = uint16_t(src);
      sd.target = uint16_t(tgt);
      open_tile->signals.push_back(sd);
    } else if (word == "end") {
      if (!open_tile) return fail("end without tile");
      open_tile = nullptr;
    } else if (word == "place") {
      if (open_tile) return fail("place inside a tile record");
      Placement p;
      std::string where, imgx, imgz;
      if (!(ls >> p.type >> p.site.cell.x >> p.site.cell.y >> p.site.cell.z >> where >>
            imgx >> imgz))
        return fail("place needs type x y z cell|slot:<face> imgx imgz");
      if (where == "cell") {
        p.site.slot = -1;
      } else if (where.rfind("slot:", 0) == 0) {
        auto fd = parse_dir(where.substr(5));
        if (!fd) return fail("bad slot face");
        p.site.slot = int8_t(*fd);
      } else {
        return fail("placement must be cell or slot:<face>");
      }
      auto dx = parse_dir(imgx), dz = parse_dir(imgz);
      if (!dx || !dz) return fail("bad orientation axis image");
      Vec3 vx = dir_vec(*dx), vz = dir_vec(*dz);
      if (vx.x * vz.x + vx.y * vz.y + vx.z * vz.z != 0)
        return fail("orientation images not orthogonal");
      p.rot = rot_from_images(vx, vz);
      std::string ov;
      while (ls >> ov) {
        size_t eq = ov.find('=');
        if (ov.size() < 4 || eq == std::string::npos || eq < 2)
          return fail("bad placement override " + ov);
        int idx = -1;
        try {
          idx = std::stoi(ov.substr(1, eq - 1));
        } catch (...) {
          return fail("bad placement override index in " + ov);
        }
        if (idx < 0 || idx > 0xffff) return fail("override index out of range in " + ov);
        std::string val = ov.substr(eq + 1);
        if (ov[0] == 'g') {
          auto st = parse_state(val);
          if (!st) return fail("override state must be latent, on or off in " + ov);
          p.glue_init.emplace_back(uint16_t(idx), *st);
        } else if (ov[0] == 's') {
          if (val != "fired") return fail("signal override must be =fired in " + ov);
          p.fired.push_back(uint16_t(idx));
        } else {
          return fail("override must start with g or s in " + ov);
        }
      }
      sys.seed.push_back(std::move(p));
    } else {
      return fail("unknown record " + word);
    }
  }
  if (open_tile) return ParseResult{std::nullopt, "unexpected end of file inside tile record"};
  if (!header_seen) return ParseResult{std::nullopt, "empty input"};
  return ParseResult{std::move(sys), ""};
}

}  // namespace stamstar
