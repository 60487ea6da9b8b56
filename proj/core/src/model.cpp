#include "stamstar/model.hpp"

#include <map>
#include <set>

namespace stamstar {

std::optional<GlueState> glue_transition(GlueState s, GlueAction a) {
  switch (s) {
    case GlueState::LATENT:
      return a == GlueAction::ACTIVATE ? GlueState::ON : GlueState::OFF;
    case GlueState::ON:
      if (a == GlueAction::DEACTIVATE) return GlueState::OFF;
      return std::nullopt;
    case GlueState::OFF:
      return std::nullopt;
  }
  return std::nullopt;
}

const char* glue_state_name(GlueState s) {
  switch (s) {
    case GlueState::LATENT: return "latent";
    case GlueState::ON: return "on";
    case GlueState::OFF: return "off";
  }
  return "?";
}

const char* glue_action_name(GlueAction a) {
  return a == GlueAction::ACTIVATE ? "activate" : "deactivate";
}

const char* length_class_name(LengthClass c) {
  switch (c) {
    case LengthClass::RIGID_CUBIC: return "cubic";
    case LengthClass::RIGID_FLAT: return "flat";
    case LengthClass::FLEXIBLE: return "diag";
  }
  return "?";
}

bool is_complement_label(std::string_view domain) {
  return !domain.empty() && domain.back() == '*';
}

std::string complement_label(std::string_view domain) {
  if (is_complement_label(domain)) return std::string(domain.substr(0, domain.size() - 1));
  return std::string(domain) + "*";
}

bool domains_complementary(std::string_view a, std::string_view b) {
  if (a.size() == b.size()) return false;
  if (a.size() == b.size() + 1)
    return is_complement_label(a) && a.substr(0, b.size()) == b;
  if (b.size() == a.size() + 1)
    return is_complement_label(b) && b.substr(0, a.size()) == a;
  return false;
}

int TileType::glue_index(std::string_view domain, Dir face) const {
  for (size_t i = 0; i < glues.size(); ++i)
    if (glues[i].face == face && glues[i].domain == domain) return int(i);
  return -1;
}

int TileSet::index_of(std::string_view name) const {
  for (size_t i = 0; i < types.size(); ++i)
    if (types[i].name == name) return int(i);
  return -1;
}

bool glue_types_compatible(const GlueDef& a, const GlueDef& b) {
  return domains_complementary(a.domain, b.domain) && a.strength == b.strength &&
         a.length == b.length && a.flexible == b.flexible;
}

namespace {

std::string base_label(std::string_view domain) {
  if (is_complement_label(domain)) return std::string(domain.substr(0, domain.size() - 1));
  return std::string(domain);
}

}  // namespace

std::vector<std::string> validate_tileset(const TileSet& ts, int signal_budget) {
  std::vector<std::string> problems;
  struct DomainProps {
    int strength;
    LengthClass length;
    bool flexible;
    std::string where;
  };
  std::map<std::string, DomainProps> domains;

  for (const auto& t : ts.types) {
    for (size_t gi = 0; gi < t.glues.size(); ++gi) {
      const GlueDef& g = t.glues[gi];
      std::string at = t.name + "/" + g.domain;
      if (g.domain.empty() || g.domain == "*") problems.push_back(at + ": empty domain");
      if (g.strength < 1) problems.push_back(at + ": strength < 1");
      if (g.a > 4 || g.b > 4) problems.push_back(at + ": anchor outside face");
      if (g.flexible != (g.length == LengthClass::FLEXIBLE))
        problems.push_back(at + ": flexible flag disagrees with length class");
      if (t.body == TileBody::SLAB && g.face != Dir::PZ && g.face != Dir::NZ && g.b != 0)
        problems.push_back(at + ": slab thin-face glue must anchor at b=0");
      auto [it, fresh] = domains.try_emplace(
          base_label(g.domain), DomainProps{g.strength, g.length, g.flexible, at});
      if (!fresh) {
        const DomainProps& d = it->second;
        if (d.strength != g.strength || d.length != g.length || d.flexible != g.flexible)
          problems.push_back(at + ": disagrees with " + d.where +
                             " on shared-domain strength/length/flexibility");
      }
    }
    std::set<uint32_t> seen;
    std::vector<int> fanout(t.glues.size(), 0);
    for (const SignalDef& s : t.signals) {
      if (s.source >= t.glues.size() || s.target >= t.glues.size()) {
        problems.push_back(t.name + ": signal glue index out of range");
        continue;
      }
      uint32_t key = (uint32_t(s.source) << 16) | s.target;
      if (!seen.insert(key).second)
        problems.push_back(t.name + ": duplicate signal " + std::to_string(s.source) + "->" +
                           std::to_string(s.target));
      fanout[s.source]++;
    }
    if (signal_budget >= 0)
      for (size_t gi = 0; gi < fanout.size(); ++gi)
        if (fanout[gi] > signal_budget)
          problems.push_back(t.name + "/" + t.glues[gi].domain + ": " +
                             std::to_string(fanout[gi]) + " signals exceeds budget " +
                             std::to_string(signal_budget));
  }
  return problems;
}

}  // namespace stamstar
