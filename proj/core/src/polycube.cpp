#include "stamstar/polycube.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace stamstar {

bool Shape::contains(Vec3 v) const {
  return std::binary_search(voxels.begin(), voxels.end(), v);
}

const char* shape_error_name(ShapeError e) {
  switch (e) {
    case ShapeError::NONE: return "NONE";
    case ShapeError::EMPTY: return "EMPTY";
    case ShapeError::DISCONNECTED: return "DISCONNECTED";
    case ShapeError::PARSE_ERROR: return "PARSE_ERROR";
  }
  return "?";
}

namespace {

ShapeResult shape_fail(ShapeError e, std::string msg) {
  return {std::nullopt, e, std::move(msg)};
}

bool parse_vec_line(const std::string& line, Vec3& out) {
  std::istringstream iss(line);
  std::string tail;
  if (!(iss >> out.x >> out.y >> out.z)) return false;
  if (iss >> tail) return false;
  return true;
}

}  // namespace

ShapeResult load_shape(std::string_view text) {
  std::vector<Vec3> voxels;
  std::unordered_set<Vec3, Vec3Hash> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Vec3 v;
    if (!parse_vec_line(line, v))
      return shape_fail(ShapeError::PARSE_ERROR,
                        "line " + std::to_string(lineno) + ": expected three integers");
    if (!seen.insert(v).second)
      return shape_fail(ShapeError::PARSE_ERROR,
                        "line " + std::to_string(lineno) + ": duplicate voxel");
    voxels.push_back(v);
  }
  if (voxels.empty()) return shape_fail(ShapeError::EMPTY, "no voxels");

  // connectivity over the 6-neighbor graph
  std::unordered_set<Vec3, Vec3Hash> reached;
  std::queue<Vec3> q;
  q.push(voxels[0]);
  reached.insert(voxels[0]);
  while (!q.empty()) {
    Vec3 v = q.front();
    q.pop();
    for (int d = 0; d < kDirCount; ++d) {
      Vec3 n = v + dir_vec(Dir(d));
      if (seen.count(n) && reached.insert(n).second) q.push(n);
    }
  }
  if (reached.size() != voxels.size())
    return shape_fail(ShapeError::DISCONNECTED,
                      std::to_string(voxels.size() - reached.size()) + " voxel(s) unreachable");

  Vec3 lo = voxels[0];
  for (const Vec3& v : voxels) {
    lo.x = std::min(lo.x, v.x);
    lo.y = std::min(lo.y, v.y);
    lo.z = std::min(lo.z, v.z);
  }
  for (Vec3& v : voxels) v = v - lo;
  std::sort(voxels.begin(), voxels.end());
  return {Shape{std::move(voxels)}, ShapeError::NONE, ""};
}

std::string shape_to_text(const Shape& s) {
  std::ostringstream os;
  for (const Vec3& v : s.voxels) os << v.x << " " << v.y << " " << v.z << "\n";
  return os.str();
}

Shape scale(const Shape& s, int c) {
  assert(c >= 1);
  Shape out;
  out.voxels.reserve(s.voxels.size() * size_t(c) * size_t(c) * size_t(c));
  for (const Vec3& v : s.voxels)
    for (int i = 0; i < c; ++i)
      for (int j = 0; j < c; ++j)
        for (int k = 0; k < c; ++k)
          out.voxels.push_back(Vec3{c * v.x + i, c * v.y + j, c * v.z + k});
  std::sort(out.voxels.begin(), out.voxels.end());
  return out;
}

std::vector<std::pair<Vec3, Vec3>> spanning_tree(const Shape& s) {
  std::vector<std::pair<Vec3, Vec3>> edges;
  if (s.voxels.empty()) return edges;
  std::unordered_set<Vec3, Vec3Hash> reached;
  std::queue<Vec3> q;
  q.push(s.voxels[0]);
  reached.insert(s.voxels[0]);
  while (!q.empty()) {
    Vec3 v = q.front();
    q.pop();
    for (int d = 0; d < kDirCount; ++d) {
      Vec3 n = v + dir_vec(Dir(d));
      if (s.contains(n) && reached.insert(n).second) {
        edges.emplace_back(v, n);
        q.push(n);
      }
    }
  }
  assert(edges.size() + 1 == s.voxels.size());
  return edges;
}

namespace {

// One Hamiltonian 8-cycle of the 2x2x2 block, and its x-mirror for blocks
// of odd coordinate parity.
constexpr std::array<Vec3, 8> kBlockCycle{{{0, 0, 0},
                                           {1, 0, 0},
                                           {1, 1, 0},
                                           {0, 1, 0},
                                           {0, 1, 1},
                                           {1, 1, 1},
                                           {1, 0, 1},
                                           {0, 0, 1}}};

bool block_parity(Vec3 v) { return ((v.x + v.y + v.z) & 1) != 0; }

Vec3 block_local(Vec3 v, Vec3 local, bool mirrored) {
  if (mirrored) local.x = 1 - local.x;
  return 2 * v + local;
}

// The splice at a tree edge consumes one fixed edge on each side, phrased
// from the even block. Per direction, the even-side pair below and its
// facing image in the odd block are all pairwise distinct across the six
// directions, so splices on different faces of one block never compete for
// an edge and the merge cannot get stuck.
constexpr std::array<std::array<Vec3, 2>, kDirCount> kSpliceEdge{{
    {{{1, 0, 0}, {1, 1, 0}}},  // PX
    {{{0, 0, 1}, {0, 0, 0}}},  // NX
    {{{0, 1, 1}, {1, 1, 1}}},  // PY
    {{{0, 0, 0}, {1, 0, 0}}},  // NY
    {{{1, 0, 1}, {0, 0, 1}}},  // PZ
    {{{1, 1, 0}, {0, 1, 0}}},  // NZ
}};

using Adjacency = std::unordered_map<Vec3, std::array<Vec3, 2>, Vec3Hash>;

void replace_neighbor(Adjacency& adj, Vec3 at, Vec3 from, Vec3 to) {
  auto& slots = adj.at(at);
  if (slots[0] == from) slots[0] = to;
  else {
    assert(slots[1] == from);
    slots[1] = to;
  }
}

}  // namespace

HamCircuit hamiltonian_circuit(const Shape& s) {
  assert(!s.voxels.empty());
  Adjacency adj;
  adj.reserve(s.voxels.size() * 8);
  for (const Vec3& v : s.voxels) {
    bool mir = block_parity(v);
    for (size_t i = 0; i < 8; ++i) {
      Vec3 cur = block_local(v, kBlockCycle[i], mir);
      Vec3 prev = block_local(v, kBlockCycle[(i + 7) % 8], mir);
      Vec3 next = block_local(v, kBlockCycle[(i + 1) % 8], mir);
      adj.emplace(cur, std::array<Vec3, 2>{prev, next});
    }
  }

  for (const auto& [u, v] : spanning_tree(s)) {
    Vec3 even = block_parity(u) ? v : u;
    Vec3 odd = block_parity(u) ? u : v;
    Dir d = vec_dir(odd - even);
    Vec3 step = dir_vec(d);
    Vec3 a1 = block_local(even, kSpliceEdge[size_t(d)][0], false);
    Vec3 a2 = block_local(even, kSpliceEdge[size_t(d)][1], false);
    Vec3 b1 = a1 + step;
    Vec3 b2 = a2 + step;
    replace_neighbor(adj, a1, a2, b1);
    replace_neighbor(adj, b1, b2, a1);
    replace_neighbor(adj, a2, a1, b2);
    replace_neighbor(adj, b2, b1, a2);
  }

  HamCircuit out;
  out.closed = true;
  out.cells.reserve(adj.size());
  Vec3 start = 2 * s.voxels[0];
  Vec3 prev = start;
  Vec3 cur = std::min(adj.at(start)[0], adj.at(start)[1]);
  out.cells.push_back(start);
  while (cur != start) {
    out.cells.push_back(cur);
    const auto& slots = adj.at(cur);
    Vec3 next = slots[0] == prev ? slots[1] : slots[0];
    prev = cur;
    cur = next;
  }
  assert(out.cells.size() == adj.size());
  return out;
}

bool validate_circuit(const Shape& base, const HamCircuit& c, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  Shape want = scale(base, 2);
  if (c.cells.size() != want.voxels.size())
    return fail("cell count " + std::to_string(c.cells.size()) + ", want " +
                std::to_string(want.voxels.size()));
  std::vector<Vec3> sorted = c.cells;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    return fail("a cell is visited twice");
  if (sorted != want.voxels) return fail("cell set differs from the scaled shape");
  size_t n = c.cells.size();
  size_t last = c.closed ? n : n - 1;
  for (size_t i = 0; i < last; ++i) {
    if (manhattan(c.cells[i], c.cells[(i + 1) % n]) != 1)
      return fail("cells " + std::to_string(i) + " and " + std::to_string((i + 1) % n) +
                  " are not 6-adjacent");
  }
  return true;
}

namespace {

HamCircuit cut_at_index(const HamCircuit& c, size_t i) {
  HamCircuit out;
  out.closed = false;
  out.cells.reserve(c.cells.size());
  out.cells.insert(out.cells.end(), c.cells.begin() + ptrdiff_t(i), c.cells.end());
  out.cells.insert(out.cells.end(), c.cells.begin(), c.cells.begin() + ptrdiff_t(i));
  return out;
}

}  // namespace

HamCircuit open_path(const HamCircuit& c, StartRule rule) {
  assert(rule == StartRule::FIRST_EXTERIOR);
  (void)rule;
  if (!c.closed) return c;
  std::unordered_set<Vec3, Vec3Hash> cells(c.cells.begin(), c.cells.end());
  for (size_t i = 0; i < c.cells.size(); ++i) {
    for (int d = 0; d < kDirCount; ++d) {
      if (!cells.count(c.cells[i] + dir_vec(Dir(d)))) return cut_at_index(c, i);
    }
  }
  assert(false && "a finite shape always has exterior cells");
  return c;
}

std::optional<HamCircuit> open_path_at(const HamCircuit& c, Vec3 start) {
  auto it = std::find(c.cells.begin(), c.cells.end(), start);
  if (it == c.cells.end()) return std::nullopt;
  size_t i = size_t(it - c.cells.begin());
  if (!c.closed) {
    if (i != 0) return std::nullopt;
    return c;
  }
  return cut_at_index(c, i);
}

std::string circuit_to_text(const HamCircuit& c) {
  std::ostringstream os;
  os << (c.closed ? "CLOSED" : "OPEN") << "\n";
  for (const Vec3& v : c.cells) os << v.x << " " << v.y << " " << v.z << "\n";
  return os.str();
}

std::optional<HamCircuit> circuit_from_text(std::string_view text, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return std::nullopt;
  };
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  HamCircuit out;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!have_header) {
      std::istringstream iss(line);
      std::string word, tail;
      iss >> word;
      if ((word != "CLOSED" && word != "OPEN") || (iss >> tail))
        return fail("line " + std::to_string(lineno) + ": expected CLOSED or OPEN header");
      out.closed = word == "CLOSED";
      have_header = true;
      continue;
    }
    Vec3 v;
    if (!parse_vec_line(line, v))
      return fail("line " + std::to_string(lineno) + ": expected three integers");
    out.cells.push_back(v);
  }
  if (!have_header) return fail("missing CLOSED/OPEN header");
  if (out.cells.empty()) return fail("no cells");
  return out;
}

}  // namespace stamstar
