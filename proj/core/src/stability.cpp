#include "stamstar/stability.hpp"

#include <algorithm>
#include <cassert>
#include <climits>
#include <numeric>

namespace stamstar {

namespace {

// Stoer-Wagner global min cut. Returns {weight, one side as original tile
// indices}. Assumes n >= 2 and a connected weight matrix (weight 0 allowed).
std::pair<int, std::vector<int>> stoer_wagner(std::vector<std::vector<int>> w) {
  int n = int(w.size());
  std::vector<std::vector<int>> members(n);
  for (int i = 0; i < n; ++i) members[i] = {i};
  std::vector<int> active(n);
  std::iota(active.begin(), active.end(), 0);
  int best = INT_MAX;
  std::vector<int> best_side;
  while (active.size() > 1) {
    // maximum adjacency order
    std::vector<int> order;
    std::vector<int> weight_to(n, 0);
    std::vector<char> added(n, 0);
    for (size_t step = 0; step < active.size(); ++step) {
      int sel = -1;
      for (int v : active)
        if (!added[v] && (sel < 0 || weight_to[v] > weight_to[sel])) sel = v;
      added[sel] = 1;
      order.push_back(sel);
      for (int v : active)
        if (!added[v]) weight_to[v] += w[sel][v];
    }
    int t = order.back();
    int s = order[order.size() - 2];
    int cut = weight_to[t];
    if (cut < best) {
      best = cut;
      best_side = members[t];
    }
    // merge t into s
    for (int v : active) {
      if (v == s || v == t) continue;
      w[s][v] += w[t][v];
      w[v][s] = w[s][v];
    }
    members[s].insert(members[s].end(), members[t].begin(), members[t].end());
    active.erase(std::find(active.begin(), active.end(), t));
  }
  return {best, best_side};
}

std::vector<std::vector<int>> weight_matrix(const TileSet& ts, const Assembly& a) {
  int n = int(a.tiles.size());
  std::vector<std::vector<int>> w(n, std::vector<int>(n, 0));
  for (const Bond& b : a.bonds) {
    int s = bond_strength(ts, a, b);
    w[b.tile_a][b.tile_b] += s;
    w[b.tile_b][b.tile_a] += s;
  }
  return w;
}

// Tile indices of str<tau single-bond cuts: bridges of the bond multigraph
// whose strength alone is below tau. Linear-time bridge finding.
std::optional<int> find_weak_bridge(const TileSet& ts, const Assembly& a, int tau) {
  int n = int(a.tiles.size());
  struct Edge {
    int to, bond;
  };
  std::vector<std::vector<Edge>> adj(n);
  for (size_t bi = 0; bi < a.bonds.size(); ++bi) {
    const Bond& b = a.bonds[bi];
    adj[b.tile_a].push_back({int(b.tile_b), int(bi)});
    adj[b.tile_b].push_back({int(b.tile_a), int(bi)});
  }
  std::vector<int> disc(n, -1), low(n, 0);
  int timer = 0;
  std::optional<int> found;
  // iterative DFS; picks the lowest-index bridge bond below tau
  std::vector<std::tuple<int, int, size_t>> stack;  // node, in-bond, next-child
  for (int root = 0; root < n && !found; ++root) {
    if (disc[root] >= 0) continue;
    stack.emplace_back(root, -1, 0);
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      auto& [v, inb, ci] = stack.back();
      if (ci < adj[v].size()) {
        Edge e = adj[v][ci++];
        if (e.bond == inb) continue;
        if (disc[e.to] < 0) {
          disc[e.to] = low[e.to] = timer++;
          stack.emplace_back(e.to, e.bond, 0);
        } else {
          low[v] = std::min(low[v], disc[e.to]);
        }
      } else {
        int vc = v, inbc = inb;
        stack.pop_back();
        if (!stack.empty()) {
          int p = std::get<0>(stack.back());
          low[p] = std::min(low[p], low[vc]);
          if (low[vc] > disc[p] && bond_strength(ts, a, a.bonds[inbc]) < tau) {
            if (!found || inbc < *found) found = inbc;
          }
        }
      }
    }
  }
  return found;
}

std::pair<Assembly, Assembly> split_at(const Assembly& a, const std::vector<int>& side) {
  std::vector<char> in_side(a.tiles.size(), 0);
  for (int i : side) in_side[i] = 1;
  std::vector<int> l, r;
  for (size_t i = 0; i < a.tiles.size(); ++i) (in_side[i] ? l : r).push_back(int(i));
  return {extract(a, l), extract(a, r)};
}

}  // namespace

int min_bond_cut(const TileSet& ts, const Assembly& a) {
  if (a.tiles.size() <= 1) return INT_MAX;
  auto comps = bond_components(a);
  if (comps.size() > 1) return 0;
  return stoer_wagner(weight_matrix(ts, a)).first;
}

bool tau_stable(const TileSet& ts, const Assembly& a, int tau) {
  if (tau <= 0) return true;
  if (a.tiles.size() <= 1) return true;
  auto comps = bond_components(a);
  if (comps.size() > 1) return false;
  if (tau == 2) {
    // tau=2 cuts are either disconnections or single strength-1 bridges
    return !find_weak_bridge(ts, a, tau).has_value();
  }
  return stoer_wagner(weight_matrix(ts, a)).first >= tau;
}

std::optional<std::pair<Assembly, Assembly>> break_components(const TileSet& ts,
                                                              const Assembly& a, int tau) {
  if (a.tiles.size() <= 1) return std::nullopt;
  auto comps = bond_components(a);
  if (comps.size() > 1) {
    std::vector<int> rest;
    for (size_t c = 1; c < comps.size(); ++c)
      rest.insert(rest.end(), comps[c].begin(), comps[c].end());
    return std::pair{extract(a, comps[0]), extract(a, rest)};
  }
  if (tau == 2) {
    auto bridge = find_weak_bridge(ts, a, tau);
    if (!bridge) return std::nullopt;
    Assembly cut = a;
    cut.remove_bond(*bridge);
    auto halves = bond_components(cut);
    assert(halves.size() == 2);
    return std::pair{extract(cut, halves[0]), extract(cut, halves[1])};
  }
  auto [weight, side] = stoer_wagner(weight_matrix(ts, a));
  if (weight >= tau) return std::nullopt;
  return split_at(a, side);
}

std::vector<Assembly> resolve_breaks(const TileSet& ts, Assembly a, int tau) {
  std::vector<Assembly> done;
  std::vector<Assembly> todo;
  todo.push_back(std::move(a));
  while (!todo.empty()) {
    Assembly cur = std::move(todo.back());
    todo.pop_back();
    auto halves = break_components(ts, cur, tau);
    if (!halves) {
      done.push_back(std::move(cur));
    } else {
      todo.push_back(std::move(halves->first));
      todo.push_back(std::move(halves->second));
    }
  }
  return done;
}

}  // namespace stamstar
