#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "stamstar/assembly.hpp"

namespace stamstar {

// Global minimum bond-cut strength over all two-sided partitions of the
// tiles. 0 when the bond graph is disconnected; INT_MAX for a single tile.
int min_bond_cut(const TileSet& ts, const Assembly& a);

bool tau_stable(const TileSet& ts, const Assembly& a, int tau);

// One forced break: splits along one cut of strength < tau, preferring
// disconnection, then the first single-bond sub-tau cut in bond order, then
// a Stoer-Wagner minimum cut. nullopt when the assembly is tau-stable
// (NOT_BREAKABLE).
std::optional<std::pair<Assembly, Assembly>> break_components(const TileSet& ts,
                                                              const Assembly& a, int tau);

// Repeated forced breaking until every piece is tau-stable. Tile count is
// conserved across the result.
std::vector<Assembly> resolve_breaks(const TileSet& ts, Assembly a, int tau);

}  // namespace stamstar
