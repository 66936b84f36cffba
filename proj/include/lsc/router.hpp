#pragma once

#include <optional>
#include <vector>

#include "lsc/layout_state.hpp"

namespace lsc {

/// Two consecutive slices [first, last] a route is held for.
struct SliceWindow {
  int first = 0;
  int last = 1;
};

struct Route {
  // From the tile next to the source patch to the tile next to the destination
  // patch; the endpoint patches themselves are not included.
  std::vector<TileCoord> tiles;
  SliceWindow window;
};

/// Shortest route of free routing/ancilla tiles linking a neighbour of `src`
/// to a neighbour of `dst`, free for the whole window. Adjacent endpoints give
/// an empty route. A* with a Manhattan heuristic; ties go to the lower row,
/// then the lower column.
std::optional<Route> find_route(const LayoutState& state, TileCoord src, TileCoord dst,
                                SliceWindow window);

/// Claims every route tile for the window, or nothing on conflict.
bool reserve_route(LayoutState& state, const Route& route);
void release_route(LayoutState& state, const Route& route);

}  // namespace lsc
