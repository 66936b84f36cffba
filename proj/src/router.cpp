#include "lsc/router.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <tuple>

namespace lsc {
namespace {

// Scratch buffers reused across calls; a stamp marks which entries are live.
struct Scratch {
  std::vector<std::uint32_t> stamp;
  std::vector<int> g;
  std::vector<std::int64_t> parent;
  std::vector<std::uint8_t> closed;
  std::uint32_t current = 0;

  void prepare(std::size_t n) {
    if (stamp.size() != n) {
      stamp.assign(n, 0);
      g.assign(n, 0);
      parent.assign(n, -1);
      closed.assign(n, 0);
      current = 0;
    }
    if (++current == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      current = 1;
    }
  }
  bool seen(std::size_t i) const { return stamp[i] == current; }
  void touch(std::size_t i) {
    if (stamp[i] != current) {
      stamp[i] = current;
      closed[i] = 0;
      parent[i] = -1;
    }
  }
};

thread_local Scratch scratch;

struct Open {
  int f;
  int row;
  int col;
  bool operator>(const Open& o) const {
    return std::tie(f, row, col) > std::tie(o.f, o.row, o.col);
  }
};

}  // namespace

std::optional<Route> find_route(const LayoutState& state, TileCoord src, TileCoord dst,
                                SliceWindow window) {
  const Layout& layout = state.layout();
  if (adjacent(src, dst)) return Route{{}, window};

  const int from = window.first;
  const int until = window.last + 1;
  auto usable = [&](TileCoord t) { return state.passable(t, from, until); };
  auto h = [&](TileCoord t) { return manhattan(t, dst) - 1; };

  Scratch& s = scratch;
  s.prepare(layout.size());
  std::priority_queue<Open, std::vector<Open>, std::greater<>> open;

  for (TileCoord n : layout.neighbors(src)) {
    if (!usable(n)) continue;
    const std::size_t i = layout.index(n);
    s.touch(i);
    s.g[i] = 1;
    s.parent[i] = -1;
    open.push({1 + h(n), n.row, n.col});
  }

  while (!open.empty()) {
    const Open top = open.top();
    open.pop();
    const TileCoord t{top.row, top.col};
    const std::size_t i = layout.index(t);
    if (s.closed[i]) continue;
    s.closed[i] = 1;
    if (adjacent(t, dst)) {
      Route route{{}, window};
      for (std::int64_t k = static_cast<std::int64_t>(i); k >= 0; k = s.parent[static_cast<std::size_t>(k)]) {
        route.tiles.push_back(layout.coord(static_cast<std::size_t>(k)));
      }
      std::reverse(route.tiles.begin(), route.tiles.end());
      return route;
    }
    for (TileCoord n : layout.neighbors(t)) {
      if (!usable(n)) continue;
      const std::size_t j = layout.index(n);
      const int g = s.g[i] + 1;
      if (s.seen(j) && (s.closed[j] || s.g[j] <= g)) continue;
      s.touch(j);
      s.g[j] = g;
      s.parent[j] = static_cast<std::int64_t>(i);
      open.push({g + h(n), n.row, n.col});
    }
  }
  return std::nullopt;
}

bool reserve_route(LayoutState& state, const Route& route) {
  return state.try_claim(route.tiles, route.window.first, route.window.last + 1);
}

void release_route(LayoutState& state, const Route& route) {
  state.release(route.tiles, route.window.first);
}

}  // namespace lsc
