#pragma once

#include <climits>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "lsc/layout.hpp"
#include "lsc/lli.hpp"

namespace lsc {

struct SchedulerOptions {
  int disttime = 1;     // slices between magic-state outputs at an 'M' tile
  bool stagger = true;  // spread 'M' tile refresh phases evenly over disttime
};

/// Interval [from, until) during which an 'M' tile held a magic state.
struct MagicHold {
  TileCoord tile;
  int from = 0;
  int until = INT_MAX;
};

// Per-tile occupancy plus patch and resource-state bookkeeping for one
// compilation. Claims on a tile are made in non-decreasing slice order, so
// only the latest claim is kept.
class LayoutState {
 public:
  LayoutState(const Layout& layout, SchedulerOptions options);

  const Layout& layout() const noexcept { return *layout_; }
  const SchedulerOptions& options() const noexcept { return options_; }

  /// No claim on the tile overlaps [from, until).
  bool is_free(TileCoord t, int from, int until) const;
  bool is_free(TileCoord t, int slice) const { return is_free(t, slice, slice + 1); }

  /// Routable kind and free over [from, until).
  bool passable(TileCoord t, int from, int until) const {
    return is_routable(layout_->kind(t)) && is_free(t, from, until);
  }

  /// Claims every tile for [from, until), or nothing if any is taken.
  bool try_claim(std::span<const TileCoord> tiles, int from, int until);
  /// Drops claims that start at `from` on these tiles.
  void release(std::span<const TileCoord> tiles, int from);

  void bind_patch(PatchId patch, TileCoord tile);
  void unbind_patch(PatchId patch);
  std::optional<TileCoord> tile_of(PatchId patch) const;

  bool resource_available(TileCoord t, int slice) const;
  /// Closest available tile of `kind` (Manhattan distance, row-major tie-break).
  std::optional<TileCoord> nearest_resource(TileKind kind, TileCoord near, int slice) const;
  void bind_resource(TileCoord t, PatchId patch);
  /// Undoes bind_resource without touching availability.
  void unbind_resource(TileCoord t);
  /// The magic state on `t` was used up during `slice`.
  void consume_magic(TileCoord t, int slice);
  /// The catalytic sequence holding `t` finished; the Y state is back at `slice`.
  void release_ystate(TileCoord t, int slice);

  /// Refresh phase of an 'M' tile in [0, disttime).
  int refresh_phase(TileCoord t) const;
  /// First refresh slice of `t` at or after `earliest`.
  int next_refresh(TileCoord t, int earliest) const;
  /// 'M' tiles whose state is restored exactly at `slice`.
  std::vector<TileCoord> refreshed_at(int slice) const;

  /// Some unbound 'M' tile is still refreshing after `slice`.
  bool refresh_pending(int slice) const;

  /// Hold intervals of every 'M' tile, closed ones first, then open ones.
  std::vector<MagicHold> magic_holds() const;

 private:
  struct Claim {
    int from = 0;
    int until = 0;
  };
  struct Resource {
    std::optional<PatchId> bound;
    int available_from = 0;
    int held_from = 0;
    int phase = 0;
  };

  const Layout* layout_;
  SchedulerOptions options_;
  std::vector<Claim> claims_;
  std::unordered_map<std::uint32_t, TileCoord> patch_tiles_;
  std::unordered_map<std::size_t, Resource> resources_;
  std::vector<TileCoord> magic_tiles_;
  std::vector<TileCoord> y_tiles_;
  std::vector<MagicHold> closed_holds_;
};

}  // namespace lsc
