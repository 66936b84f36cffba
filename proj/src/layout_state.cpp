#include "lsc/layout_state.hpp"

#include <stdexcept>

#include "lsc/error.hpp"

namespace lsc {

LayoutState::LayoutState(const Layout& layout, SchedulerOptions options)
    : layout_(&layout), options_(options), claims_(layout.size()) {
  if (options_.disttime < 1) throw ConfigError("disttime must be at least 1");
  magic_tiles_ = layout.tiles_of(TileKind::MagicReserved);
  y_tiles_ = layout.tiles_of(TileKind::YState);
  const int count = static_cast<int>(magic_tiles_.size());
  for (int j = 0; j < count; ++j) {
    Resource r;
    if (options_.stagger) r.phase = static_cast<int>((static_cast<long long>(j) * options_.disttime) / count);
    resources_.emplace(layout.index(magic_tiles_[static_cast<std::size_t>(j)]), r);
  }
  for (TileCoord t : y_tiles_) resources_.emplace(layout.index(t), Resource{});
}

bool LayoutState::is_free(TileCoord t, int from, int until) const {
  const Claim& c = claims_[layout_->index(t)];
  return c.until <= from || c.from >= until;
}

bool LayoutState::try_claim(std::span<const TileCoord> tiles, int from, int until) {
  for (TileCoord t : tiles) {
    if (!is_free(t, from, until)) return false;
  }
  for (TileCoord t : tiles) claims_[layout_->index(t)] = Claim{from, until};
  return true;
}

void LayoutState::release(std::span<const TileCoord> tiles, int from) {
  for (TileCoord t : tiles) {
    Claim& c = claims_[layout_->index(t)];
    if (c.from == from) c = Claim{};
  }
}

void LayoutState::bind_patch(PatchId patch, TileCoord tile) { patch_tiles_[patch.value] = tile; }

void LayoutState::unbind_patch(PatchId patch) { patch_tiles_.erase(patch.value); }

std::optional<TileCoord> LayoutState::tile_of(PatchId patch) const {
  auto it = patch_tiles_.find(patch.value);
  if (it == patch_tiles_.end()) return std::nullopt;
  return it->second;
}

bool LayoutState::resource_available(TileCoord t, int slice) const {
  auto it = resources_.find(layout_->index(t));
  if (it == resources_.end()) return false;
  const Resource& r = it->second;
  return !r.bound && slice >= r.available_from && is_free(t, slice);
}

std::optional<TileCoord> LayoutState::nearest_resource(TileKind kind, TileCoord near,
                                                       int slice) const {
  const auto& pool = kind == TileKind::MagicReserved ? magic_tiles_ : y_tiles_;
  std::optional<TileCoord> best;
  int best_distance = INT_MAX;
  for (TileCoord t : pool) {
    if (!resource_available(t, slice)) continue;
    const int d = manhattan(t, near);
    if (d < best_distance) {
      best_distance = d;
      best = t;
    }
  }
  return best;
}

void LayoutState::bind_resource(TileCoord t, PatchId patch) {
  auto it = resources_.find(layout_->index(t));
  if (it == resources_.end()) throw std::logic_error("bind_resource on a non-resource tile");
  it->second.bound = patch;
  bind_patch(patch, t);
}

void LayoutState::unbind_resource(TileCoord t) {
  Resource& r = resources_.at(layout_->index(t));
  if (r.bound) unbind_patch(*r.bound);
  r.bound.reset();
}

void LayoutState::consume_magic(TileCoord t, int slice) {
  Resource& r = resources_.at(layout_->index(t));
  if (r.bound) unbind_patch(*r.bound);
  r.bound.reset();
  if (slice > r.held_from) closed_holds_.push_back(MagicHold{t, r.held_from, slice});
  r.available_from = next_refresh(t, slice + options_.disttime);
  r.held_from = r.available_from;
}

void LayoutState::release_ystate(TileCoord t, int slice) {
  Resource& r = resources_.at(layout_->index(t));
  if (r.bound) unbind_patch(*r.bound);
  r.bound.reset();
  r.available_from = slice;
}

int LayoutState::refresh_phase(TileCoord t) const {
  auto it = resources_.find(layout_->index(t));
  return it == resources_.end() ? 0 : it->second.phase;
}

int LayoutState::next_refresh(TileCoord t, int earliest) const {
  const int period = options_.disttime;
  const int phase = refresh_phase(t);
  const int offset = ((earliest - phase) % period + period) % period;
  return offset == 0 ? earliest : earliest + (period - offset);
}

std::vector<TileCoord> LayoutState::refreshed_at(int slice) const {
  std::vector<TileCoord> out;
  for (TileCoord t : magic_tiles_) {
    const Resource& r = resources_.at(layout_->index(t));
    if (!r.bound && r.available_from == slice && slice > 0) out.push_back(t);
  }
  return out;
}

bool LayoutState::refresh_pending(int slice) const {
  for (TileCoord t : magic_tiles_) {
    const Resource& r = resources_.at(layout_->index(t));
    if (!r.bound && r.available_from > slice) return true;
  }
  return false;
}

std::vector<MagicHold> LayoutState::magic_holds() const {
  std::vector<MagicHold> out = closed_holds_;
  for (TileCoord t : magic_tiles_) {
    const Resource& r = resources_.at(layout_->index(t));
    out.push_back(MagicHold{t, r.held_from, INT_MAX});
  }
  return out;
}

}  // namespace lsc
