#include "lsc/scheduler.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "lsc/error.hpp"

namespace lsc {

std::string_view local_kind_name(LocalKind kind) {
  switch (kind) {
    case LocalKind::TwoPatchMeasure: return "TwoPatchMeasure";
    case LocalKind::BellPrepare: return "BellPrepare";
    case LocalKind::BellMeasure: return "BellMeasure";
    case LocalKind::ExtendSplit: return "ExtendSplit";
    case LocalKind::MergeContract: return "MergeContract";
    case LocalKind::Move: return "Move";
  }
  return "?";
}

std::vector<LocalInstruction> compile_bell_cnot(TileCoord control, std::span<const TileCoord> route,
                                                TileCoord target, int first_slice) {
  std::vector<LocalInstruction> out;
  const int s1 = first_slice;
  const int s2 = first_slice + 1;
  const std::size_t n = route.size();
  if (n == 0) {
    out.push_back({LocalKind::TwoPatchMeasure, control, target, s1});
    out.push_back({LocalKind::TwoPatchMeasure, control, target, s2});
    return out;
  }
  if (n % 2 == 0) {
    for (std::size_t i = 0; i + 1 < n; i += 2) out.push_back({LocalKind::BellPrepare, route[i], route[i + 1], s1});
    out.push_back({LocalKind::MergeContract, control, route[0], s2});
    for (std::size_t i = 1; i + 1 < n; i += 2) out.push_back({LocalKind::BellMeasure, route[i], route[i + 1], s2});
  } else {
    out.push_back({LocalKind::ExtendSplit, control, route[0], s1});
    for (std::size_t i = 1; i + 1 < n; i += 2) out.push_back({LocalKind::BellPrepare, route[i], route[i + 1], s1});
    for (std::size_t i = 0; i + 1 < n; i += 2) out.push_back({LocalKind::BellMeasure, route[i], route[i + 1], s2});
  }
  out.push_back({LocalKind::MergeContract, route[n - 1], target, s2});
  return out;
}

int SlicedProgram::line_of(std::size_t node) const {
  return std::min(instructions[node].slice_start, num_slices - 1);
}

std::vector<std::vector<std::size_t>> SlicedProgram::lines() const {
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(num_slices));
  for (std::size_t i = 0; i < instructions.size(); ++i) {
    const ScheduledLli& s = instructions[i];
    if (s.duration == 0) {
      if (num_slices > 0) out[static_cast<std::size_t>(line_of(i))].push_back(i);
      continue;
    }
    for (int k = s.slice_start; k < s.completion(); ++k) out[static_cast<std::size_t>(k)].push_back(i);
  }
  return out;
}

std::optional<TileCoord> bind_resource(LayoutState& state, const Lli& request, TileCoord near,
                                       int slice) {
  const TileKind kind = request.kind == LliKind::MagicStateRequest ? TileKind::MagicReserved
                                                                   : TileKind::YState;
  auto tile = state.nearest_resource(kind, near, slice);
  if (tile) state.bind_resource(*tile, request.operands[0]);
  return tile;
}

std::vector<TileCoord> replenish(const LayoutState& state, int slice) {
  return state.refreshed_at(slice);
}

namespace {

// Zero-slice instructions that claim nothing; they run as soon as their inputs do.
bool transparent(LliKind kind) {
  switch (kind) {
    case LliKind::Reset:
    case LliKind::XGate:
    case LliKind::YGate:
    case LliKind::ZGate:
    case LliKind::HGate:
    case LliKind::SinglePatchMeasurement:
      return true;
    default:
      return false;
  }
}

class WaveScheduler {
 public:
  WaveScheduler(const LliDag& dag, const Layout& layout, const SchedulerOptions& options)
      : dag_(dag), state_(layout, options), out_(dag.size()), done_(dag.size(), 0),
        pending_(dag.size(), 0), joint_(dag.size(), 0) {
    for (std::size_t i = 0; i < dag.size(); ++i) out_[i].lli = dag.nodes[i];
    // A request is scheduled together with the first instruction that uses its patch.
    for (std::size_t i = 0; i < dag.size(); ++i) {
      if (!is_resource_request(dag.nodes[i].kind)) continue;
      for (std::size_t s : dag.succs[i]) {
        if (dag.nodes[s].kind == LliKind::BellBasedCNOT && dag.nodes[s].touches(dag.nodes[i].operands[0])) {
          joint_[i] = 1;
          break;
        }
      }
    }
    for (std::size_t i = 0; i < dag.size(); ++i) {
      for (std::size_t p : dag.preds[i]) {
        if (!joint_[p]) ++pending_[i];
      }
    }
    // Last instruction on every resource patch releases a Y state.
    for (std::size_t i = 0; i < dag.size(); ++i) {
      const Lli& l = dag.nodes[i];
      for (std::uint8_t k = 0; k < l.arity; ++k) last_use_[l.operands[k].value] = i;
    }
    const auto qubits = layout.qubit_tiles();
    for (std::uint32_t q = 0; q < dag.num_qubits; ++q) state_.bind_patch(PatchId{q}, qubits[q]);
  }

  SlicedProgram run() {
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < dag_.size(); ++i) {
      if (pending_[i] == 0 && !joint_[i]) roots.push_back(i);
    }
    std::vector<std::size_t> ready;
    for (std::size_t i : roots) admit(i, ready);
    std::sort(ready.begin(), ready.end());
    std::deque<std::size_t> current(ready.begin(), ready.end());
    std::deque<std::size_t> next;

    const int horizon = std::max(state_.options().disttime, 4);
    int idle = 0;
    int t = 0;
    while (scheduled_ < dag_.size()) {
      bool progress = false;
      while (!current.empty()) {
        const std::size_t u = current.front();
        current.pop_front();
        if (earliest(u) > t || !try_schedule(u, t)) {
          next.push_back(u);
          continue;
        }
        progress = true;
        std::vector<std::size_t> fresh;
        finish(u, fresh);
        std::sort(fresh.begin(), fresh.end());
        current.insert(current.end(), fresh.begin(), fresh.end());
      }
      if (scheduled_ == dag_.size()) break;
      const bool in_flight = max_completion_ > t || state_.refresh_pending(t);
      idle = (progress || in_flight) ? 0 : idle + 1;
      if (idle > horizon) throw_deadlock(next, t);
      ++t;
      std::swap(current, next);
    }

    SlicedProgram program;
    program.layout = state_.layout();
    program.num_qubits = dag_.num_qubits;
    program.num_slices = max_completion_;
    program.instructions = std::move(out_);
    program.magic_holds = state_.magic_holds();
    return program;
  }

 private:
  int earliest(std::size_t u) const {
    int e = 0;
    for (std::size_t p : dag_.preds[u]) {
      if (done_[p]) e = std::max(e, out_[p].completion());
    }
    return e;
  }

  // Ready node: transparent ones run at once (recursively), the rest wait in `ready`.
  void admit(std::size_t u, std::vector<std::size_t>& ready) {
    if (!transparent(dag_.nodes[u].kind)) {
      ready.push_back(u);
      return;
    }
    commit(u, earliest(u), 0, {});
    finish(u, ready);
  }

  void finish(std::size_t u, std::vector<std::size_t>& ready) {
    if (joint_[u]) return;
    for (std::size_t s : dag_.succs[u]) {
      if (--pending_[s] == 0) admit(s, ready);
    }
  }

  void commit(std::size_t u, int start, int duration, std::vector<TileCoord> tiles) {
    ScheduledLli& s = out_[u];
    s.slice_start = start;
    s.duration = duration;
    s.tiles = std::move(tiles);
    done_[u] = 1;
    ++scheduled_;
    max_completion_ = std::max(max_completion_, start + duration);
  }

  std::optional<std::size_t> request_for(std::size_t u, PatchId patch) const {
    for (std::size_t p : dag_.preds[u]) {
      if (joint_[p] && !done_[p] && dag_.nodes[p].operands[0] == patch) return p;
    }
    return std::nullopt;
  }

  TileCoord tile_or_throw(PatchId patch) const {
    auto tile = state_.tile_of(patch);
    if (!tile) throw std::logic_error("patch " + std::to_string(patch.value) + " has no tile");
    return *tile;
  }

  bool try_schedule(std::size_t u, int t) {
    const Lli& l = dag_.nodes[u];
    switch (l.kind) {
      case LliKind::RotateSingleCellPatch: return schedule_rotation(u, t);
      case LliKind::BellBasedCNOT: return schedule_cnot(u, t);
      case LliKind::MagicStateRequest:
      case LliKind::YStateRequest: {
        auto tile = bind_resource(state_, l, TileCoord{0, 0}, t);
        if (!tile) return false;
        out_[u].bound_tile = tile;
        commit(u, t, 0, {});
        return true;
      }
      default:
        commit(u, t, 0, {});
        return true;
    }
  }

  bool schedule_rotation(std::size_t u, int t) {
    const int duration = lli_duration(LliKind::RotateSingleCellPatch);
    const TileCoord data = tile_or_throw(dag_.nodes[u].operands[0]);
    if (!state_.is_free(data, t, t + duration)) return false;
    for (TileCoord n : state_.layout().neighbors(data)) {
      if (!state_.passable(n, t, t + duration)) continue;
      std::vector<TileCoord> tiles{data, n};
      if (!state_.try_claim(tiles, t, t + duration)) return false;
      commit(u, t, duration, std::move(tiles));
      return true;
    }
    return false;
  }

  bool schedule_cnot(std::size_t u, int t) {
    const Lli& l = dag_.nodes[u];
    const int duration = lli_duration(LliKind::BellBasedCNOT);
    std::array<std::optional<TileCoord>, 2> ends{state_.tile_of(l.operands[0]), state_.tile_of(l.operands[1])};
    std::array<std::optional<std::size_t>, 2> requests{};
    for (int k = 0; k < 2; ++k) {
      if (ends[k]) continue;
      requests[k] = request_for(u, l.operands[k]);
      if (!requests[k]) throw std::logic_error("patch " + std::to_string(l.operands[k].value) + " has no tile");
    }
    // Bind pending requests next to the other endpoint; undo on failure.
    auto rollback = [&] {
      for (int k = 0; k < 2; ++k) {
        if (requests[k] && ends[k]) state_.unbind_resource(*ends[k]);
      }
    };
    for (int k = 0; k < 2; ++k) {
      if (!requests[k]) continue;
      const TileCoord near = ends[1 - k] ? *ends[1 - k] : TileCoord{0, 0};
      ends[k] = bind_resource(state_, dag_.nodes[*requests[k]], near, t);
      if (!ends[k]) {
        rollback();
        return false;
      }
    }
    const TileCoord control = *ends[0];
    const TileCoord target = *ends[1];
    auto route = find_route(state_, control, target, SliceWindow{t, t + duration - 1});
    if (!route) {
      rollback();
      return false;
    }
    std::vector<TileCoord> tiles;
    tiles.reserve(route->tiles.size() + 2);
    tiles.push_back(control);
    tiles.insert(tiles.end(), route->tiles.begin(), route->tiles.end());
    tiles.push_back(target);
    if (!state_.try_claim(tiles, t, t + duration)) {
      rollback();
      return false;
    }

    for (int k = 0; k < 2; ++k) {
      if (!requests[k]) continue;
      out_[*requests[k]].bound_tile = ends[k];
      commit(*requests[k], t, 0, {});
    }
    out_[u].locals = compile_bell_cnot(control, route->tiles, target, t);
    commit(u, t, duration, std::move(tiles));

    // Resource bookkeeping for the patches this CNOT used.
    for (int k = 0; k < 2; ++k) {
      const PatchId p = l.operands[k];
      if (p.value < dag_.num_qubits) continue;
      const TileKind kind = state_.layout().kind(*ends[k]);
      if (kind == TileKind::MagicReserved) {
        state_.consume_magic(*ends[k], t + 1);
      } else if (kind == TileKind::YState && last_use_.at(p.value) == u) {
        state_.release_ystate(*ends[k], t + duration);
      }
    }
    return true;
  }

  [[noreturn]] void throw_deadlock(const std::deque<std::size_t>& waiting, int t) const {
    std::vector<std::size_t> stuck(waiting.begin(), waiting.end());
    std::sort(stuck.begin(), stuck.end());
    std::string message = "scheduler made no progress up to slice " + std::to_string(t) + "; waiting:";
    for (std::size_t i = 0; i < stuck.size() && i < 8; ++i) {
      message += " #" + std::to_string(stuck[i]) + " " + format_lli(dag_.nodes[stuck[i]]);
      if (i + 1 < stuck.size()) message += ";";
    }
    if (stuck.size() > 8) message += " ...";
    throw DeadlockError(message, std::move(stuck));
  }

  const LliDag& dag_;
  LayoutState state_;
  std::vector<ScheduledLli> out_;
  std::vector<std::uint8_t> done_;
  std::vector<std::size_t> pending_;
  std::vector<std::uint8_t> joint_;
  std::unordered_map<std::uint32_t, std::size_t> last_use_;
  std::size_t scheduled_ = 0;
  int max_completion_ = 0;
};

}  // namespace

SlicedProgram schedule(const LliDag& dag, const Layout& layout, const SchedulerOptions& options) {
  check_layout_capacity(layout, dag.num_qubits);
  return WaveScheduler(dag, layout, options).run();
}

}  // namespace lsc
