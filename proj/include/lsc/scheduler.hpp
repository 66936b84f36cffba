#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lsc/layout_state.hpp"
#include "lsc/lli.hpp"
#include "lsc/router.hpp"

namespace lsc {

enum class LocalKind { TwoPatchMeasure, BellPrepare, BellMeasure, ExtendSplit, MergeContract, Move };

std::string_view local_kind_name(LocalKind kind);

/// One-slice operation on two orthogonally adjacent tiles.
struct LocalInstruction {
  LocalKind kind = LocalKind::BellPrepare;
  TileCoord first;
  TileCoord second;
  int slice = 0;

  friend bool operator==(const LocalInstruction&, const LocalInstruction&) = default;
};

/// Two-slice Bell-state CNOT along `route` between the control and target tiles.
/// Even routes prepare Bell pairs on (r1,r2), (r3,r4), ... and then stitch them;
/// odd routes extend the control onto r1 first. An empty route falls back to a
/// direct two-patch measurement held for both slices.
std::vector<LocalInstruction> compile_bell_cnot(TileCoord control, std::span<const TileCoord> route,
                                                TileCoord target, int first_slice);

struct ScheduledLli {
  Lli lli;
  int slice_start = -1;
  int duration = 0;
  std::vector<TileCoord> tiles;  // every tile claimed for [slice_start, completion)
  std::vector<LocalInstruction> locals;
  std::optional<TileCoord> bound_tile;  // resource requests

  int completion() const noexcept { return slice_start + duration; }
};

struct SlicedProgram {
  Layout layout;
  std::uint32_t num_qubits = 0;
  int num_slices = 0;
  std::vector<ScheduledLli> instructions;  // indexed like the DAG nodes
  std::vector<MagicHold> magic_holds;

  /// Output line of an instruction: its first slice, clamped into range.
  int line_of(std::size_t node) const;
  /// Node indices listed on each output line, in node order. Instructions
  /// spanning several slices appear on each of their lines.
  std::vector<std::vector<std::size_t>> lines() const;
};

/// Binds a request's patch to the closest available resource tile of the
/// matching kind. Absent when every such tile is taken or still refreshing.
std::optional<TileCoord> bind_resource(LayoutState& state, const Lli& request, TileCoord near,
                                       int slice);

/// 'M' tiles whose state is restored at `slice`.
std::vector<TileCoord> replenish(const LayoutState& state, int slice);

/// Greedy wave scheduling of the DAG on the layout.
SlicedProgram schedule(const LliDag& dag, const Layout& layout, const SchedulerOptions& options = {});

}  // namespace lsc
