#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lsc {

enum class TileKind {
  DataQubit,      // 'Q'
  Ancilla,        // 'A'
  Routing,        // 'r'
  MagicReserved,  // 'M'
  YState,         // 'Y'
  Dead,           // 'X'
  Distillation,   // '0'..'9'
};

std::optional<TileKind> tile_kind_from_glyph(char glyph);
char tile_kind_glyph(TileKind kind);
std::string_view tile_kind_name(TileKind kind);

/// Tiles that a route or a patch rotation may pass through.
constexpr bool is_routable(TileKind kind) {
  return kind == TileKind::Routing || kind == TileKind::Ancilla;
}

struct TileCoord {
  int row = 0;
  int col = 0;

  // Row-major ordering doubles as the deterministic tie-break everywhere.
  friend auto operator<=>(const TileCoord&, const TileCoord&) = default;
};

inline int manhattan(TileCoord a, TileCoord b) {
  return (a.row > b.row ? a.row - b.row : b.row - a.row) +
         (a.col > b.col ? a.col - b.col : b.col - a.col);
}

inline bool adjacent(TileCoord a, TileCoord b) { return manhattan(a, b) == 1; }

std::string to_string(TileCoord tile);

struct EdpcOptions {
  int num_lanes = 1;
  bool condensed = false;
};

class Layout {
 public:
  Layout() = default;

  /// Row-major glyph grid. Throws ConfigError on unknown glyphs or unroutable data tiles.
  Layout(int rows, int cols, std::string glyphs);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return glyphs_.size(); }

  bool contains(TileCoord t) const noexcept {
    return t.row >= 0 && t.col >= 0 && t.row < rows_ && t.col < cols_;
  }
  std::size_t index(TileCoord t) const noexcept {
    return static_cast<std::size_t>(t.row) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(t.col);
  }
  TileCoord coord(std::size_t index) const noexcept {
    return {static_cast<int>(index / static_cast<std::size_t>(cols_)),
            static_cast<int>(index % static_cast<std::size_t>(cols_))};
  }

  char glyph(TileCoord t) const { return glyphs_[index(t)]; }
  TileKind kind(TileCoord t) const { return kinds_[index(t)]; }
  TileKind kind(std::size_t index) const { return kinds_[index]; }

  /// Orthogonal in-bounds neighbours in row-major order (up, left, right, down).
  std::vector<TileCoord> neighbors(TileCoord t) const;

  /// Data tiles in row-major order; logical qubit i lives on qubit_tiles()[i].
  std::span<const TileCoord> qubit_tiles() const noexcept { return qubit_tiles_; }

  /// Tiles of one kind in row-major order.
  std::vector<TileCoord> tiles_of(TileKind kind) const;

  /// Set when the layout came from generate_edpc; used for the bulk tile ratio.
  const std::optional<EdpcOptions>& edpc_shape() const noexcept { return edpc_; }
  void set_edpc_shape(EdpcOptions shape) { edpc_ = shape; }

  const std::string& glyphs() const noexcept { return glyphs_; }

  /// Grid equality; generator metadata is not part of a layout's identity.
  friend bool operator==(const Layout& a, const Layout& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.glyphs_ == b.glyphs_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::string glyphs_;
  std::vector<TileKind> kinds_;
  std::vector<TileCoord> qubit_tiles_;
  std::optional<EdpcOptions> edpc_;
};

Layout parse_layout_ascii(std::string_view text);
std::string emit_layout_ascii(const Layout& layout);
Layout read_layout_file(const std::string& path);

/// EDPC layout for `num_qubits` logical qubits: data tiles on an interior
/// lattice separated by `num_lanes` routing lanes, a boundary ring of
/// alternating 'M'/'Y' tiles with routing corners. Condensed layouts pack
/// data tiles into 2x2 blocks.
Layout generate_edpc(std::uint32_t num_qubits, EdpcOptions options = {});

/// Non-fatal notes about a generator request (e.g. condensed with L % 4 != 0).
std::optional<std::string> edpc_warning(std::uint32_t num_qubits, EdpcOptions options);

/// Tile count of the default EDPC layout, (2 ceil(sqrt L) + 3)^2.
std::uint64_t edpc_default_tile_count(std::uint32_t num_qubits);

/// ceil(sqrt(n)) without floating point.
std::uint32_t ceil_sqrt(std::uint32_t n);

struct TileRatio {
  std::uint64_t ancilla = 0;  // routing + ancilla tiles
  std::uint64_t data = 0;
};

struct LayoutSummary {
  std::map<TileKind, std::size_t> counts;
  std::size_t total = 0;
  // Bulk ratio, reduced. Both orientations are reported by the CLI.
  TileRatio bulk;
};

LayoutSummary layout_summary(const Layout& layout);

/// Throws ConfigError unless the layout has room for `num_qubits` data patches.
void check_layout_capacity(const Layout& layout, std::uint32_t num_qubits);

}  // namespace lsc
