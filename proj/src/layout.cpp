#include "lsc/layout.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "lsc/error.hpp"

namespace lsc {

std::optional<TileKind> tile_kind_from_glyph(char glyph) {
  switch (glyph) {
    case 'Q': return TileKind::DataQubit;
    case 'A': return TileKind::Ancilla;
    case 'r': return TileKind::Routing;
    case 'M': return TileKind::MagicReserved;
    case 'Y': return TileKind::YState;
    case 'X': return TileKind::Dead;
    default:
      if (glyph >= '0' && glyph <= '9') return TileKind::Distillation;
      return std::nullopt;
  }
}

char tile_kind_glyph(TileKind kind) {
  switch (kind) {
    case TileKind::DataQubit: return 'Q';
    case TileKind::Ancilla: return 'A';
    case TileKind::Routing: return 'r';
    case TileKind::MagicReserved: return 'M';
    case TileKind::YState: return 'Y';
    case TileKind::Dead: return 'X';
    case TileKind::Distillation: return '0';
  }
  return '?';
}

std::string_view tile_kind_name(TileKind kind) {
  switch (kind) {
    case TileKind::DataQubit: return "data";
    case TileKind::Ancilla: return "ancilla";
    case TileKind::Routing: return "routing";
    case TileKind::MagicReserved: return "magic";
    case TileKind::YState: return "y_state";
    case TileKind::Dead: return "dead";
    case TileKind::Distillation: return "distillation";
  }
  return "?";
}

std::string to_string(TileCoord tile) {
  return "(" + std::to_string(tile.row) + "," + std::to_string(tile.col) + ")";
}

Layout::Layout(int rows, int cols, std::string glyphs)
    : rows_(rows), cols_(cols), glyphs_(std::move(glyphs)) {
  if (rows_ <= 0 || cols_ <= 0) throw ConfigError("layout must have at least one tile");
  if (glyphs_.size() != static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_)) {
    throw ConfigError("layout glyph count does not match its dimensions");
  }
  kinds_.reserve(glyphs_.size());
  for (std::size_t i = 0; i < glyphs_.size(); ++i) {
    auto kind = tile_kind_from_glyph(glyphs_[i]);
    if (!kind) {
      throw ConfigError("unknown tile glyph '" + std::string(1, glyphs_[i]) + "' at " +
                        to_string(coord(i)));
    }
    kinds_.push_back(*kind);
    if (*kind == TileKind::DataQubit) qubit_tiles_.push_back(coord(i));
  }
  for (TileCoord q : qubit_tiles_) {
    bool reachable = false;
    for (TileCoord n : neighbors(q)) reachable = reachable || kind(n) != TileKind::Dead;
    if (!reachable) throw ConfigError("data tile " + to_string(q) + " has no usable neighbour");
  }
}

std::vector<TileCoord> Layout::neighbors(TileCoord t) const {
  std::vector<TileCoord> out;
  out.reserve(4);
  const std::array<TileCoord, 4> candidates = {TileCoord{t.row - 1, t.col}, TileCoord{t.row, t.col - 1},
                                               TileCoord{t.row, t.col + 1}, TileCoord{t.row + 1, t.col}};
  for (TileCoord c : candidates) {
    if (contains(c)) out.push_back(c);
  }
  return out;
}

std::vector<TileCoord> Layout::tiles_of(TileKind k) const {
  std::vector<TileCoord> out;
  for (std::size_t i = 0; i < kinds_.size(); ++i) {
    if (kinds_[i] == k) out.push_back(coord(i));
  }
  return out;
}

Layout parse_layout_ascii(std::string_view text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\r') continue;
    if (c == '\n') {
      lines.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) lines.push_back(std::move(current));
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("empty layout", 1, 1);

  const std::size_t width = lines.front().size();
  std::string glyphs;
  for (std::size_t r = 0; r < lines.size(); ++r) {
    const std::string& line = lines[r];
    if (line.size() != width) {
      throw ParseError("ragged layout: row has " + std::to_string(line.size()) +
                           " tiles, expected " + std::to_string(width),
                       static_cast<int>(r + 1), static_cast<int>(std::min(line.size(), width) + 1));
    }
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (!tile_kind_from_glyph(line[c])) {
        throw ParseError("unknown tile character '" + std::string(1, line[c]) + "'",
                         static_cast<int>(r + 1), static_cast<int>(c + 1));
      }
    }
    glyphs += line;
  }
  if (width == 0) throw ParseError("empty layout", 1, 1);
  return Layout(static_cast<int>(lines.size()), static_cast<int>(width), std::move(glyphs));
}

std::string emit_layout_ascii(const Layout& layout) {
  std::string out;
  out.reserve(layout.size() + static_cast<std::size_t>(layout.rows()));
  for (int r = 0; r < layout.rows(); ++r) {
    out.append(layout.glyphs(), static_cast<std::size_t>(r) * static_cast<std::size_t>(layout.cols()),
               static_cast<std::size_t>(layout.cols()));
    out += '\n';
  }
  return out;
}

Layout read_layout_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open layout file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_layout_ascii(buf.str());
}

std::uint32_t ceil_sqrt(std::uint32_t n) {
  std::uint64_t s = 0;
  while (s * s < n) ++s;
  return static_cast<std::uint32_t>(s);
}

std::uint64_t edpc_default_tile_count(std::uint32_t num_qubits) {
  const std::uint64_t side = 2ULL * ceil_sqrt(num_qubits) + 3;
  return side * side;
}

namespace {

void paint_boundary_ring(std::string& glyphs, int n) {
  auto at = [&](int r, int c) -> char& { return glyphs[static_cast<std::size_t>(r * n + c)]; };
  std::vector<std::pair<int, int>> ring;
  for (int c = 1; c < n - 1; ++c) ring.emplace_back(0, c);
  for (int r = 1; r < n - 1; ++r) ring.emplace_back(r, n - 1);
  for (int c = n - 2; c >= 1; --c) ring.emplace_back(n - 1, c);
  for (int r = n - 2; r >= 1; --r) ring.emplace_back(r, 0);
  for (std::size_t i = 0; i < ring.size(); ++i) {
    at(ring[i].first, ring[i].second) = (i % 2 == 0) ? 'M' : 'Y';
  }
}

}  // namespace

std::optional<std::string> edpc_warning(std::uint32_t num_qubits, EdpcOptions options) {
  if (options.condensed && num_qubits % 4 != 0) {
    return "condensed layout with " + std::to_string(num_qubits) +
           " qubits: the last block is partial, so some data tiles expose more than two edges";
  }
  return std::nullopt;
}

Layout generate_edpc(std::uint32_t num_qubits, EdpcOptions options) {
  if (num_qubits == 0) throw ConfigError("EDPC layout needs at least one logical qubit");
  if (options.num_lanes < 1) throw ConfigError("num_lanes must be positive");
  const int k = options.num_lanes;

  std::vector<TileCoord> data;
  int n = 0;
  if (!options.condensed) {
    const int s = static_cast<int>(ceil_sqrt(num_qubits));
    n = s * (k + 1) + k + 2;
    for (std::uint32_t q = 0; q < num_qubits; ++q) {
      const int i = static_cast<int>(q) / s;
      const int j = static_cast<int>(q) % s;
      data.push_back({1 + k + i * (k + 1), 1 + k + j * (k + 1)});
    }
  } else {
    const std::uint32_t blocks = (num_qubits + 3) / 4;
    const int b = static_cast<int>(ceil_sqrt(blocks));
    n = 2 * b + (b + 1) * k + 2;
    for (std::uint32_t q = 0; q < num_qubits; ++q) {
      const int block = static_cast<int>(q / 4);
      const int slot = static_cast<int>(q % 4);
      const int top = 1 + k + (block / b) * (2 + k);
      const int left = 1 + k + (block % b) * (2 + k);
      data.push_back({top + slot / 2, left + slot % 2});
    }
  }

  std::string glyphs(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 'r');
  paint_boundary_ring(glyphs, n);
  for (TileCoord t : data) glyphs[static_cast<std::size_t>(t.row * n + t.col)] = 'Q';
  Layout layout(n, n, std::move(glyphs));
  layout.set_edpc_shape(options);
  return layout;
}

LayoutSummary layout_summary(const Layout& layout) {
  LayoutSummary summary;
  for (std::size_t i = 0; i < layout.size(); ++i) ++summary.counts[layout.kind(i)];
  summary.total = layout.size();

  TileRatio bulk;
  if (const auto& shape = layout.edpc_shape()) {
    const std::uint64_t k = static_cast<std::uint64_t>(shape->num_lanes);
    if (shape->condensed) {
      bulk = {(2 + k) * (2 + k) - 4, 4};
    } else {
      bulk = {(1 + k) * (1 + k) - 1, 1};
    }
  } else if (!layout.qubit_tiles().empty()) {
    // Bounding box of the data tiles plus one trailing row and column: one
    // period of a regular lattice when the layout is lattice-shaped.
    int r0 = layout.rows(), c0 = layout.cols(), r1 = 0, c1 = 0;
    for (TileCoord q : layout.qubit_tiles()) {
      r0 = std::min(r0, q.row);
      c0 = std::min(c0, q.col);
      r1 = std::max(r1, q.row);
      c1 = std::max(c1, q.col);
    }
    r1 = std::min(r1 + 1, layout.rows() - 1);
    c1 = std::min(c1 + 1, layout.cols() - 1);
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) {
        const TileKind kind = layout.kind(TileCoord{r, c});
        if (kind == TileKind::DataQubit) ++bulk.data;
        if (is_routable(kind)) ++bulk.ancilla;
      }
    }
  }
  const std::uint64_t g = std::gcd(bulk.ancilla, bulk.data);
  if (g > 1) {
    bulk.ancilla /= g;
    bulk.data /= g;
  }
  summary.bulk = bulk;
  return summary;
}

void check_layout_capacity(const Layout& layout, std::uint32_t num_qubits) {
  if (layout.qubit_tiles().size() < num_qubits) {
    throw ConfigError("layout has " + std::to_string(layout.qubit_tiles().size()) +
                      " data tiles but the circuit needs " + std::to_string(num_qubits));
  }
}

}  // namespace lsc
