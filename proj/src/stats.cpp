#include "lsc/stats.hpp"

#include <algorithm>
#include <climits>
#include <fstream>
#include <sstream>

#include "lsc/error.hpp"

namespace lsc {
namespace {

std::string tile_pair(TileCoord a, TileCoord b) { return to_string(a) + "-" + to_string(b); }

std::string entry_text(const ScheduledLli& s, int slice) {
  std::string text = format_lli(s.lli);
  switch (s.lli.kind) {
    case LliKind::BellBasedCNOT: {
      text += " [";
      bool first = true;
      for (const LocalInstruction& local : s.locals) {
        if (local.slice != slice) continue;
        if (!first) text += ", ";
        first = false;
        text += std::string(local_kind_name(local.kind)) + " " + tile_pair(local.first, local.second);
      }
      text += "]";
      break;
    }
    case LliKind::RotateSingleCellPatch:
      if (s.tiles.size() == 2) text += " " + tile_pair(s.tiles[0], s.tiles[1]);
      break;
    case LliKind::MagicStateRequest:
    case LliKind::YStateRequest:
      if (s.bound_tile) text += " " + to_string(*s.bound_tile);
      break;
    default:
      break;
  }
  return text;
}

nlohmann::json tile_json(TileCoord t) { return nlohmann::json::array({t.row, t.col}); }

}  // namespace

std::string emit_sliced_lli(const SlicedProgram& program) {
  std::string out;
  const auto lines = program.lines();
  for (std::size_t k = 0; k < lines.size(); ++k) {
    for (std::size_t i = 0; i < lines[k].size(); ++i) {
      if (i) out += ", ";
      out += entry_text(program.instructions[lines[k][i]], static_cast<int>(k));
    }
    out += '\n';
  }
  return out;
}

nlohmann::json sliced_json(const SlicedProgram& program) {
  nlohmann::json slices = nlohmann::json::array();
  const auto lines = program.lines();
  for (std::size_t k = 0; k < lines.size(); ++k) {
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t node : lines[k]) {
      const ScheduledLli& s = program.instructions[node];
      nlohmann::json e;
      e["node"] = node;
      e["kind"] = lli_kind_name(s.lli.kind);
      nlohmann::json operands = nlohmann::json::array();
      for (std::uint8_t i = 0; i < s.lli.arity; ++i) operands.push_back(s.lli.operands[i].value);
      e["operands"] = operands;
      e["start"] = s.slice_start;
      e["duration"] = s.duration;
      nlohmann::json tiles = nlohmann::json::array();
      for (TileCoord t : s.tiles) tiles.push_back(tile_json(t));
      e["tiles"] = tiles;
      if (s.bound_tile) e["bound_tile"] = tile_json(*s.bound_tile);
      if (!s.locals.empty()) {
        nlohmann::json locals = nlohmann::json::array();
        for (const LocalInstruction& l : s.locals) {
          if (l.slice != static_cast<int>(k)) continue;
          locals.push_back({{"kind", local_kind_name(l.kind)},
                            {"tiles", {tile_json(l.first), tile_json(l.second)}}});
        }
        e["locals"] = locals;
      }
      entries.push_back(std::move(e));
    }
    slices.push_back({{"slice", k}, {"instructions", std::move(entries)}});
  }
  return {{"num_slices", program.num_slices},
          {"layout", {{"rows", program.layout.rows()}, {"cols", program.layout.cols()}}},
          {"slices", std::move(slices)}};
}

std::vector<std::uint64_t> active_tiles_per_slice(const SlicedProgram& program) {
  const Layout& layout = program.layout;
  const auto n = static_cast<std::size_t>(program.num_slices);
  std::vector<std::vector<std::size_t>> live(n);
  const auto qubits = layout.qubit_tiles();
  const auto ytiles = layout.tiles_of(TileKind::YState);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::uint32_t q = 0; q < program.num_qubits; ++q) live[k].push_back(layout.index(qubits[q]));
    for (TileCoord t : ytiles) live[k].push_back(layout.index(t));
  }
  for (const ScheduledLli& s : program.instructions) {
    for (int k = s.slice_start; k < s.completion() && k < program.num_slices; ++k) {
      for (TileCoord t : s.tiles) live[static_cast<std::size_t>(k)].push_back(layout.index(t));
    }
  }
  for (const MagicHold& h : program.magic_holds) {
    const int until = std::min(h.until, program.num_slices);
    for (int k = std::max(h.from, 0); k < until; ++k) {
      live[static_cast<std::size_t>(k)].push_back(layout.index(h.tile));
    }
  }
  std::vector<std::uint64_t> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto& v = live[k];
    std::sort(v.begin(), v.end());
    out[k] = static_cast<std::uint64_t>(std::unique(v.begin(), v.end()) - v.begin());
  }
  return out;
}

std::uint64_t active_volume(const SlicedProgram& program) {
  std::uint64_t total = 0;
  for (std::uint64_t v : active_tiles_per_slice(program)) total += v;
  return total;
}

std::uint64_t total_volume(const SlicedProgram& program) {
  const Layout& layout = program.layout;
  std::uint64_t alive = 0;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (layout.kind(i) != TileKind::Dead) ++alive;
  }
  return alive * static_cast<std::uint64_t>(program.num_slices);
}

std::vector<std::uint64_t> magic_profile(const SlicedProgram& program) {
  std::vector<std::uint64_t> m(static_cast<std::size_t>(program.num_slices), 0);
  for (std::size_t i = 0; i < program.instructions.size(); ++i) {
    if (program.instructions[i].lli.kind != LliKind::MagicStateRequest || m.empty()) continue;
    ++m[static_cast<std::size_t>(program.line_of(i))];
  }
  return m;
}

std::size_t cycle_count(std::size_t slices, std::uint64_t tau_d) {
  if (tau_d == 0) throw ConfigError("distillation cycle length must be positive");
  return static_cast<std::size_t>((slices + tau_d - 1) / tau_d);
}

std::uint64_t cumulative(std::span<const std::uint64_t> m_profile, std::uint64_t k, std::uint64_t tau_d) {
  if (tau_d == 0) throw ConfigError("distillation cycle length must be positive");
  const std::uint64_t through =
      k >= cycle_count(m_profile.size(), tau_d) ? m_profile.size() : k * tau_d;
  std::uint64_t sum = 0;
  for (std::uint64_t i = 0; i < through; ++i) sum += m_profile[i];
  return sum;
}

std::vector<std::uint64_t> cumulative_profile(std::span<const std::uint64_t> m_profile, std::uint64_t tau_d) {
  const std::size_t kmax = cycle_count(m_profile.size(), tau_d);
  std::vector<std::uint64_t> m(kmax, 0);
  std::uint64_t sum = 0;
  std::size_t i = 0;
  for (std::size_t k = 0; k < kmax; ++k) {
    const std::size_t end = std::min<std::size_t>(static_cast<std::size_t>((k + 1) * tau_d), m_profile.size());
    for (; i < end; ++i) sum += m_profile[i];
    m[k] = sum;
  }
  return m;
}

ProgramStats compute_stats(const SlicedProgram& program) {
  ProgramStats s;
  s.num_qubits = program.num_qubits;
  s.tau_logical = static_cast<std::uint64_t>(program.num_slices);
  s.total_volume = total_volume(program);
  s.active_volume = active_volume(program);
  s.m_profile = magic_profile(program);
  for (std::uint64_t m : s.m_profile) s.t_count += m;
  s.layout_rows = program.layout.rows();
  s.layout_cols = program.layout.cols();
  return s;
}

nlohmann::json to_json(const ProgramStats& s) {
  return {{"num_qubits", s.num_qubits},
          {"tau_logical", s.tau_logical},
          {"total_volume", s.total_volume},
          {"active_volume", s.active_volume},
          {"t_count", s.t_count},
          {"m_profile", s.m_profile},
          {"layout", {{"rows", s.layout_rows}, {"cols", s.layout_cols}}}};
}

ProgramStats stats_from_json(const nlohmann::json& j) {
  try {
    ProgramStats s;
    s.num_qubits = j.at("num_qubits").get<std::uint32_t>();
    s.m_profile = j.at("m_profile").get<std::vector<std::uint64_t>>();
    s.tau_logical = j.value("tau_logical", static_cast<std::uint64_t>(s.m_profile.size()));
    s.active_volume = j.at("active_volume").get<std::uint64_t>();
    s.total_volume = j.value("total_volume", std::uint64_t{0});
    std::uint64_t t = 0;
    for (std::uint64_t m : s.m_profile) t += m;
    s.t_count = j.value("t_count", t);
    if (j.contains("layout")) {
      s.layout_rows = j["layout"].value("rows", 0);
      s.layout_cols = j["layout"].value("cols", 0);
    }
    if (s.m_profile.size() != s.tau_logical) {
      throw ConfigError("m_profile length " + std::to_string(s.m_profile.size()) +
                        " does not match tau_logical " + std::to_string(s.tau_logical));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad stats JSON: ") + e.what());
  }
}

ProgramStats read_stats_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return stats_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("bad stats JSON in " + path.string() + ": " + e.what());
  }
}

}  // namespace lsc
