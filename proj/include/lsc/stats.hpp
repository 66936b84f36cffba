#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lsc/scheduler.hpp"

namespace lsc {

struct ProgramStats {
  std::uint32_t num_qubits = 0;
  std::uint64_t tau_logical = 0;    // slices
  std::uint64_t total_volume = 0;   // non-dead tiles x slices
  std::uint64_t active_volume = 0;  // tile-slices
  std::uint64_t t_count = 0;
  std::vector<std::uint64_t> m_profile;  // magic-state requests per slice
  int layout_rows = 0;
  int layout_cols = 0;

  friend bool operator==(const ProgramStats&, const ProgramStats&) = default;
};

/// Canonical sliced listing: one line per slice, entries separated by ", ".
std::string emit_sliced_lli(const SlicedProgram& program);
nlohmann::json sliced_json(const SlicedProgram& program);

/// Live tiles per slice: data tiles, tiles claimed by running instructions,
/// 'Y' tiles, and 'M' tiles holding a state.
std::vector<std::uint64_t> active_tiles_per_slice(const SlicedProgram& program);
std::uint64_t active_volume(const SlicedProgram& program);
std::uint64_t total_volume(const SlicedProgram& program);

std::vector<std::uint64_t> magic_profile(const SlicedProgram& program);

/// Number of distillation cycles covering `slices` slices, ceil(slices / tau_d).
std::size_t cycle_count(std::size_t slices, std::uint64_t tau_d);
/// m(k): magic states consumed through slice k*tau_d, clamped to the profile.
std::uint64_t cumulative(std::span<const std::uint64_t> m_profile, std::uint64_t k, std::uint64_t tau_d);
/// m(1), ..., m(k_max).
std::vector<std::uint64_t> cumulative_profile(std::span<const std::uint64_t> m_profile, std::uint64_t tau_d);

ProgramStats compute_stats(const SlicedProgram& program);

nlohmann::json to_json(const ProgramStats& stats);
ProgramStats stats_from_json(const nlohmann::json& j);
ProgramStats read_stats_file(const std::filesystem::path& path);

}  // namespace lsc
