#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lsc/layout.hpp"
#include "lsc/layout_state.hpp"

namespace lsc {

struct LayoutVariant {
  std::string name;  // "1-lane", "2-lane-condensed", ...
  EdpcOptions options;
};

/// Accepts "K-lane", "K-lane-condensed" and the short forms "K", "Kc".
LayoutVariant parse_layout_variant(std::string_view text);

struct BenchConfig {
  std::vector<std::uint32_t> qubits;
  std::vector<std::size_t> depths;
  double t_fraction = 0.0;
  std::size_t samples = 10;
  std::vector<LayoutVariant> variants{{"1-lane", {}}};
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: hardware concurrency
  SchedulerOptions scheduler;
};

struct BenchRow {
  std::uint32_t qubits = 0;
  std::size_t depth = 0;
  std::string layout;
  std::size_t sample = 0;
  std::uint64_t seed = 0;
  std::size_t gates = 0;
  int slices = 0;
  double compile_seconds = 0;
  std::uint64_t total_volume = 0;
  std::uint64_t active_volume = 0;
  std::string status = "ok";
};

/// Circuit seed of one grid point; shared by every layout variant.
std::uint64_t sample_seed(std::uint64_t base, std::uint32_t qubits, std::size_t depth, std::size_t sample);

/// Compiles every (qubits, depth, variant, sample) point. Failures become rows
/// with a non-"ok" status. Rows come back sorted.
std::vector<BenchRow> run_scaling(const BenchConfig& config);

std::string bench_csv(std::span<const BenchRow> rows, bool include_timing = true);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace lsc
