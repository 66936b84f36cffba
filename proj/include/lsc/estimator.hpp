#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lsc/error.hpp"
#include "lsc/stats.hpp"

namespace lsc {

/// One 15:1 distillation unit. n2 and tau2 are implementation defaults, not
/// measured values; override them with --unit-config.
struct DistillationUnitParams {
  double n2 = 12.0;    // tiles at full distance
  double tau2 = 6.0;   // full-distance slices per run
  int inputs = 15;
  double output_coefficient = 35.0;  // leading term of the output error, c * p_in^3
};

DistillationUnitParams unit_params_from_json(const nlohmann::json& j);
DistillationUnitParams read_unit_config(const std::filesystem::path& path);

enum class ParamType { Current, Projected };

struct HardwareParams {
  double p1 = 0;
  double p2 = 0;
  double pI = 0;

  static HardwareParams current() { return {4e-5, 3e-3, 3e-3}; }
  static HardwareParams projected() { return {4e-5, 6e-4, 1e-4}; }
  static HardwareParams of(ParamType type) {
    return type == ParamType::Current ? current() : projected();
  }
};

ParamType parse_param_type(std::string_view text);

/// Logical error per patch per slice, 0.1 d (p / 0.01)^((d+1)/2). Throws ConfigError for p >= 0.01.
double patch_error_rate(int d, double p);
/// Error of an injected magic state, (3/5) p2 + pI + (2/3) p1.
double injected_error(const HardwareParams& hw);

/// P[Bin(n, p) >= k].
double binomial_tail(std::uint64_t n, double p, std::uint64_t k);

struct FactoryDesign {
  int d1 = 0;
  int d2 = 0;
  std::uint64_t C1 = 0;
  double n1 = 0;
  double n2 = 0;
  double tau1 = 0;
  double tau2 = 0;
  std::uint64_t tau_D = 0;  // slices per distillation cycle
  std::uint64_t n_D = 0;    // tiles per factory
  double V_D = 0;           // active volume per factory cycle
  double p_in = 0;          // injected error
  double p_level1 = 0;      // level-1 output error
  double P_T = 0;           // distilled state error
  double acceptance = 0;    // P1acc(>=15) * P2acc
};

constexpr double kAcceptanceThreshold = 0.985;
constexpr std::uint64_t kMaxLevel1Copies = 10000;

class InfeasibleError : public Error {
 public:
  using Error::Error;
  InfeasibleError(const std::string& message, nlohmann::json best)
      : Error(message), best_(std::move(best)) {}
  /// Lowest-error configuration seen, when there was one.
  const nlohmann::json& best() const noexcept { return best_; }

 private:
  nlohmann::json best_;
};

/// Two-level 15:1 factory with the fewest level-1 copies meeting the acceptance threshold.
FactoryDesign design_factory(int d1, int d2, const DistillationUnitParams& unit, const HardwareParams& hw);

struct FactoryCount {
  std::uint64_t N = 0;
  std::uint64_t w = 0;
  std::uint64_t w_total = 0;
};

/// Factories per cycle and warm-up cycles for cumulative demand m = [m(1), ..., m(k_max)].
FactoryCount count_factories(std::span<const std::uint64_t> m, std::uint64_t w_add = 0);

struct StorageTrace {
  std::vector<std::uint64_t> reserve;  // R(k) for k = 0..k_max
  std::uint64_t n_storage = 0;
  double V_storage = 0;
  std::uint64_t k_stop = 0;
};

/// Reserve with constant production N after w_total warm-up cycles.
StorageTrace storage_trace(std::uint64_t N, std::uint64_t w_total, std::span<const std::uint64_t> m,
                           std::uint64_t tau_d);

struct MinStorageSchedule {
  std::vector<std::uint64_t> N;  // N(k) for k = 0..k_max-1
  std::uint64_t N_max = 0;
};

MinStorageSchedule min_storage_schedule(std::span<const std::uint64_t> m);

/// Reserve when production follows the min-storage schedule.
StorageTrace min_storage_trace(const MinStorageSchedule& schedule, std::span<const std::uint64_t> m,
                               std::uint64_t tau_d);

enum class Approach { Default, AddWarms, MinStorage };
enum class Objective { Space, Time, SpaceTime, ActiveVolume };

std::string_view approach_name(Approach a);
std::string_view objective_name(Objective o);
Approach parse_approach(std::string_view text);
Objective parse_objective(std::string_view text);

struct ResourceEstimate {
  Approach approach = Approach::Default;
  Objective objective = Objective::SpaceTime;
  FactoryDesign design;
  std::uint64_t w_add = 0;
  std::uint64_t N = 0;  // factories (N_max under min-storage)
  std::vector<std::uint64_t> N_schedule;  // min-storage only
  std::uint64_t w = 0;
  std::uint64_t w_total = 0;
  std::uint64_t k_max = 0;
  std::uint64_t k_stop = 0;
  std::vector<std::uint64_t> cumulative;  // m(1..k_max)
  std::vector<std::uint64_t> reserve;     // R(0..k_max)
  std::uint64_t n_storage = 0;
  std::uint64_t n_layout = 0;
  std::uint64_t n_total = 0;
  std::uint64_t tau_logical = 0;
  std::uint64_t tau_total = 0;
  double V_logical = 0;
  double V_dist = 0;
  double V_storage = 0;
  double V_total = 0;
  double eps_logical = 0;
  double eps_dist = 0;
  double eps_storage = 0;
  double eps = 0;

  double space_time() const { return static_cast<double>(n_total) * static_cast<double>(tau_total); }
  double space_time_proxy() const {
    const double d = design.d2;
    return space_time() * d * d * d;
  }
  double objective_value(Objective o) const;
};

/// Totals and error budget of one configuration.
ResourceEstimate evaluate(const ProgramStats& stats, const FactoryDesign& design, Approach approach,
                          std::uint64_t w_add, const HardwareParams& hw);

struct OptimizeOptions {
  Approach approach = Approach::Default;
  Objective objective = Objective::SpaceTime;
  int min_d1 = 3;
  int min_d2 = 3;
  int max_d2 = 51;
  std::uint64_t max_w = 200;
  double error_budget = 0.01;
  ParamType param_type = ParamType::Projected;
  DistillationUnitParams unit;
};

/// Exhaustive search; ties go to smaller d2, then d1, then w_add.
/// Throws InfeasibleError carrying the lowest-error configuration when nothing fits the budget.
ResourceEstimate optimize(const ProgramStats& stats, const OptimizeOptions& options);

nlohmann::json to_json(const FactoryDesign& design);
nlohmann::json to_json(const ResourceEstimate& estimate);
ResourceEstimate estimate_from_json(const nlohmann::json& j);

/// Plain-text table with d1, d2, N, w_total, n_total, tau_total, n*tau, V_total, n*tau*d2^3, eps.
std::string estimate_table(std::span<const ResourceEstimate> estimates);
/// k,m,R rows of the storage trace.
std::string trace_csv(const ResourceEstimate& estimate);

}  // namespace lsc
