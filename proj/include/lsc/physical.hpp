#pragma once

#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

#include "lsc/estimator.hpp"

namespace lsc {

struct HardwareProfile {
  std::string name;
  double t_round_s = 0;                  // seconds per error-correction round
  std::map<int, double> tile_area_m2;    // code distance -> area of one tile

  /// Trapped-ion scalars: 9.613e-3 s per round, 1.13e-3 m^2 per tile at d = 19.
  static HardwareProfile trapped_ion();
};

HardwareProfile hardware_from_json(const nlohmann::json& j);
HardwareProfile read_hardware_file(const std::filesystem::path& path);
nlohmann::json to_json(const HardwareProfile& hw);

struct PhysicalCost {
  int d2 = 0;
  double tau0_s = 0;   // seconds per logical slice
  double time_s = 0;
  double area_m2 = 0;
};

/// tau0 = d2 * t_round, t = tau_total * tau0, A = n_total * area(d2).
PhysicalCost to_physical(int d2, double tau_total, double n_total, const HardwareProfile& hw);
PhysicalCost to_physical(const ResourceEstimate& estimate, const HardwareProfile& hw);

nlohmann::json to_json(const PhysicalCost& cost);

}  // namespace lsc
