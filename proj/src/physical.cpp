#include "lsc/physical.hpp"

#include <fstream>

#include "lsc/error.hpp"

namespace lsc {

HardwareProfile HardwareProfile::trapped_ion() {
  return HardwareProfile{"trapped_ion", 9.613e-3, {{19, 1.13e-3}}};
}

HardwareProfile hardware_from_json(const nlohmann::json& j) {
  HardwareProfile hw;
  try {
    hw.name = j.value("name", std::string("custom"));
    hw.t_round_s = j.at("t_round_s").get<double>();
    for (const auto& [key, value] : j.at("tile_area_m2").items()) {
      std::size_t used = 0;
      const int d = std::stoi(key, &used);
      if (used != key.size()) throw ConfigError("tile_area_m2 key '" + key + "' is not a distance");
      hw.tile_area_m2[d] = value.get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad hardware JSON: ") + e.what());
  } catch (const std::logic_error&) {
    throw ConfigError("bad hardware JSON: tile_area_m2 keys must be code distances");
  }
  if (!(hw.t_round_s > 0)) throw ConfigError("t_round_s must be positive");
  return hw;
}

HardwareProfile read_hardware_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return hardware_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("bad hardware JSON in " + path.string() + ": " + e.what());
  }
}

nlohmann::json to_json(const HardwareProfile& hw) {
  nlohmann::json areas = nlohmann::json::object();
  for (const auto& [d, a] : hw.tile_area_m2) areas[std::to_string(d)] = a;
  return {{"name", hw.name}, {"t_round_s", hw.t_round_s}, {"tile_area_m2", areas}};
}

PhysicalCost to_physical(int d2, double tau_total, double n_total, const HardwareProfile& hw) {
  auto it = hw.tile_area_m2.find(d2);
  if (it == hw.tile_area_m2.end()) {
    throw ConfigError("hardware profile '" + hw.name + "' has no tile area for d = " + std::to_string(d2));
  }
  PhysicalCost c;
  c.d2 = d2;
  c.tau0_s = d2 * hw.t_round_s;
  c.time_s = tau_total * c.tau0_s;
  c.area_m2 = n_total * it->second;
  return c;
}

PhysicalCost to_physical(const ResourceEstimate& e, const HardwareProfile& hw) {
  return to_physical(e.design.d2, static_cast<double>(e.tau_total), static_cast<double>(e.n_total), hw);
}

nlohmann::json to_json(const PhysicalCost& c) {
  return {{"d2", c.d2}, {"tau0_s", c.tau0_s}, {"time_s", c.time_s}, {"area_m2", c.area_m2}};
}

}  // namespace lsc
