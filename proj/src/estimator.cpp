#include "lsc/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <utility>

#include "lsc/layout.hpp"

namespace lsc {
namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return a == 0 ? 0 : (a - 1) / b + 1; }

// a * b saturated at the uint64 maximum.
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// Acceptance probability and output error of one 15:1 unit at distance d.
std::pair<double, double> run_unit(const DistillationUnitParams& unit, double p_in, int d, double p) {
  const double unit_failure = unit.n2 * unit.tau2 * patch_error_rate(d, p);
  const double accept = std::pow(1.0 - p_in, unit.inputs) * (1.0 - clamp01(unit_failure));
  const double out = unit.output_coefficient * p_in * p_in * p_in + unit_failure;
  return {accept, out};
}

}  // namespace

DistillationUnitParams unit_params_from_json(const nlohmann::json& j) {
  DistillationUnitParams u;
  try {
    u.n2 = j.value("n2", u.n2);
    u.tau2 = j.value("tau2", u.tau2);
    u.inputs = j.value("inputs", u.inputs);
    u.output_coefficient = j.value("output_coefficient", u.output_coefficient);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad unit config: ") + e.what());
  }
  if (!(u.n2 >= 1.0) || !(u.tau2 >= 1.0)) throw ConfigError("unit config needs n2 >= 1 and tau2 >= 1");
  if (u.inputs < 1) throw ConfigError("unit config needs inputs >= 1");
  return u;
}

DistillationUnitParams read_unit_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return unit_params_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("bad unit config " + path.string() + ": " + e.what());
  }
}

ParamType parse_param_type(std::string_view text) {
  if (text == "current") return ParamType::Current;
  if (text == "projected") return ParamType::Projected;
  throw ConfigError("unknown param_type '" + std::string(text) + "'");
}

double patch_error_rate(int d, double p) {
  if (p >= 0.01) throw ConfigError("physical error rate at or above the 1% threshold");
  return 0.1 * d * std::pow(p / 0.01, (d + 1) / 2.0);
}

double injected_error(const HardwareParams& hw) { return 0.6 * hw.p2 + hw.pI + (2.0 / 3.0) * hw.p1; }

double binomial_tail(std::uint64_t n, double p, std::uint64_t k) {
  if (k == 0) return 1.0;
  if (n < k) return 0.0;
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double ln = std::lgamma(static_cast<double>(n) + 1.0);
  double below = 0.0;
  for (std::uint64_t j = 0; j < k; ++j) {
    const double dj = static_cast<double>(j);
    const double dn = static_cast<double>(n);
    below += std::exp(ln - std::lgamma(dj + 1.0) - std::lgamma(dn - dj + 1.0) + dj * lp + (dn - dj) * lq);
  }
  return clamp01(1.0 - below);
}

FactoryDesign design_factory(int d1, int d2, const DistillationUnitParams& unit, const HardwareParams& hw) {
  if (d1 < 3 || d2 < d1 || d1 % 2 == 0 || d2 % 2 == 0) {
    throw ConfigError("factory distances must be odd with 3 <= d1 <= d2");
  }
  FactoryDesign f;
  f.d1 = d1;
  f.d2 = d2;
  f.n2 = unit.n2;
  f.tau2 = unit.tau2;
  f.n1 = (2.0 * d1 * d1 - 1.0) / (2.0 * d2 * d2 - 1.0) * unit.n2;
  f.tau1 = static_cast<double>(d1) / d2 * unit.tau2;
  f.tau_D = static_cast<std::uint64_t>(std::ceil(f.tau1 + f.tau2 - 1e-9));
  f.p_in = injected_error(hw);

  const auto [accept1, out1] = run_unit(unit, f.p_in, d1, hw.p2);
  const auto [accept2, out2] = run_unit(unit, out1, d2, hw.p2);
  f.p_level1 = out1;
  f.P_T = out2;
  const auto need = static_cast<std::uint64_t>(unit.inputs);
  if (accept2 < kAcceptanceThreshold) {
    throw InfeasibleError("level-2 acceptance " + std::to_string(accept2) + " below threshold at d1=" +
                          std::to_string(d1) + ", d2=" + std::to_string(d2));
  }
  for (std::uint64_t c = need; c <= kMaxLevel1Copies; ++c) {
    const double acc = binomial_tail(c, accept1, need) * accept2;
    if (acc >= kAcceptanceThreshold) {
      f.C1 = c;
      f.acceptance = acc;
      f.n_D = static_cast<std::uint64_t>(std::ceil(std::max(static_cast<double>(c) * f.n1, f.n2) - 1e-9));
      f.V_D = static_cast<double>(c) * f.n1 * f.tau1 + f.n2 * f.tau2;
      return f;
    }
  }
  throw InfeasibleError("no level-1 copy count up to " + std::to_string(kMaxLevel1Copies) +
                        " reaches the acceptance threshold at d1=" + std::to_string(d1) +
                        ", d2=" + std::to_string(d2));
}

FactoryCount count_factories(std::span<const std::uint64_t> m, std::uint64_t w_add) {
  FactoryCount c;
  if (m.empty() || m.back() == 0) return c;
  const std::uint64_t m1 = m[0];
  if (m.size() == 1) {
    c.N = m1;
  } else {
    for (std::size_t i = 1; i < m.size(); ++i) {
      const std::uint64_t k = i + 1;
      c.N = std::max(c.N, ceil_div(m[i] - m1, k - 1 + w_add));
    }
  }
  if (c.N == 0) c.N = 1;
  c.w = ceil_div(m1, c.N);
  c.w_total = c.w + w_add;
  return c;
}

StorageTrace storage_trace(std::uint64_t N, std::uint64_t w_total, std::span<const std::uint64_t> m,
                           std::uint64_t tau_d) {
  StorageTrace s;
  const std::size_t kmax = m.size();
  const std::uint64_t total = kmax ? m.back() : 0;
  s.reserve.resize(kmax + 1);
  for (std::size_t k = 0; k <= kmax; ++k) {
    const std::uint64_t consumed = k ? m[k - 1] : 0;
    const std::uint64_t produced = std::min(sat_mul(N, w_total + k), total);
    s.reserve[k] = produced > consumed ? produced - consumed : 0;
    s.n_storage = std::max(s.n_storage, s.reserve[k]);
  }
  if (total > 0 && N > 0) {
    const std::uint64_t cycles = ceil_div(total, N);
    s.k_stop = cycles > w_total ? cycles - w_total : 0;
  }
  double sum = 0;
  for (std::size_t k = 1; k < kmax; ++k) sum += static_cast<double>(s.reserve[k]);
  for (std::uint64_t j = 1; j <= w_total; ++j) sum += static_cast<double>(std::min(sat_mul(j, N), total));
  s.V_storage = sum * static_cast<double>(tau_d);
  return s;
}

MinStorageSchedule min_storage_schedule(std::span<const std::uint64_t> m) {
  MinStorageSchedule s;
  s.N.resize(m.size());
  std::uint64_t prev = 0;
  for (std::size_t k = 0; k < m.size(); ++k) {
    s.N[k] = m[k] - prev;
    prev = m[k];
    s.N_max = std::max(s.N_max, s.N[k]);
  }
  return s;
}

StorageTrace min_storage_trace(const MinStorageSchedule& schedule, std::span<const std::uint64_t> m,
                               std::uint64_t tau_d) {
  StorageTrace s;
  const std::size_t kmax = m.size();
  s.reserve.assign(kmax + 1, 0);
  for (std::size_t k = 0; k < kmax; ++k) s.reserve[k] = schedule.N[k];
  s.n_storage = schedule.N_max;
  s.k_stop = kmax ? kmax - 1 : 0;
  double sum = 0;
  for (std::size_t k = 1; k < kmax; ++k) sum += static_cast<double>(schedule.N[k]);
  if (kmax && m.back() > 0) sum += static_cast<double>(schedule.N[0]);
  s.V_storage = sum * static_cast<double>(tau_d);
  return s;
}

std::string_view approach_name(Approach a) {
  switch (a) {
    case Approach::Default: return "default";
    case Approach::AddWarms: return "add-warms";
    case Approach::MinStorage: return "min-storage";
  }
  return "?";
}

std::string_view objective_name(Objective o) {
  switch (o) {
    case Objective::Space: return "space";
    case Objective::Time: return "time";
    case Objective::SpaceTime: return "space-time";
    case Objective::ActiveVolume: return "active_volume";
  }
  return "?";
}

Approach parse_approach(std::string_view text) {
  for (Approach a : {Approach::Default, Approach::AddWarms, Approach::MinStorage}) {
    if (approach_name(a) == text) return a;
  }
  throw ConfigError("unknown approach '" + std::string(text) + "'");
}

Objective parse_objective(std::string_view text) {
  for (Objective o : {Objective::Space, Objective::Time, Objective::SpaceTime, Objective::ActiveVolume}) {
    if (objective_name(o) == text) return o;
  }
  throw ConfigError("unknown minimize_what '" + std::string(text) + "'");
}

double ResourceEstimate::objective_value(Objective o) const {
  switch (o) {
    case Objective::Space: return static_cast<double>(n_total);
    case Objective::Time: return static_cast<double>(tau_total);
    case Objective::SpaceTime: return space_time_proxy();
    case Objective::ActiveVolume: return V_total;
  }
  return 0;
}

ResourceEstimate evaluate(const ProgramStats& stats, const FactoryDesign& design, Approach approach,
                          std::uint64_t w_add, const HardwareParams& hw) {
  ResourceEstimate e;
  e.approach = approach;
  e.design = design;
  e.cumulative = cumulative_profile(stats.m_profile, design.tau_D);
  e.k_max = e.cumulative.size();
  const std::uint64_t demand = e.cumulative.empty() ? 0 : e.cumulative.back();

  StorageTrace trace;
  if (approach == Approach::MinStorage) {
    const MinStorageSchedule schedule = min_storage_schedule(e.cumulative);
    trace = min_storage_trace(schedule, e.cumulative, design.tau_D);
    e.N = schedule.N_max;
    e.N_schedule = schedule.N;
    e.w = demand > 0 ? 1 : 0;
    e.w_total = e.w;
    double factory_cycles = 0;
    for (std::uint64_t n : schedule.N) factory_cycles += static_cast<double>(n);
    e.V_dist = factory_cycles * design.V_D;
  } else {
    e.w_add = approach == Approach::Default ? 0 : w_add;
    const FactoryCount count = count_factories(e.cumulative, e.w_add);
    e.N = count.N;
    e.w = count.w;
    e.w_total = demand > 0 ? count.w_total : 0;
    trace = storage_trace(e.N, e.w_total, e.cumulative, design.tau_D);
    e.V_dist = static_cast<double>(e.N) * design.V_D * static_cast<double>(e.w_total + trace.k_stop);
  }
  e.k_stop = trace.k_stop;
  e.reserve = std::move(trace.reserve);
  e.n_storage = trace.n_storage;
  e.V_storage = trace.V_storage;

  e.n_layout = edpc_default_tile_count(stats.num_qubits);
  e.n_total = e.N * design.n_D + e.n_storage + e.n_layout;
  e.tau_logical = stats.tau_logical;
  e.tau_total = e.w_total * design.tau_D + e.tau_logical;
  e.V_logical = static_cast<double>(stats.active_volume);
  e.V_total = e.V_logical + e.V_dist + e.V_storage;

  const double P = patch_error_rate(design.d2, hw.p2);
  e.eps_logical = e.V_logical * P;
  e.eps_storage = e.V_storage * P;
  e.eps_dist = static_cast<double>(demand) * design.P_T;
  e.eps = e.eps_logical + e.eps_dist + e.eps_storage;
  return e;
}

ResourceEstimate optimize(const ProgramStats& stats, const OptimizeOptions& o) {
  if (!(o.error_budget > 0.0 && o.error_budget < 1.0)) throw ConfigError("error_budget must lie in (0, 1)");
  const int lo1 = std::max(3, o.min_d1 | 1);
  const int lo2 = std::max(lo1, o.min_d2 | 1);
  if (lo2 > o.max_d2) throw ConfigError("empty code-distance range");
  const HardwareParams hw = HardwareParams::of(o.param_type);

  std::optional<ResourceEstimate> best;
  std::optional<ResourceEstimate> lowest_error;
  auto consider = [&](ResourceEstimate e) {
    e.objective = o.objective;
    if (!lowest_error || e.eps < lowest_error->eps) lowest_error = e;
    if (e.eps > o.error_budget) return;
    if (!best || e.objective_value(o.objective) < best->objective_value(o.objective)) best = std::move(e);
  };

  std::map<std::pair<int, int>, std::optional<FactoryDesign>> designs;
  for (int d2 = lo2; d2 <= o.max_d2; d2 += 2) {
    for (int d1 = lo1; d1 <= d2; d1 += 2) {
      auto& slot = designs[{d1, d2}];
      try {
        slot = design_factory(d1, d2, o.unit, hw);
      } catch (const InfeasibleError&) {
        continue;
      }
      const FactoryDesign& design = *slot;
      if (o.approach != Approach::AddWarms) {
        consider(evaluate(stats, design, o.approach, 0, hw));
        continue;
      }
      // N only falls as w_add grows and, for a fixed N, extra warm-ups only add
      // cost, so the first w_add reaching each N value is the only candidate.
      const auto m = cumulative_profile(stats.m_profile, design.tau_D);
      std::uint64_t w = 0;
      while (true) {
        consider(evaluate(stats, design, Approach::AddWarms, w, hw));
        const std::uint64_t n = count_factories(m, w).N;
        if (w >= o.max_w || count_factories(m, o.max_w).N >= n) break;
        std::uint64_t a = w + 1;
        std::uint64_t b = o.max_w;
        while (a < b) {
          const std::uint64_t mid = a + (b - a) / 2;
          if (count_factories(m, mid).N < n) b = mid;
          else a = mid + 1;
        }
        w = a;
      }
    }
  }
  if (!best) {
    nlohmann::json detail = lowest_error ? to_json(*lowest_error) : nlohmann::json();
    std::string message = "no configuration meets error budget " + std::to_string(o.error_budget);
    if (lowest_error) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "; lowest error %.3e at d1=%d, d2=%d", lowest_error->eps,
                    lowest_error->design.d1, lowest_error->design.d2);
      message += buf;
    }
    throw InfeasibleError(message, std::move(detail));
  }
  return *best;
}

nlohmann::json to_json(const FactoryDesign& f) {
  return {{"d1", f.d1},     {"d2", f.d2},     {"C1", f.C1},         {"n1", f.n1},
          {"n2", f.n2},     {"tau1", f.tau1}, {"tau2", f.tau2},     {"tau_D", f.tau_D},
          {"n_D", f.n_D},   {"V_D", f.V_D},   {"p_in", f.p_in},     {"p_level1", f.p_level1},
          {"P_T", f.P_T},   {"acceptance", f.acceptance}};
}

nlohmann::json to_json(const ResourceEstimate& e) {
  nlohmann::json j{{"approach", approach_name(e.approach)},
                   {"minimize_what", objective_name(e.objective)},
                   {"d1", e.design.d1},
                   {"d2", e.design.d2},
                   {"factory", to_json(e.design)},
                   {"N", e.N},
                   {"w", e.w},
                   {"w_add", e.w_add},
                   {"w_total", e.w_total},
                   {"k_max", e.k_max},
                   {"k_stop", e.k_stop},
                   {"n_storage", e.n_storage},
                   {"n_layout", e.n_layout},
                   {"n_total", e.n_total},
                   {"tau_logical", e.tau_logical},
                   {"tau_total", e.tau_total},
                   {"n_total_x_tau_total", e.space_time()},
                   {"space_time_proxy", e.space_time_proxy()},
                   {"V_logical", e.V_logical},
                   {"V_dist", e.V_dist},
                   {"V_storage", e.V_storage},
                   {"V_total", e.V_total},
                   {"eps_logical", e.eps_logical},
                   {"eps_dist", e.eps_dist},
                   {"eps_storage", e.eps_storage},
                   {"eps", e.eps},
                   {"cumulative", e.cumulative},
                   {"reserve", e.reserve}};
  if (e.approach == Approach::MinStorage) j["N_schedule"] = e.N_schedule;
  return j;
}

ResourceEstimate estimate_from_json(const nlohmann::json& j) {
  try {
    ResourceEstimate e;
    e.approach = parse_approach(j.value("approach", std::string("default")));
    e.objective = parse_objective(j.value("minimize_what", std::string("space-time")));
    e.design.d1 = j.value("d1", 0);
    e.design.d2 = j.at("d2").get<int>();
    if (j.contains("factory")) {
      const auto& f = j["factory"];
      e.design.C1 = f.value("C1", std::uint64_t{0});
      e.design.n1 = f.value("n1", 0.0);
      e.design.n2 = f.value("n2", 0.0);
      e.design.tau1 = f.value("tau1", 0.0);
      e.design.tau2 = f.value("tau2", 0.0);
      e.design.tau_D = f.value("tau_D", std::uint64_t{0});
      e.design.n_D = f.value("n_D", std::uint64_t{0});
      e.design.V_D = f.value("V_D", 0.0);
      e.design.p_in = f.value("p_in", 0.0);
      e.design.p_level1 = f.value("p_level1", 0.0);
      e.design.P_T = f.value("P_T", 0.0);
      e.design.acceptance = f.value("acceptance", 0.0);
    }
    e.N = j.value("N", std::uint64_t{0});
    e.w = j.value("w", std::uint64_t{0});
    e.w_add = j.value("w_add", std::uint64_t{0});
    e.w_total = j.value("w_total", std::uint64_t{0});
    e.k_max = j.value("k_max", std::uint64_t{0});
    e.k_stop = j.value("k_stop", std::uint64_t{0});
    e.n_storage = j.value("n_storage", std::uint64_t{0});
    e.n_layout = j.value("n_layout", std::uint64_t{0});
    e.n_total = j.at("n_total").get<std::uint64_t>();
    e.tau_logical = j.value("tau_logical", std::uint64_t{0});
    e.tau_total = j.at("tau_total").get<std::uint64_t>();
    e.V_logical = j.value("V_logical", 0.0);
    e.V_dist = j.value("V_dist", 0.0);
    e.V_storage = j.value("V_storage", 0.0);
    e.V_total = j.value("V_total", 0.0);
    e.eps_logical = j.value("eps_logical", 0.0);
    e.eps_dist = j.value("eps_dist", 0.0);
    e.eps_storage = j.value("eps_storage", 0.0);
    e.eps = j.value("eps", 0.0);
    if (j.contains("cumulative")) e.cumulative = j["cumulative"].get<std::vector<std::uint64_t>>();
    if (j.contains("reserve")) e.reserve = j["reserve"].get<std::vector<std::uint64_t>>();
    if (j.contains("N_schedule")) e.N_schedule = j["N_schedule"].get<std::vector<std::uint64_t>>();
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("bad estimate JSON: ") + ex.what());
  }
}

std::string estimate_table(std::span<const ResourceEstimate> estimates) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-12s %4s %4s %8s %8s %10s %10s %10s %10s %14s %10s\n", "approach", "d1",
                "d2", "N", "w_total", "n_total", "tau_total", "n*tau", "V_total", "n*tau*d2^3", "eps_total");
  out += buf;
  for (const ResourceEstimate& e : estimates) {
    std::snprintf(buf, sizeof buf, "%-12s %4d %4d %8llu %8llu %10.2e %10.2e %10.2e %10.2e %14.2e %10.2e\n",
                  std::string(approach_name(e.approach)).c_str(), e.design.d1, e.design.d2,
                  static_cast<unsigned long long>(e.N), static_cast<unsigned long long>(e.w_total),
                  static_cast<double>(e.n_total), static_cast<double>(e.tau_total), e.space_time(), e.V_total,
                  e.space_time_proxy(), e.eps);
    out += buf;
  }
  return out;
}

std::string trace_csv(const ResourceEstimate& e) {
  std::string out = "k,m,R\n";
  for (std::size_t k = 0; k < e.reserve.size(); ++k) {
    const std::uint64_t m = k && k <= e.cumulative.size() ? e.cumulative[k - 1] : 0;
    out += std::to_string(k) + "," + std::to_string(m) + "," + std::to_string(e.reserve[k]) + "\n";
  }
  return out;
}

}  // namespace lsc
