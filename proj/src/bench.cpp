#include "lsc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>
#include <tuple>

#include "lsc/compiler.hpp"
#include "lsc/error.hpp"
#include "lsc/randgen.hpp"

namespace lsc {

LayoutVariant parse_layout_variant(std::string_view text) {
  std::string_view rest = text;
  std::size_t digits = 0;
  while (digits < rest.size() && rest[digits] >= '0' && rest[digits] <= '9') ++digits;
  if (digits == 0 || digits > 4) throw ConfigError("bad layout variant '" + std::string(text) + "'");
  const int lanes = std::stoi(std::string(rest.substr(0, digits)));
  rest.remove_prefix(digits);
  bool condensed = false;
  if (rest == "c" || rest == "-lane-condensed") {
    condensed = true;
  } else if (!rest.empty() && rest != "-lane") {
    throw ConfigError("bad layout variant '" + std::string(text) + "'");
  }
  if (lanes < 1) throw ConfigError("layout variant needs at least one lane");
  return {std::to_string(lanes) + "-lane" + (condensed ? "-condensed" : ""), {lanes, condensed}};
}

std::uint64_t sample_seed(std::uint64_t base, std::uint32_t qubits, std::size_t depth, std::size_t sample) {
  std::uint64_t s = mix_seed(base);
  s = mix_seed(s ^ qubits);
  s = mix_seed(s ^ static_cast<std::uint64_t>(depth));
  return mix_seed(s ^ static_cast<std::uint64_t>(sample));
}

std::vector<BenchRow> run_scaling(const BenchConfig& config) {
  std::vector<BenchRow> jobs;
  for (std::uint32_t q : config.qubits) {
    for (std::size_t d : config.depths) {
      for (const LayoutVariant& v : config.variants) {
        for (std::size_t s = 0; s < config.samples; ++s) {
          BenchRow row;
          row.qubits = q;
          row.depth = d;
          row.layout = v.name;
          row.sample = s;
          row.seed = sample_seed(config.seed, q, d, s);
          jobs.push_back(std::move(row));
        }
      }
    }
  }
  auto options_of = [&](const std::string& name) {
    for (const LayoutVariant& v : config.variants) {
      if (v.name == name) return v.options;
    }
    return EdpcOptions{};
  };

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      BenchRow& row = jobs[i];
      try {
        const LogicalCircuit c = random_circuit({row.qubits, row.depth, config.t_fraction, row.seed});
        row.gates = c.gates.size();
        CompileOptions opts;
        opts.scheduler = config.scheduler;
        opts.edpc = options_of(row.layout);
        const auto start = std::chrono::steady_clock::now();
        const CompileResult r = compile_circuit(c, opts);
        row.compile_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        row.slices = r.program.num_slices;
        row.total_volume = r.stats.total_volume;
        row.active_volume = r.stats.active_volume;
      } catch (const DeadlockError&) {
        row.status = "deadlock";
      } catch (const std::exception&) {
        row.status = "error";
      }
    }
  };
  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::sort(jobs.begin(), jobs.end(), [](const BenchRow& a, const BenchRow& b) {
    return std::tie(a.qubits, a.depth, a.layout, a.sample) < std::tie(b.qubits, b.depth, b.layout, b.sample);
  });
  return jobs;
}

std::string bench_csv(std::span<const BenchRow> rows, bool include_timing) {
  std::string out = "qubits,depth,layout,sample,seed,gates,slices,";
  if (include_timing) out += "compile_seconds,";
  out += "total_volume,active_volume,status\n";
  char buf[64];
  for (const BenchRow& r : rows) {
    out += std::to_string(r.qubits) + "," + std::to_string(r.depth) + "," + r.layout + "," +
           std::to_string(r.sample) + "," + std::to_string(r.seed) + "," + std::to_string(r.gates) + "," +
           std::to_string(r.slices) + ",";
    if (include_timing) {
      std::snprintf(buf, sizeof buf, "%.6f,", r.compile_seconds);
      out += buf;
    }
    out += std::to_string(r.total_volume) + "," + std::to_string(r.active_volume) + "," + r.status + "\n";
  }
  return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ConfigError("slope fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0) throw ConfigError("slope fit needs distinct x values");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace lsc
