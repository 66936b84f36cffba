#include "lsc/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "lsc/bench.hpp"
#include "lsc/compiler.hpp"
#include "lsc/error.hpp"
#include "lsc/estimator.hpp"
#include "lsc/physical.hpp"
#include "lsc/qasm.hpp"

namespace lsc {
namespace {

struct CompileArgs {
  std::string input;
  std::string layout_kind = "edpc";
  std::string layout_file;
  int num_lanes = 1;
  bool condensed = false;
  std::string pipeline = "wave";
  int disttime = 1;
  bool nostagger = false;
  std::string printlli;
  std::string stats_json;
  std::string sliced_json;
  std::string output;
};

struct EstimateArgs {
  std::string profile;
  std::string approach = "default";
  std::string minimize_what = "space-time";
  double error_budget = 0.01;
  std::string param_type = "projected";
  int min_d1 = 3;
  int min_d2 = 3;
  int max_d2 = 51;
  std::uint64_t max_w = 200;
  std::string unit_config;
  std::string out;
  std::string trace_csv;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text) || !f.flush()) throw ConfigError("cannot write " + path);
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("bad JSON in " + path + ": " + e.what());
  }
}

void add_compile_options(CLI::App* cmd, CompileArgs& a) {
  cmd->add_option("input", a.input, "OpenQASM 2.0 input file")->required();
  auto* edpc = cmd->add_option("-L,--layout", a.layout_kind, "Generated layout family")
                   ->check(CLI::IsMember({"edpc"}));
  auto* file = cmd->add_option("--layout-file", a.layout_file, "ASCII layout file");
  edpc->excludes(file);
  file->excludes(edpc);
  cmd->add_option("--num-lanes", a.num_lanes, "Routing lanes between data tiles")->check(CLI::Range(1, 64));
  cmd->add_flag("--condensed", a.condensed, "Pack data tiles into 2x2 blocks");
  cmd->add_option("-P,--pipeline", a.pipeline, "Scheduling pipeline")->check(CLI::IsMember({"wave"}));
  cmd->add_option("--disttime", a.disttime, "Slices between magic-state outputs per 'M' tile")
      ->check(CLI::Range(1, 1000000));
  cmd->add_flag("--nostagger", a.nostagger, "Refresh all 'M' tiles on the same slices");
  cmd->add_option("--printlli", a.printlli, "Print the instruction listing")
      ->check(CLI::IsMember({"sliced", "unsliced"}));
  cmd->add_option("--stats-json", a.stats_json, "Write program statistics as JSON");
  cmd->add_option("--sliced-json", a.sliced_json, "Write the sliced program as JSON");
  cmd->add_option("--output", a.output, "Destination of --printlli (default stdout)");
}

void add_estimate_options(CLI::App* cmd, EstimateArgs& a, bool need_profile) {
  if (need_profile) cmd->add_option("--profile", a.profile, "Statistics JSON from compile")->required();
  cmd->add_option("--approach", a.approach, "Optimisation approach")
      ->check(CLI::IsMember({"default", "add-warms", "min-storage", "all"}));
  cmd->add_option("--minimize_what,--minimize-what", a.minimize_what, "Objective")
      ->check(CLI::IsMember({"space", "time", "space-time", "active_volume"}));
  cmd->add_option("--error_budget,--error-budget", a.error_budget, "Total error budget");
  cmd->add_option("--param_type,--param-type", a.param_type, "Hardware error parameters")
      ->check(CLI::IsMember({"current", "projected"}));
  cmd->add_option("--min_d1,--min-d1", a.min_d1, "Smallest level-1 distance");
  cmd->add_option("--min_d2,--min-d2", a.min_d2, "Smallest full distance");
  cmd->add_option("--max_d2,--max-d2", a.max_d2, "Largest full distance");
  cmd->add_option("--max_w,--max-w", a.max_w, "Largest number of added warm-up cycles");
  cmd->add_option("--unit-config", a.unit_config, "JSON with n2, tau2 of the 15:1 unit");
  cmd->add_option("--trace-csv", a.trace_csv, "Write the per-cycle reserve R(k)");
}

CompileResult run_compile(const CompileArgs& a, std::ostream& err) {
  const LogicalCircuit circuit = read_program_file(a.input);
  CompileOptions opts;
  opts.scheduler.disttime = a.disttime;
  opts.scheduler.stagger = !a.nostagger;
  opts.edpc = {a.num_lanes, a.condensed};
  if (!a.layout_file.empty()) {
    opts.layout = read_layout_file(a.layout_file);
  } else if (auto warning = edpc_warning(circuit.num_qubits, opts.edpc)) {
    err << "warning: " << *warning << "\n";
  }
  return compile_circuit(circuit, opts);
}

void write_compile_outputs(const CompileArgs& a, const CompileResult& r, std::ostream& out) {
  if (!a.printlli.empty()) {
    const std::string text = a.printlli == "sliced" ? emit_sliced_lli(r.program) : emit_unsliced(r.dag);
    if (a.output.empty()) out << text;
    else write_text(a.output, text);
  }
  if (!a.stats_json.empty()) write_text(a.stats_json, to_json(r.stats).dump(2) + "\n");
  if (!a.sliced_json.empty()) write_text(a.sliced_json, sliced_json(r.program).dump(2) + "\n");
}

std::vector<ResourceEstimate> run_estimate(const EstimateArgs& a, const ProgramStats& stats) {
  OptimizeOptions o;
  o.objective = parse_objective(a.minimize_what);
  o.error_budget = a.error_budget;
  o.param_type = parse_param_type(a.param_type);
  o.min_d1 = a.min_d1;
  o.min_d2 = a.min_d2;
  o.max_d2 = a.max_d2;
  o.max_w = a.max_w;
  if (!a.unit_config.empty()) o.unit = read_unit_config(a.unit_config);
  std::vector<Approach> approaches;
  if (a.approach == "all") approaches = {Approach::Default, Approach::AddWarms, Approach::MinStorage};
  else approaches = {parse_approach(a.approach)};
  std::vector<ResourceEstimate> out;
  for (Approach ap : approaches) {
    o.approach = ap;
    out.push_back(optimize(stats, o));
  }
  return out;
}

nlohmann::json estimates_json(const std::vector<ResourceEstimate>& estimates) {
  if (estimates.size() == 1) return to_json(estimates.front());
  nlohmann::json all = nlohmann::json::array();
  for (const auto& e : estimates) all.push_back(to_json(e));
  return {{"estimates", all}};
}

void write_traces(const EstimateArgs& a, const std::vector<ResourceEstimate>& estimates) {
  if (a.trace_csv.empty()) return;
  if (estimates.size() == 1) {
    write_text(a.trace_csv, trace_csv(estimates.front()));
    return;
  }
  std::string text = "approach,";
  bool first = true;
  for (const auto& e : estimates) {
    std::istringstream rows(trace_csv(e));
    std::string line;
    std::getline(rows, line);
    if (first) text += line + "\n";
    first = false;
    while (std::getline(rows, line)) text += std::string(approach_name(e.approach)) + "," + line + "\n";
  }
  write_text(a.trace_csv, text);
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<T>(v));
    } catch (const std::logic_error&) {
      throw ConfigError(std::string("bad ") + what + " list entry '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError(std::string("empty ") + what + " list");
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattice-surgery compiler and magic-state resource estimator", "lsc"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Seed for every random choice");

  CompileArgs compile_args;
  auto* compile = app.add_subcommand("compile", "Compile a QASM circuit to sliced instructions");
  add_compile_options(compile, compile_args);

  EstimateArgs estimate_args;
  auto* estimate = app.add_subcommand("estimate", "Optimise distillation resources for a compiled profile");
  add_estimate_options(estimate, estimate_args, true);
  estimate->add_option("--out", estimate_args.out, "Write the estimate JSON here");

  std::string estimate_file;
  std::string hardware_file;
  std::string physical_out;
  auto* physical = app.add_subcommand("physical", "Convert an estimate to seconds and square metres");
  physical->add_option("--estimate", estimate_file, "Estimate JSON")->required();
  physical->add_option("--hardware", hardware_file, "Hardware JSON (default: trapped_ion)");
  physical->add_option("--out", physical_out, "Write the result JSON here");

  std::string bench_qubits = "16,64";
  std::string bench_depths = "10";
  std::string bench_variants = "1-lane";
  double bench_t_fraction = 0.0;
  std::size_t bench_samples = 10;
  unsigned bench_threads = 0;
  bool bench_no_timing = false;
  int bench_disttime = 1;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "Compile random circuits over a grid and emit CSV");
  bench->add_option("--qubits", bench_qubits, "Comma-separated qubit counts");
  bench->add_option("--depth", bench_depths, "Comma-separated depth cut-offs");
  bench->add_option("--t-fraction", bench_t_fraction, "Probability of drawing T instead of CNOT")
      ->check(CLI::Range(0.0, 1.0));
  bench->add_option("--samples", bench_samples, "Circuits per grid point");
  bench->add_option("--layout-variants", bench_variants, "Comma-separated variants, e.g. 1-lane,2-lane,1c");
  bench->add_option("--threads", bench_threads, "Worker threads (0: all cores)");
  bench->add_option("--disttime", bench_disttime, "Slices between magic-state outputs")->check(CLI::Range(1, 1000000));
  bench->add_flag("--no-timing", bench_no_timing, "Leave out the compile_seconds column");
  bench->add_option("--out", bench_out, "CSV destination (default stdout)");

  CompileArgs pipe_compile;
  EstimateArgs pipe_estimate;
  std::string pipe_hardware;
  std::string pipe_out;
  auto* pipeline = app.add_subcommand("pipeline", "Compile, estimate and convert in one run");
  add_compile_options(pipeline, pipe_compile);
  add_estimate_options(pipeline, pipe_estimate, false);
  pipeline->add_option("--hardware", pipe_hardware, "Hardware JSON; adds the physical conversion");
  pipeline->add_option("--out", pipe_out, "Write the report JSON here (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compile->parsed()) {
      const CompileResult r = run_compile(compile_args, err);
      write_compile_outputs(compile_args, r, out);
      if (compile_args.printlli.empty() && compile_args.stats_json.empty() && compile_args.sliced_json.empty()) {
        out << to_json(r.stats).dump(2) << "\n";
      }
    } else if (estimate->parsed()) {
      const ProgramStats stats = read_stats_file(estimate_args.profile);
      const auto estimates = run_estimate(estimate_args, stats);
      const std::string json = estimates_json(estimates).dump(2) + "\n";
      if (estimate_args.out.empty()) {
        out << json;
        err << estimate_table(estimates);
      } else {
        write_text(estimate_args.out, json);
        out << estimate_table(estimates);
      }
      write_traces(estimate_args, estimates);
    } else if (physical->parsed()) {
      const ResourceEstimate e = estimate_from_json(read_json_file(estimate_file));
      const HardwareProfile hw =
          hardware_file.empty() ? HardwareProfile::trapped_ion() : read_hardware_file(hardware_file);
      const nlohmann::json j{{"hardware", to_json(hw)}, {"physical", to_json(to_physical(e, hw))}};
      if (physical_out.empty()) out << j.dump(2) << "\n";
      else write_text(physical_out, j.dump(2) + "\n");
    } else if (bench->parsed()) {
      BenchConfig config;
      config.qubits = parse_list<std::uint32_t>(bench_qubits, "qubit");
      config.depths = parse_list<std::size_t>(bench_depths, "depth");
      config.t_fraction = bench_t_fraction;
      config.samples = bench_samples;
      config.threads = bench_threads;
      config.seed = seed;
      config.scheduler.disttime = bench_disttime;
      config.variants.clear();
      std::istringstream in(bench_variants);
      std::string item;
      while (std::getline(in, item, ',')) {
        if (!item.empty()) config.variants.push_back(parse_layout_variant(item));
      }
      if (config.variants.empty()) throw ConfigError("no layout variants given");
      const auto rows = run_scaling(config);
      const std::string csv = bench_csv(rows, !bench_no_timing);
      if (bench_out.empty()) out << csv;
      else write_text(bench_out, csv);
    } else if (pipeline->parsed()) {
      const CompileResult r = run_compile(pipe_compile, err);
      write_compile_outputs(pipe_compile, r, out);
      const auto estimates = run_estimate(pipe_estimate, r.stats);
      write_traces(pipe_estimate, estimates);
      nlohmann::json report{{"stats", to_json(r.stats)}};
      if (estimates.size() == 1) report["estimate"] = to_json(estimates.front());
      else report["estimates"] = estimates_json(estimates)["estimates"];
      if (!pipe_hardware.empty()) {
        const HardwareProfile hw = read_hardware_file(pipe_hardware);
        nlohmann::json phys = nlohmann::json::array();
        for (const auto& e : estimates) phys.push_back(to_json(to_physical(e, hw)));
        report["hardware"] = to_json(hw);
        report["physical"] = estimates.size() == 1 ? phys.front() : phys;
      }
      const std::string json = report.dump(2) + "\n";
      if (pipe_out.empty()) out << json;
      else write_text(pipe_out, json);
      err << estimate_table(estimates);
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DeadlockError& e) {
    err << "deadlock: " << e.what() << "\n";
    return kExitDeadlock;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    if (!e.best().is_null()) err << e.best().dump(2) << "\n";
    return kExitInfeasible;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

int run_cli(int argc, const char* const* argv) { return run_cli(argc, argv, std::cout, std::cerr); }

}  // namespace lsc
