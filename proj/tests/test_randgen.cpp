#include <doctest.h>

#include <cmath>
#include <vector>

#include "lsc/bench.hpp"
#include "lsc/error.hpp"
#include "lsc/randgen.hpp"

using namespace lsc;

namespace {

std::size_t asap_depth(const LogicalCircuit& c, std::size_t upto) {
  std::vector<std::size_t> level(c.num_qubits, 0);
  std::size_t d = 0;
  for (std::size_t i = 0; i < upto; ++i) {
    const Gate& g = c.gates[i];
    if (g.kind == GateKind::CNOT) {
      const std::size_t l = std::max(level[g.operands[0]], level[g.operands[1]]) + 1;
      level[g.operands[0]] = level[g.operands[1]] = l;
      d = std::max(d, l);
    } else {
      d = std::max(d, ++level[g.operands[0]]);
    }
  }
  return d;
}

}  // namespace

TEST_SUITE("randgen") {
  TEST_CASE("uniform helpers") {
    std::mt19937_64 rng(1);
    std::vector<int> hist(7, 0);
    for (int i = 0; i < 70000; ++i) ++hist[uniform_below(rng, 7)];
    for (int h : hist) CHECK(std::abs(h - 10000) < 500);
    for (int i = 0; i < 1000; ++i) {
      const double u = uniform_unit(rng);
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
    }
    CHECK_THROWS_AS(uniform_below(rng, 0), ConfigError);
    CHECK(mix_seed(1) != mix_seed(2));
    CHECK(mix_seed(0) == 0xe220a8397b1dcdafULL);
  }

  TEST_CASE("generated circuits reach the target depth exactly") {
    for (std::uint32_t q : {2u, 5u, 16u, 64u}) {
      for (std::size_t depth : {1u, 4u, 20u}) {
        for (double tf : {0.0, 0.3, 1.0}) {
          const auto c = random_circuit({q, depth, tf, 7 + q + depth});
          CHECK(c.num_qubits == q);
          REQUIRE(!c.gates.empty());
          CHECK(asap_depth(c, c.gates.size()) == depth);
          CHECK(asap_depth(c, c.gates.size() - 1) < depth);
          for (const Gate& g : c.gates) {
            CHECK((g.kind == GateKind::CNOT || g.kind == GateKind::T));
            if (g.kind == GateKind::CNOT) CHECK(g.operands[0] != g.operands[1]);
            if (tf == 0.0) CHECK(g.kind == GateKind::CNOT);
            if (tf == 1.0) CHECK(g.kind == GateKind::T);
          }
        }
      }
    }
  }

  TEST_CASE("T fraction is honoured on average") {
    const auto c = random_circuit({64, 200, 0.25, 3});
    double t = 0;
    for (const Gate& g : c.gates) t += g.kind == GateKind::T;
    CHECK(std::abs(t / static_cast<double>(c.gates.size()) - 0.25) < 0.03);
  }

  TEST_CASE("same seed, same circuit") {
    CHECK(random_circuit({10, 15, 0.2, 99}) == random_circuit({10, 15, 0.2, 99}));
    CHECK(!(random_circuit({10, 15, 0.2, 99}) == random_circuit({10, 15, 0.2, 100})));
  }

  TEST_CASE("invalid specs") {
    CHECK_THROWS_AS(random_circuit({1, 3, 0.0, 1}), ConfigError);
    CHECK_NOTHROW(random_circuit({1, 3, 1.0, 1}));
    CHECK_THROWS_AS(random_circuit({4, 3, 1.5, 1}), ConfigError);
  }
}

TEST_SUITE("bench") {
  TEST_CASE("layout variant names") {
    CHECK(parse_layout_variant("1-lane").options.num_lanes == 1);
    CHECK(!parse_layout_variant("1-lane").options.condensed);
    CHECK(parse_layout_variant("2-lane-condensed").options.num_lanes == 2);
    CHECK(parse_layout_variant("2-lane-condensed").options.condensed);
    CHECK(parse_layout_variant("3c").options.condensed);
    CHECK(parse_layout_variant("3c").name == "3-lane-condensed");
    CHECK(parse_layout_variant("2").name == "2-lane");
    CHECK_THROWS_AS(parse_layout_variant("0-lane"), ConfigError);
    CHECK_THROWS_AS(parse_layout_variant("wide"), ConfigError);
  }

  TEST_CASE("scaling sweep is deterministic and shares circuits across variants") {
    BenchConfig cfg;
    cfg.qubits = {4, 9};
    cfg.depths = {3, 6};
    cfg.samples = 2;
    cfg.variants = {parse_layout_variant("1"), parse_layout_variant("1c")};
    cfg.threads = 2;
    const auto a = run_scaling(cfg);
    cfg.threads = 1;
    const auto b = run_scaling(cfg);
    CHECK(a.size() == 16);
    CHECK(bench_csv(a, false) == bench_csv(b, false));
    for (const auto& r : a) {
      CHECK(r.status == "ok");
      CHECK(r.seed == sample_seed(cfg.seed, r.qubits, r.depth, r.sample));
      CHECK(r.active_volume <= r.total_volume);
    }
    const auto csv = bench_csv(a, false);
    CHECK(csv.rfind("qubits,depth,layout,sample,seed,gates,slices,total_volume,active_volume,status\n", 0) == 0);
    CHECK(bench_csv(a, true).find("compile_seconds") != std::string::npos);
  }

  TEST_CASE("log-log slope") {
    const std::vector<double> x{1, 2, 4, 8, 16};
    std::vector<double> y;
    for (double v : x) y.push_back(3 * std::pow(v, 0.7));
    CHECK(loglog_slope(x, y) == doctest::Approx(0.7));
  }
}
