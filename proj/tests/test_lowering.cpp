#include <doctest.h>

#include <random>
#include <set>

#include "lsc/lli.hpp"
#include "oracles.hpp"

using namespace lsc;

namespace {

std::vector<LliKind> kinds_of(const std::vector<Lli>& v) {
  std::vector<LliKind> out;
  for (const Lli& l : v) out.push_back(l.kind);
  return out;
}

// reach[i] holds every node reachable from i.
std::vector<std::set<std::size_t>> closure(const LliDag& dag) {
  std::vector<std::set<std::size_t>> reach(dag.size());
  for (std::size_t i = dag.size(); i-- > 0;) {
    for (std::size_t s : dag.succs[i]) {
      reach[i].insert(s);
      reach[i].insert(reach[s].begin(), reach[s].end());
    }
  }
  return reach;
}

}  // namespace

TEST_SUITE("lowering") {
  TEST_CASE("per-gate lowering") {
    PatchIdAllocator alloc(4);
    CHECK(kinds_of(lower_gate(Gate::single(GateKind::H, 0), 0, alloc)) ==
          std::vector{LliKind::HGate, LliKind::RotateSingleCellPatch});
    const auto cx = lower_gate(Gate::cnot(0, 1), 0, alloc);
    REQUIRE(cx.size() == 1);
    CHECK(cx[0] == Lli::binary(LliKind::BellBasedCNOT, PatchId{0}, PatchId{1}, 0));
    CHECK(kinds_of(lower_gate(Gate::single(GateKind::X, 2), 0, alloc)) == std::vector{LliKind::XGate});
    CHECK(kinds_of(lower_gate(Gate::single(GateKind::Reset, 2), 0, alloc)) == std::vector{LliKind::Reset});
    CHECK(alloc.peek() == 4);
  }

  TEST_CASE("S uses a fresh Y patch and ten serial slices") {
    PatchIdAllocator alloc(3);
    const auto s = lower_gate(Gate::single(GateKind::S, 1), 5, alloc);
    CHECK(kinds_of(s) == std::vector{LliKind::YStateRequest, LliKind::BellBasedCNOT, LliKind::HGate,
                                     LliKind::RotateSingleCellPatch, LliKind::BellBasedCNOT, LliKind::HGate,
                                     LliKind::RotateSingleCellPatch});
    CHECK(s[0].operands[0] == PatchId{3});
    int serial = 0;
    for (const Lli& l : s) {
      serial += lli_duration(l.kind);
      CHECK(l.origin == 5);
    }
    CHECK(serial == 10);
    CHECK(kinds_of(lower_gate(Gate::single(GateKind::Sdg, 1), 0, alloc)) == kinds_of(s));
  }

  TEST_CASE("T teleports and then applies the corrective S") {
    PatchIdAllocator alloc(1);
    const auto t = lower_gate(Gate::single(GateKind::T, 0), 0, alloc);
    REQUIRE(t.size() == 10);
    CHECK(t[0].kind == LliKind::MagicStateRequest);
    CHECK(t[1] == Lli::binary(LliKind::BellBasedCNOT, PatchId{0}, t[0].operands[0], 0));
    CHECK(t[2] == Lli::unary(LliKind::SinglePatchMeasurement, t[0].operands[0], 0));
    CHECK(t[3].kind == LliKind::YStateRequest);
    CHECK(t[3].operands[0] != t[0].operands[0]);
    int serial = 0;
    for (const Lli& l : t) serial += lli_duration(l.kind);
    CHECK(serial == 12);
    CHECK(kinds_of(lower_gate(Gate::single(GateKind::Tdg, 0), 0, alloc)) == kinds_of(t));
  }

  TEST_CASE("allocator never reissues") {
    PatchIdAllocator alloc(2);
    std::set<std::uint32_t> seen;
    for (int i = 0; i < 100; ++i) CHECK(seen.insert(alloc.fresh().value).second);
    CHECK(*seen.begin() == 2);
  }

  TEST_CASE("dependency edges") {
    LogicalCircuit a{4, {Gate::cnot(0, 1), Gate::cnot(2, 3)}};
    CHECK(lower_circuit(a).edge_count() == 0);

    LogicalCircuit b{3, {Gate::cnot(0, 1), Gate::cnot(1, 2)}};
    const auto db = lower_circuit(b);
    CHECK(db.edge_count() == 1);
    CHECK(db.preds[1] == std::vector<std::size_t>{0});

    LogicalCircuit c{1, {Gate::single(GateKind::H, 0), Gate::single(GateKind::H, 0)}};
    const auto dc = lower_circuit(c);
    CHECK(dc.size() == 4);
    for (std::size_t i = 1; i < 4; ++i) CHECK(dc.preds[i] == std::vector<std::size_t>{i - 1});

    LogicalCircuit d{2, {Gate::cnot(0, 1), Gate::cnot(0, 1)}};
    CHECK(lower_circuit(d).edge_count() == 1);
  }

  TEST_CASE("node counts") {
    LogicalCircuit cx{5, {}};
    LogicalCircuit h{5, {}};
    for (std::uint32_t i = 0; i < 4; ++i) {
      cx.gates.push_back(Gate::cnot(i, i + 1));
      h.gates.push_back(Gate::single(GateKind::H, i));
    }
    CHECK(lower_circuit(cx).size() == cx.gates.size());
    CHECK(lower_circuit(h).size() == 2 * h.gates.size());
  }

  TEST_CASE("shared patches are ordered by a path in emission order") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 30; ++round) {
      const auto circuit = oracle::random_mixed_circuit(rng, 2 + static_cast<std::uint32_t>(rng() % 6), 6);
      const auto dag = lower_circuit(circuit);
      const auto reach = closure(dag);
      for (std::size_t i = 0; i < dag.size(); ++i) {
        for (std::size_t p : dag.preds[i]) CHECK(p < i);
        for (std::size_t j = i + 1; j < dag.size(); ++j) {
          bool shared = false;
          for (std::uint8_t k = 0; k < dag.nodes[i].arity; ++k) shared = shared || dag.nodes[j].touches(dag.nodes[i].operands[k]);
          if (shared) CHECK(reach[i].count(j) == 1);
        }
      }
    }
  }

  TEST_CASE("resource patches are fresh") {
    LogicalCircuit c{2, {Gate::single(GateKind::T, 0), Gate::single(GateKind::S, 1), Gate::single(GateKind::T, 1)}};
    const auto dag = lower_circuit(c);
    std::set<std::uint32_t> fresh;
    for (const Lli& l : dag.nodes) {
      if (is_resource_request(l.kind)) {
        CHECK(l.operands[0].value >= 2);
        CHECK(fresh.insert(l.operands[0].value).second);
      }
    }
    CHECK(fresh.size() == 5);
  }

  TEST_CASE("unsliced listing") {
    LogicalCircuit c{2, {Gate::cnot(0, 1), Gate::single(GateKind::H, 1)}};
    CHECK(emit_unsliced(lower_circuit(c)) == "BellBasedCNOT 0,1\nHGate 1\nRotateSingleCellPatch 1\n");
  }
}
