#include <doctest.h>

#include <cmath>
#include <random>

#include "lsc/error.hpp"
#include "lsc/estimator.hpp"
#include "lsc/layout.hpp"
#include "oracles.hpp"

using namespace lsc;

namespace {

ProgramStats synthetic_stats(std::vector<std::uint64_t> profile, std::uint32_t qubits = 4,
                             std::uint64_t active = 1000) {
  ProgramStats s;
  s.num_qubits = qubits;
  s.tau_logical = profile.size();
  s.active_volume = active;
  for (auto v : profile) s.t_count += v;
  s.m_profile = std::move(profile);
  return s;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_SUITE("estimator") {
  TEST_CASE("error model values") {
    CHECK(rel(patch_error_rate(19, 6e-4), 0.1 * 19 * std::pow(0.06, 10)) < 1e-12);
    CHECK(rel(patch_error_rate(3, 1e-3), 0.3 * 0.01) < 1e-12);
    CHECK_THROWS_AS(patch_error_rate(5, 0.01), ConfigError);
    CHECK(rel(injected_error(HardwareParams::projected()), 0.6 * 6e-4 + 1e-4 + 4e-5 * 2.0 / 3.0) < 1e-12);
    CHECK(rel(injected_error(HardwareParams::current()), 0.6 * 3e-3 + 3e-3 + 4e-5 * 2.0 / 3.0) < 1e-12);
    CHECK(parse_param_type("current") == ParamType::Current);
    CHECK_THROWS_AS(parse_param_type("future"), ConfigError);
  }

  TEST_CASE("binomial tail against direct summation") {
    CHECK(binomial_tail(10, 0.3, 0) == 1.0);
    CHECK(binomial_tail(3, 0.5, 4) == 0.0);
    for (std::uint64_t n : {15u, 20u, 40u}) {
      for (double p : {0.5, 0.9, 0.99}) {
        for (std::uint64_t k : {1u, 10u, 15u}) {
          double direct = 0;
          for (std::uint64_t j = k; j <= n; ++j) {
            double c = 1;
            for (std::uint64_t i = 0; i < j; ++i) c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
            direct += c * std::pow(p, static_cast<double>(j)) * std::pow(1 - p, static_cast<double>(n - j));
          }
          CHECK(std::abs(binomial_tail(n, p, k) - direct) < 1e-9);
        }
      }
    }
  }

  TEST_CASE("factory design") {
    const auto hw = HardwareParams::projected();
    const DistillationUnitParams unit;
    const auto f = design_factory(7, 15, unit, hw);
    CHECK(rel(f.n1, (2.0 * 49 - 1) / (2.0 * 225 - 1) * 12) < 1e-12);
    CHECK(rel(f.tau1, 7.0 / 15 * 6) < 1e-12);
    CHECK(f.tau_D == 9);
    CHECK(f.C1 >= 15);
    CHECK(f.acceptance >= kAcceptanceThreshold);
    const double p1acc = std::pow(1 - f.p_in, 15) * (1 - 72 * patch_error_rate(7, hw.p2));
    const double p2acc = std::pow(1 - f.p_level1, 15) * (1 - 72 * patch_error_rate(15, hw.p2));
    CHECK(rel(f.acceptance, binomial_tail(f.C1, p1acc, 15) * p2acc) < 1e-9);
    CHECK(binomial_tail(f.C1 - 1, p1acc, 15) * p2acc < kAcceptanceThreshold);
    CHECK(rel(f.p_level1, 35 * std::pow(f.p_in, 3) + 72 * patch_error_rate(7, hw.p2)) < 1e-12);
    CHECK(rel(f.P_T, 35 * std::pow(f.p_level1, 3) + 72 * patch_error_rate(15, hw.p2)) < 1e-12);
    CHECK(f.n_D == static_cast<std::uint64_t>(std::ceil(std::max(f.C1 * f.n1, 12.0) - 1e-9)));
    CHECK(rel(f.V_D, f.C1 * f.n1 * f.tau1 + 72) < 1e-12);

    const auto same = design_factory(11, 11, unit, hw);
    CHECK(same.n1 == doctest::Approx(12.0));
    CHECK(same.tau1 == doctest::Approx(6.0));
    CHECK(same.tau_D == 12);

    CHECK_THROWS_AS(design_factory(4, 9, unit, hw), ConfigError);
    CHECK_THROWS_AS(design_factory(9, 7, unit, hw), ConfigError);
    CHECK_THROWS_AS(design_factory(3, 3, unit, HardwareParams::current()), InfeasibleError);
  }

  TEST_CASE("factory count examples") {
    const std::vector<std::uint64_t> a{1, 5};
    auto c = count_factories(a);
    CHECK(c.N == 4);
    CHECK(c.w == 1);
    CHECK(c.w_total == 1);
    const std::vector<std::uint64_t> b{3};
    c = count_factories(b);
    CHECK(c.N == 3);
    CHECK(c.w == 1);
    const std::vector<std::uint64_t> z{0, 0, 6};
    c = count_factories(z);
    CHECK(c.N == 3);
    CHECK(c.w == 0);
    const std::vector<std::uint64_t> flat{4, 4, 4};
    c = count_factories(flat);
    CHECK(c.N == 1);
    CHECK(c.w == 4);
    c = count_factories(a, 2);
    CHECK(c.N == 2);
    CHECK(c.w_total == 3);
    CHECK(count_factories(std::vector<std::uint64_t>{}).N == 0);
    CHECK(count_factories(std::vector<std::uint64_t>{0, 0}).N == 0);
  }

  TEST_CASE("factory count always keeps the supply positive") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 1000; ++round) {
      const auto m = oracle::random_profile(rng, 1 + rng() % 30, 1 + rng() % 8);
      const std::uint64_t w_add = rng() % 4;
      const auto c = count_factories(m, w_add);
      if (m.back() == 0) {
        CHECK(c.N == 0);
        continue;
      }
      CHECK_MESSAGE(oracle::supply_holds(m, c.N, c.w_total), "round " << round);
    }
  }

  TEST_CASE("storage trace against a stock simulation") {
    std::mt19937_64 rng(12);
    for (int round = 0; round < 500; ++round) {
      const auto m = oracle::random_profile(rng, 1 + rng() % 25, rng() % 6);
      const auto c = count_factories(m, rng() % 3);
      if (c.N == 0) continue;
      const std::uint64_t tau = 1 + rng() % 10;
      const auto t = storage_trace(c.N, c.w_total, m, tau);
      const auto sim = oracle::simulate_reserve(m, c.N, c.w_total);
      CHECK(t.reserve == sim);
      CHECK(t.n_storage == *std::max_element(sim.begin(), sim.end()));
      const std::uint64_t total = m.back();
      const auto cycles = static_cast<std::int64_t>((total + c.N - 1) / c.N);
      CHECK(t.k_stop == static_cast<std::uint64_t>(std::max<std::int64_t>(0, cycles - static_cast<std::int64_t>(c.w_total))));
      double sum = 0;
      for (std::size_t k = 1; k + 1 < sim.size(); ++k) sum += static_cast<double>(sim[k]);
      for (std::uint64_t j = 1; j <= c.w_total; ++j) sum += static_cast<double>(std::min(j * c.N, total));
      CHECK(t.V_storage == doctest::Approx(sum * static_cast<double>(tau)));
    }
  }

  TEST_CASE("min-storage schedule") {
    std::mt19937_64 rng(13);
    for (int round = 0; round < 300; ++round) {
      const auto m = oracle::random_profile(rng, 1 + rng() % 20, rng() % 5);
      const auto s = min_storage_schedule(m);
      std::uint64_t sum = 0;
      for (auto n : s.N) sum += n;
      CHECK(sum == m.back());
      CHECK(s.N_max == *std::max_element(s.N.begin(), s.N.end()));
      CHECK(oracle::supply_holds(m, s.N));
      const auto t = min_storage_trace(s, m, 5);
      CHECK(t.n_storage == s.N_max);
      CHECK(t.k_stop == m.size() - 1);
    }
    const std::vector<std::uint64_t> m{2, 2, 5};
    const auto s = min_storage_schedule(m);
    CHECK(s.N == std::vector<std::uint64_t>{2, 0, 3});
    CHECK(min_storage_trace(s, m, 4).V_storage == doctest::Approx((0 + 3 + 2) * 4.0));
  }

  TEST_CASE("evaluate totals are additive") {
    const auto hw = HardwareParams::projected();
    const auto f = design_factory(7, 13, {}, hw);
    const auto stats = synthetic_stats({0, 1, 0, 2, 3, 0, 0, 1, 1, 0, 4, 0, 0, 0, 2, 1, 0, 0, 1, 0, 0, 3}, 9, 5000);
    for (Approach a : {Approach::Default, Approach::AddWarms, Approach::MinStorage}) {
      const auto e = evaluate(stats, f, a, 2, hw);
      CHECK(e.V_total == doctest::Approx(e.V_logical + e.V_dist + e.V_storage));
      CHECK(e.eps == doctest::Approx(e.eps_logical + e.eps_dist + e.eps_storage));
      CHECK(e.n_total == e.N * f.n_D + e.n_storage + edpc_default_tile_count(9));
      CHECK(e.tau_total == e.w_total * f.tau_D + stats.tau_logical);
      CHECK(e.eps_dist == doctest::Approx(22.0 * f.P_T));
      CHECK(e.eps_logical == doctest::Approx(5000 * patch_error_rate(13, hw.p2)));
      CHECK(e.V_logical == 5000);
    }
    const auto zero = evaluate(synthetic_stats({0, 0, 0}), f, Approach::Default, 0, hw);
    CHECK(zero.N == 0);
    CHECK(zero.w_total == 0);
    CHECK(zero.V_dist == 0);
    CHECK(zero.eps_dist == 0);
    CHECK(zero.tau_total == 3);
  }

  TEST_CASE("optimizer meets the budget and matches a brute-force search") {
    const auto stats = synthetic_stats({1, 0, 2, 0, 0, 3, 1, 0, 0, 0, 2, 0, 1, 5, 0, 0, 0, 0, 1, 2}, 6, 20000);
    const auto hw = HardwareParams::projected();
    for (Approach a : {Approach::Default, Approach::AddWarms, Approach::MinStorage}) {
      for (Objective obj : {Objective::Space, Objective::Time, Objective::SpaceTime, Objective::ActiveVolume}) {
        OptimizeOptions o;
        o.approach = a;
        o.objective = obj;
        o.max_d2 = 21;
        o.max_w = 12;
        o.error_budget = 1e-3;
        const auto best = optimize(stats, o);
        CHECK(best.eps <= o.error_budget);
        CHECK(best.design.d1 <= best.design.d2);
        double brute = INFINITY;
        for (int d2 = 3; d2 <= 21; d2 += 2) {
          for (int d1 = 3; d1 <= d2; d1 += 2) {
            FactoryDesign f;
            try {
              f = design_factory(d1, d2, {}, hw);
            } catch (const InfeasibleError&) {
              continue;
            }
            const std::uint64_t wmax = a == Approach::AddWarms ? o.max_w : 0;
            for (std::uint64_t w = 0; w <= wmax; ++w) {
              const auto e = evaluate(stats, f, a, w, hw);
              if (e.eps <= o.error_budget) brute = std::min(brute, e.objective_value(obj));
            }
          }
        }
        CHECK(best.objective_value(obj) == doctest::Approx(brute));
      }
    }
  }

  TEST_CASE("looser budgets never cost more") {
    const auto stats = synthetic_stats({2, 1, 0, 3, 0, 0, 1, 4, 0, 1}, 5, 3000);
    double prev = INFINITY;
    for (double budget : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1}) {
      OptimizeOptions o;
      o.error_budget = budget;
      const auto e = optimize(stats, o);
      CHECK(e.objective_value(o.objective) <= prev);
      prev = e.objective_value(o.objective);
    }
  }

  TEST_CASE("code-distance bounds are respected") {
    const auto stats = synthetic_stats({1, 1, 1, 1}, 2, 100);
    OptimizeOptions o;
    o.min_d1 = 8;
    o.min_d2 = 14;
    const auto e = optimize(stats, o);
    CHECK(e.design.d1 >= 9);
    CHECK(e.design.d2 >= 15);
    CHECK(e.design.d1 % 2 == 1);
    CHECK(e.design.d2 % 2 == 1);
    o.max_d2 = 13;
    CHECK_THROWS_AS(optimize(stats, o), ConfigError);
  }

  TEST_CASE("unreachable budget reports the best attempt") {
    const auto stats = synthetic_stats({1, 2, 3}, 3, 100);
    OptimizeOptions o;
    o.error_budget = 1e-40;
    o.max_d2 = 9;
    try {
      optimize(stats, o);
      FAIL("expected infeasible");
    } catch (const InfeasibleError& e) {
      REQUIRE(e.best().is_object());
      CHECK(e.best()["eps"].get<double>() > 1e-40);
      CHECK(e.best()["d2"].get<int>() <= 9);
    }
  }

  TEST_CASE("estimate JSON round trip and trace CSV") {
    const auto stats = synthetic_stats({1, 0, 2, 0, 3}, 3, 400);
    OptimizeOptions o;
    o.approach = Approach::MinStorage;
    const auto e = optimize(stats, o);
    const auto back = estimate_from_json(to_json(e));
    CHECK(back.n_total == e.n_total);
    CHECK(back.tau_total == e.tau_total);
    CHECK(back.N_schedule == e.N_schedule);
    CHECK(back.design.d2 == e.design.d2);
    CHECK(back.approach == Approach::MinStorage);
    const auto csv = trace_csv(e);
    CHECK(csv.rfind("k,m,R\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(e.reserve.size() + 1));
    CHECK(parse_approach("add-warms") == Approach::AddWarms);
    CHECK(parse_objective("space-time") == Objective::SpaceTime);
    CHECK_THROWS_AS(parse_approach("fastest"), ConfigError);
  }

  TEST_CASE("unit config") {
    const auto u = unit_params_from_json({{"n2", 20}, {"tau2", 8}});
    CHECK(u.n2 == 20);
    CHECK(u.tau2 == 8);
    CHECK_THROWS_AS(unit_params_from_json({{"n2", 0}}), ConfigError);
  }
}
