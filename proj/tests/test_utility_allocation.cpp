// Copyright 2026 The relaycoal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <doctest.h>

#include "relaycoal/kernels.hpp"
#include "relaycoal/rng.hpp"
#include "relaycoal/utility_allocation.hpp"
#include "shapley_oracle.hpp"
#include "table_fixtures.hpp"
#include "test_support.hpp"

namespace relaycoal {
namespace {

using testing::make_world;

TuGame three_player_game() {
  // v0, v1, v2, v12, v3, v13, v23, v123 in bitmask order.
  return TuGame(3, {0, 1, 2, 4, 3, 5, 6, 9});
}

TEST_CASE("permutation oracle pins the three-player example") {
  const auto phi = oracle::permutation_shapley({0, 1, 2, 4, 3, 5, 6, 9}, 3);
  CHECK(phi[0] == doctest::Approx(2.0));
  CHECK(phi[1] == doctest::Approx(3.0));
  CHECK(phi[2] == doctest::Approx(4.0));
}

TEST_CASE("closed-form shapley") {
  const auto game = three_player_game();
  const auto phi = shapley(game.function(), 0b111u);
  CHECK(phi.at(1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(phi.at(2) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(phi.at(3) == doctest::Approx(4.0).epsilon(1e-12));

  SUBCASE("sub-coalition") {
    const auto sub = shapley(game.function(), set_of({1, 3}));
    CHECK(sub.size() == 2);
    CHECK(sub.at(1) == doctest::Approx(1.5));
    CHECK(sub.at(3) == doctest::Approx(3.5));
  }
  SUBCASE("singleton") {
    CHECK(shapley(game.function(), sp_bit(2)).at(2) == 2.0);
  }
  SUBCASE("symmetric pair") {
    const TuGame sym(2, {0, 3, 3, 10});
    const auto s = shapley(sym.function(), 0b11u);
    CHECK(s.at(1) == doctest::Approx(5.0));
    CHECK(s.at(2) == doctest::Approx(5.0));
  }
  SUBCASE("player cap") {
    const CharacteristicFunction v = [](SpSet t) { return static_cast<double>(popcount(t)); };
    CHECK_NOTHROW(shapley(v, (SpSet{1} << 10) - 1));
    CHECK_THROWS_AS(shapley(v, (SpSet{1} << 11) - 1), std::invalid_argument);
  }
}

TEST_CASE("closed form matches the permutation average") {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(4));
    std::vector<double> v(std::size_t{1} << n, 0.0);
    for (std::size_t t = 1; t < v.size(); ++t) v[t] = rng.uniform(-50.0, 150.0);
    const TuGame game(n, v);
    const auto phi = shapley(game.function(), static_cast<SpSet>(v.size() - 1));
    const auto expect = oracle::permutation_shapley(v, n);
    double sum = 0.0;
    for (int p = 0; p < n; ++p) {
      CHECK(std::abs(phi.at(p + 1) - expect[static_cast<std::size_t>(p)]) < 1e-9);
      sum += phi.at(p + 1);
    }
    CHECK(std::abs(sum - v.back()) < 1e-9);
  }
}

TEST_CASE("marginal contribution") {
  const TuGame g(2, {0, 1, 2, 4});
  CHECK(marginal_contribution(g.function(), 1, 0) == 1.0);
  CHECK(marginal_contribution(g.function(), 1, sp_bit(2)) == 2.0);
  CHECK_THROWS_AS(marginal_contribution(g.function(), 1, sp_bit(1)), std::invalid_argument);

  // A dummy adds its own value to every coalition.
  const CharacteristicFunction v = [](SpSet t) {
    return (contains(t, 1) ? 7.0 : 0.0) + (contains(t, 2) && contains(t, 3) ? 5.0 : 0.0);
  };
  for (SpSet u = 0; u < 8; ++u) {
    if (!contains(u, 1)) CHECK(marginal_contribution(v, 1, u) == 7.0);
  }
  CHECK(shapley(v, 0b111u).at(1) == doctest::Approx(7.0));
}

TEST_CASE("tu game requires a zero empty coalition") {
  CHECK_THROWS_AS(TuGame(2, {1, 1, 2, 4}), std::invalid_argument);
  CHECK_THROWS_AS(TuGame(2, {0, 1, 2}), std::invalid_argument);
}

TEST_CASE("coalition cost") {
  const auto all = enumerate_structures(3);
  CHECK(coalition_cost(all[1], 1, 5.0) == 5.0);
  CHECK(coalition_cost(all[1], 1, 15.0) == 15.0);
  CHECK(coalition_cost(all[7], 1, 5.0) == 10.0);
  CHECK(coalition_cost(all[4], 1, 35.0) == 70.0);
  for (SpId m = 1; m <= 3; ++m) CHECK(coalition_cost(all[0], m, 35.0) == 0.0);

  // The published tables differ by exactly this cost between columns.
  const auto c5 = testing::fixture(5);
  const auto c15 = testing::fixture(15);
  const auto c35 = testing::fixture(35);
  CHECK(c5.find(all[1])->phi[0] - c15.find(all[1])->phi[0] == 10.0);
  CHECK(c5.find(all[7])->phi[0] - c15.find(all[7])->phi[0] == 20.0);
  CHECK(c15.find(all[7])->phi[0] - c35.find(all[7])->phi[0] == 40.0);
}

TEST_CASE("allocation over overlapping structures") {
  Rng rng(31);
  const auto all = enumerate_structures(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(8, 0.0);
    for (std::size_t t = 1; t < 8; ++t) v[t] = rng.uniform(0.0, 100.0);
    const TuGame game(3, v);
    for (const auto& w : all) {
      const auto a = allocate(game.function(), w, 5.0);
      double lhs = 0.0;
      for (std::size_t m = 0; m < 3; ++m) lhs += a.per_sp_total[m] + a.cost[m];
      double rhs = v[1] + v[2] + v[4];
      for (const SpSet t : w.coalitions()) {
        rhs += v[t];
        for (const SpId m : members_of(t)) rhs -= v[sp_bit(m)];
      }
      CHECK(lhs == doctest::Approx(rhs));
      CHECK(a.aggregated == doctest::Approx(a.per_sp_total[0] + a.per_sp_total[1] + a.per_sp_total[2]));
      for (const SpSet t : w.coalitions()) {
        double shares = 0.0;
        for (const SpId m : members_of(t)) shares += a.per_coalition.at({t, m});
        CHECK(shares == doctest::Approx(v[t]));
      }
      if (w.is_singletons()) {
        for (SpId m = 1; m <= 3; ++m) CHECK(a.per_sp_total[static_cast<std::size_t>(m - 1)] == v[sp_bit(m)]);
      }
      std::size_t below_standalone = 0;
      for (std::size_t m = 0; m < 3; ++m) {
        if (a.per_sp_total[m] < a.standalone[m] - 1e-9) ++below_standalone;
      }
      CHECK(check_allocation_stability(a, game.function()).violations.size() == below_standalone);
    }
  }
}

TEST_CASE("stability check") {
  const auto t1 = testing::fixture(5);
  const auto all = enumerate_structures(3);
  Allocation a;
  a.sp_count = 3;
  a.standalone = t1.find(all[0])->phi;
  a.per_sp_total = t1.find(all[7])->phi;
  a.cost = {10, 10, 10};
  const CharacteristicFunction v = [&](SpSet t) { return t == 0 ? 0.0 : a.standalone[0]; };
  CHECK(check_allocation_stability(a, v).stable);

  a.per_sp_total[0] = 380.0;
  const auto bad = check_allocation_stability(a, v);
  CHECK_FALSE(bad.stable);
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0].find("SP1") != std::string::npos);
}

// Source of SP1 464 m from the BS; SP2's relay halfway lifts the rate only
// marginally, less than the relay's energy cost.
Scenario marginal_relay_world() {
  return make_world({{2000.0, 1000.0}}, {{1, 1536.0, 1000.0, true}, {2, 1768.0, 1000.0, false}});
}

TEST_CASE("characteristic values") {
  const auto s = marginal_relay_world();
  SimulationSettings settings;
  settings.seed = 5;
  const double direct = std::log2(1.0 + testing::oracle_snr(0.01, 464.0));
  const double relayed = std::log2(1.0 + testing::oracle_snr(0.01, 232.0)) / 2.0;
  REQUIRE(relayed > direct);
  REQUIRE(120.0 * (relayed - direct) < 5.0);

  CHECK(characteristic_value(s, 0u, settings) == 0.0);
  CHECK(characteristic_value(s, sp_bit(1), settings) == doctest::Approx(120.0 * direct - 5.0));
  CHECK(characteristic_value(s, sp_bit(2), settings) == 0.0);
  const auto both = evaluate_coalition(s, 0b11u, settings);
  CHECK(both.value == doctest::Approx(120.0 * relayed - 10.0));
  CHECK(both.energy_cost == doctest::Approx(10.0));
  // Not superadditive here: the relay costs more than it earns.
  CHECK(both.value < characteristic_value(s, sp_bit(1), settings));
}

TEST_CASE("simulated evaluator") {
  ScenarioSpec spec;
  spec.providers = 3;
  spec.area = {4000.0, 2000.0};
  spec.tds_per_sp = {8, 8, 8};
  spec.sources_per_sp = {3, 3, 3};
  const auto s = generate_scenario(spec, 11);
  SimulationSettings settings;
  settings.seed = 11;
  const SimulatedEvaluator eval(s, settings);
  const auto singles = eval.utilities(CoalitionStructure(3));
  for (SpId m = 1; m <= 3; ++m) {
    CHECK(singles[static_cast<std::size_t>(m - 1)] == eval.value(sp_bit(m)));
    CHECK(eval.value(sp_bit(m)) == characteristic_value(s, sp_bit(m), settings));
  }
  CHECK(eval.cache().size() == 3);
  eval.prefill(false);
  CHECK(eval.cache().size() == 7);

  const auto serial = subset_values_serial(s, settings);
  const auto parallel = subset_values_parallel(s, settings);
  CHECK(serial == parallel);
  for (SpSet t = 1; t < 8; ++t) CHECK(serial[t] == eval.value(t));

  const auto all = enumerate_structures(3);
  const auto ms = utility_matrix_serial(eval, all);
  const auto mp = utility_matrix_parallel(eval, all);
  REQUIRE(ms.rows.size() == mp.rows.size());
  for (std::size_t k = 0; k < ms.rows.size(); ++k) {
    CHECK(ms.rows[k].structure == mp.rows[k].structure);
    CHECK(ms.rows[k].phi == mp.rows[k].phi);
    CHECK(ms.rows[k].phi_total == mp.rows[k].phi_total);
  }
  CHECK(absorbing_flags_serial(all, eval) == absorbing_flags_parallel(all, eval));
}

TEST_CASE("kernels propagate errors") {
  UtilityMatrix partial;
  partial.sp_count = 3;
  const TableEvaluator eval(partial);
  CHECK_THROWS_AS(utility_matrix_parallel(eval, enumerate_structures(3)), std::out_of_range);
  CHECK_THROWS_AS(absorbing_flags_parallel(enumerate_structures(3), eval), std::out_of_range);
}

}  // namespace
}  // namespace relaycoal
