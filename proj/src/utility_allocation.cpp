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

#include "relaycoal/utility_allocation.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "relaycoal/kernels.hpp"
#include "relaycoal/rng.hpp"

namespace relaycoal {

TuGame::TuGame(int players, std::vector<double> values)
    : players_(players), values_(std::move(values)) {
  if (players < 0 || players > 20) throw std::invalid_argument("TU game needs 0..20 players");
  if (values_.size() != (std::size_t{1} << players)) {
    throw std::invalid_argument("TU game needs 2^n values");
  }
  if (values_[0] != 0.0) throw std::invalid_argument("v(empty set) must be 0");
}

TuGame TuGame::from_function(int players, const CharacteristicFunction& v) {
  std::vector<double> values(std::size_t{1} << players);
  for (std::size_t mask = 1; mask < values.size(); ++mask) values[mask] = v(static_cast<SpSet>(mask));
  return TuGame(players, std::move(values));
}

CharacteristicFunction TuGame::function() const {
  return [values = values_](SpSet t) { return values.at(t); };
}

double marginal_contribution(const CharacteristicFunction& v, SpId m, SpSet base) {
  if (contains(base, m)) {
    throw std::invalid_argument("SP" + std::to_string(m) + " is already in the base coalition");
  }
  return v(base | sp_bit(m)) - v(base);
}

std::map<SpId, double> shapley(const CharacteristicFunction& v, SpSet coalition, int cap) {
  const int t = popcount(coalition);
  if (t > cap) {
    throw std::invalid_argument("Shapley value refused for " + std::to_string(t) +
                                " players (cap " + std::to_string(cap) + ")");
  }
  std::array<double, 33> factorial{};
  factorial[0] = 1.0;
  for (std::size_t k = 1; k < factorial.size(); ++k) factorial[k] = factorial[k - 1] * static_cast<double>(k);

  std::map<SpId, double> phi;
  for (const SpId m : members_of(coalition)) {
    const SpSet others = coalition & ~sp_bit(m);
    double sum = 0.0;
    // Every submask of `others`, including the empty set.
    SpSet u = others;
    for (;;) {
      const int size = popcount(u);
      const double weight =
          factorial[static_cast<std::size_t>(size)] *
          factorial[static_cast<std::size_t>(t - size - 1)] / factorial[static_cast<std::size_t>(t)];
      sum += weight * marginal_contribution(v, m, u);
      if (u == 0) break;
      u = (u - 1) & others;
    }
    phi[m] = sum;
  }
  return phi;
}

double coalition_cost(const CoalitionStructure& w, SpId m, double unit_cost) {
  return unit_cost * coalition_cost_units(w, m);
}

Allocation allocate(const CharacteristicFunction& v, const CoalitionStructure& w,
                    double unit_cost) {
  Allocation a;
  a.sp_count = w.sp_count();
  const auto n = static_cast<std::size_t>(a.sp_count);
  a.standalone.resize(n);
  a.cost.resize(n);
  a.per_sp_total.resize(n);
  for (SpId m = 1; m <= a.sp_count; ++m) {
    a.standalone[static_cast<std::size_t>(m - 1)] = v(sp_bit(m));
  }
  std::vector<double> surplus(n, 0.0);
  for (const SpSet t : w.coalitions()) {
    for (const auto& [m, share] : shapley(v, t)) {
      a.per_coalition[{t, m}] = share;
      surplus[static_cast<std::size_t>(m - 1)] += share - a.standalone[static_cast<std::size_t>(m - 1)];
    }
  }
  for (SpId m = 1; m <= a.sp_count; ++m) {
    const auto k = static_cast<std::size_t>(m - 1);
    a.cost[k] = coalition_cost(w, m, unit_cost);
    a.per_sp_total[k] = a.standalone[k] + surplus[k] - a.cost[k];
  }
  a.aggregated = std::accumulate(a.per_sp_total.begin(), a.per_sp_total.end(), 0.0);
  return a;
}

AllocationCheck check_allocation_stability(const Allocation& alloc, const CharacteristicFunction& v,
                                           double tolerance) {
  AllocationCheck check;
  std::map<SpSet, double> sums;
  for (const auto& [key, share] : alloc.per_coalition) sums[key.first] += share;
  for (const auto& [t, sum] : sums) {
    const double value = v(t);
    if (std::abs(sum - value) > tolerance * std::max(1.0, std::abs(value))) {
      std::ostringstream msg;
      msg << "coalition " << coalition_to_string(t) << ": shares sum to " << sum << " but v = " << value;
      check.violations.push_back(msg.str());
    }
  }
  for (SpId m = 1; m <= alloc.sp_count; ++m) {
    const auto k = static_cast<std::size_t>(m - 1);
    const double alone = alloc.standalone.at(k);
    if (alloc.per_sp_total.at(k) < alone - tolerance) {
      std::ostringstream msg;
      msg << "SP" << m << ": total " << alloc.per_sp_total[k] << " below standalone value " << alone;
      check.violations.push_back(msg.str());
    }
  }
  for (const auto& [key, share] : alloc.per_coalition) {
    const double alone = alloc.standalone.at(static_cast<std::size_t>(key.second - 1));
    if (share < alone - tolerance) {
      std::ostringstream msg;
      msg << "SP" << key.second << " in " << coalition_to_string(key.first) << ": share " << share
          << " below standalone value " << alone;
      check.notes.push_back(msg.str());
    }
  }
  check.stable = check.violations.empty();
  return check;
}

CoalitionOutcome evaluate_coalition(const Scenario& s, SpSet coalition,
                                    const SimulationSettings& settings) {
  CoalitionOutcome out;
  if (coalition == 0) return out;
  const auto& model = settings.throughput_model();
  LinkFormationOptions opts;
  opts.model = &model;
  opts.seed = Rng::split(settings.seed, "characteristic", coalition).next_u64();
  opts.max_rounds = settings.max_rounds;
  const auto sharing = SharingRelation::within(coalition, s.sp_count());
  auto run = run_link_formation(s, sharing, initial_star(s, coalition), opts);

  double served = 0.0;
  for (const auto& d : s.devices) {
    if (d.is_source() && contains(coalition, d.owner)) {
      served += flow_throughput(s, run.graph, d.id, model);
    }
  }
  out.revenue = s.econ.revenue_per_unit_throughput * served;
  for (const SpId m : members_of(coalition)) out.energy_cost += td_energy_cost(s, run.graph, m);
  out.value = out.revenue - out.energy_cost;
  out.graph = std::move(run.graph);
  out.iterations = run.iterations;
  return out;
}

double characteristic_value(const Scenario& s, SpSet coalition, const SimulationSettings& settings) {
  return evaluate_coalition(s, coalition, settings).value;
}

std::optional<double> CharacteristicCache::find(SpSet coalition) const {
  std::shared_lock lock(mutex_);
  const auto it = entries_.find(coalition);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

double CharacteristicCache::insert(SpSet coalition, double value) {
  std::unique_lock lock(mutex_);
  return entries_.try_emplace(coalition, value).first->second;
}

std::size_t CharacteristicCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

SimulatedEvaluator::SimulatedEvaluator(Scenario scenario, SimulationSettings settings)
    : scenario_(std::move(scenario)), settings_(std::move(settings)) {
  scenario_.validate();
}

double SimulatedEvaluator::value(SpSet coalition) const {
  if (coalition == 0) return 0.0;
  if (const auto hit = cache_.find(coalition)) return *hit;
  return cache_.insert(coalition, characteristic_value(scenario_, coalition, settings_));
}

CharacteristicFunction SimulatedEvaluator::function() const {
  return [this](SpSet t) { return value(t); };
}

Allocation SimulatedEvaluator::allocation(const CoalitionStructure& w) const {
  return allocate(function(), w, scenario_.econ.coalition_cost);
}

std::vector<double> SimulatedEvaluator::utilities(const CoalitionStructure& w) const {
  return allocation(w).per_sp_total;
}

void SimulatedEvaluator::prefill(bool parallel) const {
  const auto values = parallel ? subset_values_parallel(scenario_, settings_)
                               : subset_values_serial(scenario_, settings_);
  for (std::size_t mask = 1; mask < values.size(); ++mask) {
    cache_.insert(static_cast<SpSet>(mask), values[mask]);
  }
}

}  // namespace relaycoal
