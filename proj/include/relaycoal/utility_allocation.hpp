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

#ifndef RELAYCOAL_UTILITY_ALLOCATION_HPP
#define RELAYCOAL_UTILITY_ALLOCATION_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "relaycoal/coalition_engine.hpp"
#include "relaycoal/coalition_structure.hpp"
#include "relaycoal/core_model.hpp"
#include "relaycoal/link_formation.hpp"
#include "relaycoal/network_graph.hpp"
#include "relaycoal/radio_channel.hpp"

namespace relaycoal {

// v(T) for a set of SPs. Must return 0 for the empty set.
using CharacteristicFunction = std::function<double(SpSet)>;

// Dense transferable-utility game: values indexed by the member bitmask.
class TuGame {
 public:
  TuGame(int players, std::vector<double> values);
  static TuGame from_function(int players, const CharacteristicFunction& v);

  int players() const { return players_; }
  double operator()(SpSet coalition) const { return values_.at(coalition); }
  CharacteristicFunction function() const;

 private:
  int players_;
  std::vector<double> values_;
};

// v(U u {m}) - v(U). Throws std::invalid_argument when m is already in U.
double marginal_contribution(const CharacteristicFunction& v, SpId m, SpSet base);

inline constexpr int kShapleyPlayerCap = 10;

// Shapley value of each member of `coalition` via the subset-weighted sum
//   phi_m = sum_{U in T\{m}} |U|! (|T|-|U|-1)! / |T|! * (v(U+m) - v(U)).
// Throws std::invalid_argument above `cap` members.
std::map<SpId, double> shapley(const CharacteristicFunction& v, SpSet coalition,
                               int cap = kShapleyPlayerCap);

// unit_cost * sum over Gamma_m of (|T| - 1).
double coalition_cost(const CoalitionStructure& w, SpId m, double unit_cost);

struct Allocation {
  int sp_count = 0;
  std::map<std::pair<SpSet, SpId>, double> per_coalition;  // (T, m) -> phi_m(T)
  std::vector<double> standalone;                          // v({m})
  std::vector<double> cost;                                // coalition cost of m
  std::vector<double> per_sp_total;                        // net phi_m(Gamma_m)
  double aggregated = 0.0;
};

// Shapley split of every coalition of `w`. An SP's total is its standalone
// value plus its Shapley surplus phi_m(T) - v({m}) from each coalition it
// belongs to, minus its coalition cost; an SP in exactly one coalition gets
// phi_m(T) - cost, an uncovered SP gets v({m}).
Allocation allocate(const CharacteristicFunction& v, const CoalitionStructure& w,
                    double unit_cost);

struct AllocationCheck {
  bool stable = true;
  std::vector<std::string> violations;  // efficiency or individual rationality
  std::vector<std::string> notes;       // per-coalition rationality, informational
};

AllocationCheck check_allocation_stability(const Allocation& alloc, const CharacteristicFunction& v,
                                           double tolerance = 1e-9);

// Simulation of the TD layer behind v(T).
struct SimulationSettings {
  std::shared_ptr<const ThroughputModel> model;  // null selects the default
  std::uint64_t seed = 0;
  int max_rounds = 0;

  const ThroughputModel& throughput_model() const {
    return model ? *model : default_throughput_model();
  }
};

struct CoalitionOutcome {
  double value = 0.0;
  double revenue = 0.0;
  double energy_cost = 0.0;
  NetworkGraph graph;
  int iterations = 0;
};

// Runs link formation among the members of T only, with all their vacant
// TDs shared, and prices the converged network: revenue for the members'
// served source throughput minus the members' transmit energy cost.
CoalitionOutcome evaluate_coalition(const Scenario& s, SpSet coalition,
                                    const SimulationSettings& settings);
double characteristic_value(const Scenario& s, SpSet coalition,
                            const SimulationSettings& settings);

// Memoised v(T). Concurrent lookups share a lock; inserts take it
// exclusively and never overwrite an existing entry.
class CharacteristicCache {
 public:
  std::optional<double> find(SpSet coalition) const;
  double insert(SpSet coalition, double value);
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<SpSet, double> entries_;
};

// phi_m(w) from the full layered game: Shapley allocation over simulated
// characteristic values, net of coalition cost.
class SimulatedEvaluator final : public UtilityEvaluator {
 public:
  SimulatedEvaluator(Scenario scenario, SimulationSettings settings);

  int sp_count() const override { return scenario_.sp_count(); }
  std::vector<double> utilities(const CoalitionStructure& w) const override;

  Allocation allocation(const CoalitionStructure& w) const;
  double value(SpSet coalition) const;
  CharacteristicFunction function() const;

  // Evaluates every subset of the SP set up front, in parallel or serially.
  void prefill(bool parallel) const;

  const Scenario& scenario() const { return scenario_; }
  const SimulationSettings& settings() const { return settings_; }
  const CharacteristicCache& cache() const { return cache_; }

 private:
  Scenario scenario_;
  SimulationSettings settings_;
  mutable CharacteristicCache cache_;
};

}  // namespace relaycoal

#endif  // RELAYCOAL_UTILITY_ALLOCATION_HPP
