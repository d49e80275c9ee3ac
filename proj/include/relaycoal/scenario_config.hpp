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

#ifndef RELAYCOAL_SCENARIO_CONFIG_HPP
#define RELAYCOAL_SCENARIO_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "relaycoal/coalition_engine.hpp"
#include "relaycoal/core_model.hpp"

namespace relaycoal {

// Run configuration read from JSON. Keys carry their units, e.g.
//
//   {
//     "service_providers": 3,
//     "tds_per_sp": 12,              // or [12, 12, 12]
//     "sources_per_sp": 4,
//     "base_stations": 2,            // or [{"x_m": 500, "y_m": 500}, ...]
//     "area_m": {"width": 2000, "height": 1000},
//     "radio": {"tx_power_mw": 10, "noise_dbm": -90, "target_sinr_db": 10,
//               "path_loss_exponent": 4, "antenna_constant": 62.5,
//               "packet_info_bits": 100, "packet_total_bits": 100},
//     "economics": {"revenue_per_kbps": 120, "energy_cost_per_watt": 500,
//                   "coalition_cost": 5},
//     "throughput_model": "shannon-tdd",
//     "move_ordering": "best-improvement",
//     "split_rule": "strict",
//     "initial_structure": "{}",
//     "seed": 42
//   }
//
// Every key is optional except the SP and TD counts; unknown keys are
// rejected.
struct RunConfig {
  ScenarioSpec spec;
  std::optional<std::uint64_t> seed;
  std::string throughput_model = "shannon-tdd";
  MoveOrdering ordering = MoveOrdering::BestImprovement;
  SplitRule split_rule = SplitRule::Strict;
  std::string initial_structure = "{}";
  int max_link_rounds = 0;

  std::uint64_t require_seed() const;
};

double dbm_to_watts(double dbm);
double db_to_linear(double db);

// Throws std::invalid_argument naming the offending key.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

// Canonical JSON of the effective configuration, embedded in run reports
// so a report can be re-run.
nlohmann::ordered_json to_json(const RunConfig& config);

}  // namespace relaycoal

#endif  // RELAYCOAL_SCENARIO_CONFIG_HPP
