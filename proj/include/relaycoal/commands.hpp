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

#ifndef RELAYCOAL_COMMANDS_HPP
#define RELAYCOAL_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "relaycoal/coalition_engine.hpp"
#include "relaycoal/coalition_structure.hpp"
#include "relaycoal/link_formation.hpp"
#include "relaycoal/scenario_config.hpp"
#include "relaycoal/utility_allocation.hpp"
#include "relaycoal/utility_matrix.hpp"

// The commands behind the relaycoal CLI, kept in the library so tests can
// drive them without a subprocess. Each returns a plain report value; the
// write_* helpers turn a report into files.
namespace relaycoal {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- simulate

struct StructureNetwork {
  CoalitionStructure structure;
  NetworkGraph graph;
  int iterations = 0;
  double served_throughput = 0.0;  // sum over all flows
};

struct SimulateReport {
  RunConfig config;
  std::uint64_t seed = 0;
  Scenario scenario;
  std::vector<CoalitionStructure> structures;  // rows of the matrix
  UtilityMatrix matrix;
  std::vector<std::pair<SpSet, double>> characteristic;  // v(T), by T
  std::vector<CoalitionStructure> stable;
  FormationResult formation;
  bool final_absorbing = false;
  Allocation final_allocation;
  AllocationCheck final_check;
  std::vector<StructureNetwork> networks;  // parallel to `structures`

  const StructureNetwork& network_of(const CoalitionStructure& w) const;
};

// Link formation under the sharing relation of `w`, started from the
// nearest-BS star. The seed depends only on (seed, w) so a later run can
// reproduce the same network.
StructureNetwork structure_network(const Scenario& s, const CoalitionStructure& w,
                                   const SimulationSettings& settings);

SimulateReport cmd_simulate(const RunConfig& config);
Json to_json(const SimulateReport& report);

// utility_matrix.csv, coalition_structure.dot, transitions.dot,
// networks/<label>.dot and report.json.
void write_simulate_artifacts(const SimulateReport& report, const std::filesystem::path& dir);

// ---------------------------------------------------------- analyze-tables

struct PolicyAnalysis {
  MoveOrdering ordering = MoveOrdering::BestImprovement;
  TransitionGraph graph;
  std::map<std::size_t, std::set<std::size_t>> reachable;  // start -> absorbing
  CoalitionStructure final_from_singletons;
};

struct TableAnalysis {
  std::string name;
  double coalition_cost = 0.0;
  UtilityMatrix matrix;
  std::vector<CoalitionStructure> structures;  // enumeration order
  std::vector<std::string> aggregate_deviations;  // rows off by more than 0.5
  std::vector<CoalitionStructure> stable;
  std::vector<PolicyAnalysis> policies;
};

struct CostLinearityCheck {
  bool holds = true;
  int comparisons = 0;
  double max_deviation = 0.0;
  std::vector<std::string> violations;
};

inline constexpr double kAggregateTolerance = 0.5;
inline constexpr double kLinearityTolerance = 1e-6;

// Parses the "_c<cost>" suffix of a file stem, e.g. tables_c15.csv -> 15.
std::optional<double> cost_from_filename(const std::string& path);

// Throws std::invalid_argument unless the matrix lists every enumerated
// structure of its SP count exactly once.
void require_complete(const UtilityMatrix& matrix);

TableAnalysis analyze_table(const std::string& name, const UtilityMatrix& matrix,
                            double coalition_cost, SplitRule rule, std::uint64_t seed);
CostLinearityCheck check_cost_linearity(const std::vector<TableAnalysis>& tables);

Json to_json(const TableAnalysis& t);
Json to_json(const CostLinearityCheck& c);

// transitions_<name>_<policy>.dot per table plus report.json.
void write_table_artifacts(const std::vector<TableAnalysis>& tables,
                           const CostLinearityCheck& linearity,
                           const std::filesystem::path& dir);

// ----------------------------------------------------------- demand-change

struct LinkChange {
  TdId td = 0;
  std::optional<NodeRef> before;
  std::optional<NodeRef> after;
};

struct DemandChangeReport {
  SimulateReport baseline;
  std::vector<TdId> flipped;
  Scenario changed;
  NetworkGraph before;    // converged network under the final structure
  NetworkGraph repaired;  // after releasing links the flips invalidated
  LinkFormationResult rerun;
  std::vector<LinkChange> diff;
};

// Releases every link made invalid by the role flips: new sources get a
// direct link to their best BS, retired sources drop their chain.
NetworkGraph repair_after_flips(const Scenario& changed, const NetworkGraph& g,
                                const std::vector<TdId>& flipped);

std::vector<LinkChange> diff_links(const NetworkGraph& before, const NetworkGraph& after);

DemandChangeReport cmd_demand_change(const RunConfig& config, const std::vector<TdId>& flips);
Json to_json(const DemandChangeReport& report);
void write_demand_change_artifacts(const DemandChangeReport& report,
                                   const std::filesystem::path& dir);

// --------------------------------------------------------------- enumerate

struct EnumerationReport {
  int sp_count = 0;
  std::vector<CoalitionStructure> structures;
  long long formula_count = 0;
};

EnumerationReport cmd_enumerate(int sp_count, int bound = kDefaultEnumerationBound);
Json to_json(const EnumerationReport& report);

// ----------------------------------------------------------------- shapley

struct ShapleyReport {
  int players = 0;
  std::vector<double> values;  // v by bitmask
  std::map<SpId, double> phi;
  double grand_value = 0.0;
};

// CSV with header "coalition,value"; coalitions are written like "{1,2}",
// "(1 2)" or "1;2" and the empty coalition may be omitted.
TuGame read_tu_game_csv(std::istream& in);
ShapleyReport cmd_shapley(const TuGame& game);
Json to_json(const ShapleyReport& report);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace relaycoal

#endif  // RELAYCOAL_COMMANDS_HPP
