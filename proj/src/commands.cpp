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

#include "relaycoal/commands.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "relaycoal/kernels.hpp"
#include "relaycoal/rng.hpp"

namespace relaycoal {
namespace {

const std::vector<MoveOrdering> kPolicies = {MoveOrdering::BestImprovement,
                                              MoveOrdering::FirstImprovement,
                                              MoveOrdering::RandomSeeded};

std::string label_of(const std::vector<CoalitionStructure>& all, const CoalitionStructure& w) {
  return structure_label(all, w);
}

std::string kind_name(MoveKind k) { return k == MoveKind::Merge ? "merge" : "split"; }

Json move_json(const CoalitionMove& mv, const std::vector<CoalitionStructure>& all) {
  return Json{{"actor", mv.actor},
              {"kind", kind_name(mv.kind)},
              {"counterpart", coalition_to_string(mv.counterpart)},
              {"from", label_of(all, mv.from)},
              {"to", label_of(all, mv.to)},
              {"from_structure", mv.from.to_string()},
              {"to_structure", mv.to.to_string()},
              {"actor_before", mv.actor_before},
              {"actor_after", mv.actor_after}};
}

Json links_json(const NetworkGraph& g) {
  auto out = Json::array();
  for (const auto& [td, next] : g.links()) {
    out.push_back(Json{{"from", to_string(NodeRef::device(td))}, {"to", to_string(next)}});
  }
  return out;
}

Json scenario_json(const Scenario& s) {
  Json j;
  auto devices = Json::array();
  for (const auto& d : s.devices) {
    devices.push_back(Json{{"id", d.id},
                           {"owner", d.owner},
                           {"x_m", d.position.x},
                           {"y_m", d.position.y},
                           {"role", d.is_source() ? "source" : "vacant"}});
  }
  auto stations = Json::array();
  for (const auto& b : s.stations) {
    stations.push_back(Json{{"id", b.id}, {"x_m", b.position.x}, {"y_m", b.position.y}});
  }
  j["devices"] = devices;
  j["stations"] = stations;
  return j;
}

BsId nearest_station(const Scenario& s, TdId td) {
  BsId best = 1;
  double best_d = distance(s.td(td).position, s.bs(1).position);
  for (BsId b = 2; b <= s.bs_count(); ++b) {
    const double d = distance(s.td(td).position, s.bs(b).position);
    if (d < best_d) {
      best = b;
      best_d = d;
    }
  }
  return best;
}

// Drops the link of `td` and every relay link downstream of it.
void release_chain(NetworkGraph& g, TdId td) {
  std::optional<TdId> cur = td;
  while (cur && g.transmits(*cur)) {
    const NodeRef next = *g.next_hop(*cur);
    g.remove_link(*cur);
    cur = next.is_device() ? std::optional<TdId>(next.id) : std::nullopt;
  }
}

double served_throughput(const Scenario& s, const NetworkGraph& g, const ThroughputModel& model) {
  double total = 0.0;
  for (const TdId td : s.sources()) {
    if (g.transmits(td)) total += flow_throughput(s, g, td, model);
  }
  return total;
}

std::optional<double> parse_double(const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n\"");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n\"");
  return s.substr(a, b - a + 1);
}

SimulationSettings settings_for(const RunConfig& config) {
  SimulationSettings settings;
  settings.model = make_throughput_model(config.throughput_model);
  settings.seed = config.require_seed();
  settings.max_rounds = config.max_link_rounds;
  return settings;
}

}  // namespace

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

// ---------------------------------------------------------------- simulate

const StructureNetwork& SimulateReport::network_of(const CoalitionStructure& w) const {
  for (const auto& n : networks) {
    if (n.structure == w) return n;
  }
  throw std::out_of_range("no network recorded for " + w.to_string());
}

StructureNetwork structure_network(const Scenario& s, const CoalitionStructure& w,
                                   const SimulationSettings& settings) {
  const auto& model = settings.throughput_model();
  LinkFormationOptions opts;
  opts.model = &model;
  opts.seed = Rng::split(settings.seed, "structure-network:" + w.to_string()).next_u64();
  opts.max_rounds = settings.max_rounds;
  auto run = run_link_formation(s, SharingRelation::from_structure(w), initial_star(s), opts);
  StructureNetwork out;
  out.structure = w;
  out.served_throughput = served_throughput(s, run.graph, model);
  out.graph = std::move(run.graph);
  out.iterations = run.iterations;
  return out;
}

SimulateReport cmd_simulate(const RunConfig& config) {
  SimulateReport r;
  r.config = config;
  r.seed = config.require_seed();
  r.scenario = generate_scenario(config.spec, r.seed);
  const SimulationSettings settings = settings_for(config);
  const int m = r.scenario.sp_count();

  SimulatedEvaluator eval(r.scenario, settings);
  if (m <= 16) eval.prefill(true);

  const auto start = CoalitionStructure::parse(config.initial_structure, m);
  EngineOptions engine;
  engine.ordering = config.ordering;
  engine.split_rule = config.split_rule;
  engine.seed = r.seed;
  r.formation = run_coalition_formation(start, eval, engine);
  r.final_absorbing = is_absorbing(r.formation.final_structure, eval, config.split_rule);

  if (m <= kDefaultEnumerationBound) {
    r.structures = enumerate_structures(m);
    const auto flags = absorbing_flags_parallel(r.structures, eval, config.split_rule);
    for (std::size_t k = 0; k < flags.size(); ++k) {
      if (flags[k]) r.stable.push_back(r.structures[k]);
    }
  } else {
    // Too many structures to list; keep the ones the dynamics touched.
    for (const auto& w : r.formation.visited) {
      if (std::find(r.structures.begin(), r.structures.end(), w) == r.structures.end()) {
        r.structures.push_back(w);
      }
    }
  }
  r.matrix = utility_matrix_parallel(eval, r.structures);

  for (SpSet t = 1; m <= 16 && t < (SpSet{1} << m); ++t) {
    r.characteristic.emplace_back(t, eval.value(t));
  }
  r.final_allocation = eval.allocation(r.formation.final_structure);
  r.final_check = check_allocation_stability(r.final_allocation, eval.function());

  for (const auto& w : r.structures) r.networks.push_back(structure_network(r.scenario, w, settings));
  return r;
}

Json to_json(const SimulateReport& r) {
  Json j;
  j["command"] = "simulate";
  j["config"] = to_json(r.config);
  j["seed"] = r.seed;
  j["scenario"] = scenario_json(r.scenario);
  const int m = r.scenario.sp_count();
  j["enumeration"] = Json{{"sp_count", m},
                          {"enumerated", m <= kDefaultEnumerationBound ? r.structures.size() : 0},
                          {"formula_count", structure_count_formula(m)}};

  auto v = Json::array();
  for (const auto& [t, value] : r.characteristic) {
    v.push_back(Json{{"coalition", coalition_to_string(t)}, {"value", value}});
  }
  j["characteristic_function"] = v;

  auto rows = Json::array();
  for (const auto& row : r.matrix.rows) {
    rows.push_back(Json{{"label", label_of(r.structures, row.structure)},
                        {"structure", row.structure.to_string()},
                        {"phi", row.phi},
                        {"phi_total", row.phi_total}});
  }
  j["utility_matrix"] = rows;

  auto stable = Json::array();
  for (const auto& w : r.stable) stable.push_back(label_of(r.structures, w));
  j["stable_set"] = stable;

  auto trajectory = Json::array();
  for (const auto& mv : r.formation.trajectory) trajectory.push_back(move_json(mv, r.structures));
  j["coalition_formation"] =
      Json{{"move_ordering", std::string(to_string(r.config.ordering))},
           {"split_rule", std::string(to_string(r.config.split_rule))},
           {"initial", r.formation.visited.front().to_string()},
           {"final", r.formation.final_structure.to_string()},
           {"final_label", label_of(r.structures, r.formation.final_structure)},
           {"final_absorbing", r.final_absorbing},
           {"passes", r.formation.passes},
           {"trajectory", trajectory}};

  const auto& a = r.final_allocation;
  auto per_coalition = Json::array();
  for (const auto& [key, value] : a.per_coalition) {
    per_coalition.push_back(Json{{"coalition", coalition_to_string(key.first)},
                                 {"sp", key.second},
                                 {"phi", value}});
  }
  j["allocation"] = Json{{"standalone", a.standalone},
                         {"coalition_cost", a.cost},
                         {"per_coalition", per_coalition},
                         {"per_sp_total", a.per_sp_total},
                         {"aggregated", a.aggregated},
                         {"stable", r.final_check.stable},
                         {"violations", r.final_check.violations},
                         {"notes", r.final_check.notes}};

  auto nets = Json::array();
  for (const auto& n : r.networks) {
    nets.push_back(Json{{"label", label_of(r.structures, n.structure)},
                        {"structure", n.structure.to_string()},
                        {"iterations", n.iterations},
                        {"served_throughput", n.served_throughput},
                        {"links", links_json(n.graph)}});
  }
  j["networks"] = nets;
  return j;
}

namespace {

std::string structure_dot(const SimulateReport& r) {
  std::ostringstream out;
  const auto& w = r.formation.final_structure;
  out << "graph \"coalition_structure\" {\n  label=\"" << w.to_string() << "\";\n";
  for (SpId m = 1; m <= w.sp_count(); ++m) {
    out << "  SP" << m << " [label=\"SP" << m << "\\nphi="
        << format_number(r.final_allocation.per_sp_total[static_cast<std::size_t>(m - 1)])
        << "\"];\n";
  }
  for (SpId a = 1; a <= w.sp_count(); ++a) {
    for (SpId b = a + 1; b <= w.sp_count(); ++b) {
      if (w.cooperates(a, b)) out << "  SP" << a << " -- SP" << b << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace

void write_simulate_artifacts(const SimulateReport& r, const std::filesystem::path& dir) {
  std::ostringstream csv;
  write_utility_csv(csv, r.matrix);
  write_text_file(dir / "utility_matrix.csv", csv.str());
  write_text_file(dir / "coalition_structure.dot", structure_dot(r));
  if (r.scenario.sp_count() <= kDefaultEnumerationBound) {
    const TableEvaluator table(r.matrix);
    write_text_file(dir / "transitions.dot",
                    to_dot(transition_graph(r.scenario.sp_count(), table, r.config.split_rule)));
  }
  const auto model = make_throughput_model(r.config.throughput_model);
  for (const auto& n : r.networks) {
    const auto label = label_of(r.structures, n.structure);
    write_text_file(dir / "networks" / (label + ".dot"), to_dot(r.scenario, n.graph, *model, label));
  }
  write_text_file(dir / "report.json", to_json(r).dump(2) + "\n");
}

// ---------------------------------------------------------- analyze-tables

std::optional<double> cost_from_filename(const std::string& path) {
  const std::string stem = std::filesystem::path(path).stem().string();
  const auto pos = stem.rfind("_c");
  if (pos == std::string::npos) return std::nullopt;
  const auto value = parse_double(stem.substr(pos + 2));
  if (!value || !std::isfinite(*value)) return std::nullopt;
  return value;
}

void require_complete(const UtilityMatrix& matrix) {
  const auto all = enumerate_structures(matrix.sp_count);
  if (matrix.rows.size() != all.size()) {
    throw std::invalid_argument("utility table has " + std::to_string(matrix.rows.size()) +
                                " rows; " + std::to_string(all.size()) + " structures expected for " +
                                std::to_string(matrix.sp_count) + " SPs");
  }
  for (const auto& w : all) {
    if (!matrix.find(w)) throw std::invalid_argument("utility table is missing " + w.to_string());
  }
}

TableAnalysis analyze_table(const std::string& name, const UtilityMatrix& matrix,
                            double coalition_cost, SplitRule rule, std::uint64_t seed) {
  require_complete(matrix);
  TableAnalysis t;
  t.name = name;
  t.coalition_cost = coalition_cost;
  t.matrix = matrix;
  t.structures = enumerate_structures(matrix.sp_count);
  for (const auto& row : matrix.rows) {
    double sum = 0.0;
    for (const double p : row.phi) sum += p;
    if (std::abs(sum - row.phi_total) > kAggregateTolerance) {
      t.aggregate_deviations.push_back(row.structure.to_string() + ": sum " + format_number(sum) +
                                       " vs total " + format_number(row.phi_total));
    }
  }
  const TableEvaluator eval(matrix);
  t.stable = stable_set(matrix.sp_count, eval, rule);
  for (const auto ordering : kPolicies) {
    PolicyAnalysis p;
    p.ordering = ordering;
    p.graph = transition_graph(matrix.sp_count, eval, rule, ordering);
    for (std::size_t k = 0; k < p.graph.states.size(); ++k) {
      p.reachable[k] = p.graph.reachable_absorbing(k);
    }
    EngineOptions opts;
    opts.ordering = ordering;
    opts.split_rule = rule;
    opts.seed = seed;
    p.final_from_singletons =
        run_coalition_formation(CoalitionStructure(matrix.sp_count), eval, opts).final_structure;
    t.policies.push_back(std::move(p));
  }
  return t;
}

CostLinearityCheck check_cost_linearity(const std::vector<TableAnalysis>& tables) {
  CostLinearityCheck c;
  std::vector<const TableAnalysis*> sorted;
  for (const auto& t : tables) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* a, const auto* b) { return a->coalition_cost < b->coalition_cost; });
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    const auto& lo = *sorted[k - 1];
    const auto& hi = *sorted[k];
    if (lo.matrix.sp_count != hi.matrix.sp_count) {
      c.holds = false;
      c.violations.push_back(lo.name + " and " + hi.name + " have different SP counts");
      continue;
    }
    const double dc = hi.coalition_cost - lo.coalition_cost;
    for (const auto& row : lo.matrix.rows) {
      const auto* other = hi.matrix.find(row.structure);
      if (!other) continue;
      for (SpId m = 1; m <= lo.matrix.sp_count; ++m) {
        const auto i = static_cast<std::size_t>(m - 1);
        const double expected = dc * coalition_cost_units(row.structure, m);
        const double dev = std::abs((row.phi[i] - other->phi[i]) - expected);
        ++c.comparisons;
        c.max_deviation = std::max(c.max_deviation, dev);
        if (dev > kLinearityTolerance) {
          c.holds = false;
          c.violations.push_back(row.structure.to_string() + " SP" + std::to_string(m) + ": " +
                                 lo.name + " - " + hi.name + " = " +
                                 format_number(row.phi[i] - other->phi[i]) + ", expected " +
                                 format_number(expected));
        }
      }
    }
  }
  return c;
}

Json to_json(const TableAnalysis& t) {
  Json j;
  j["table"] = t.name;
  j["coalition_cost"] = t.coalition_cost;
  j["rows"] = t.matrix.rows.size();
  j["aggregate_consistent"] = t.aggregate_deviations.empty();
  j["aggregate_deviations"] = t.aggregate_deviations;
  auto stable = Json::array();
  for (const auto& w : t.stable) stable.push_back(label_of(t.structures, w));
  j["stable_set"] = stable;
  auto policies = Json::array();
  for (const auto& p : t.policies) {
    Json pj;
    pj["move_ordering"] = std::string(to_string(p.ordering));
    pj["edges"] = p.graph.edges.size();
    pj["final_from_singletons"] = label_of(t.structures, p.final_from_singletons);
    Json reach = Json::object();
    for (const auto& [start, targets] : p.reachable) {
      auto list = Json::array();
      for (const auto k : targets) list.push_back(label_of(t.structures, p.graph.states[k]));
      reach[label_of(t.structures, p.graph.states[start])] = list;
    }
    pj["reachable_absorbing"] = reach;
    policies.push_back(pj);
  }
  j["policies"] = policies;
  return j;
}

Json to_json(const CostLinearityCheck& c) {
  return Json{{"holds", c.holds},
              {"comparisons", c.comparisons},
              {"max_deviation", c.max_deviation},
              {"violations", c.violations}};
}

void write_table_artifacts(const std::vector<TableAnalysis>& tables,
                           const CostLinearityCheck& linearity,
                           const std::filesystem::path& dir) {
  Json report;
  report["command"] = "analyze-tables";
  auto list = Json::array();
  for (const auto& t : tables) {
    list.push_back(to_json(t));
    const std::string stem = std::filesystem::path(t.name).stem().string();
    for (const auto& p : t.policies) {
      const std::string policy(to_string(p.ordering));
      write_text_file(dir / ("transitions_" + stem + "_" + policy + ".dot"),
                      to_dot(p.graph, stem + " " + policy));
    }
  }
  report["tables"] = list;
  report["cost_linearity"] = to_json(linearity);
  write_text_file(dir / "report.json", report.dump(2) + "\n");
}

// ----------------------------------------------------------- demand-change

NetworkGraph repair_after_flips(const Scenario& changed, const NetworkGraph& g,
                                const std::vector<TdId>& flipped) {
  NetworkGraph out = g;
  for (const TdId td : flipped) {
    if (const auto pred = out.predecessor(td)) {
      // The TD was relaying someone else's flow; that flow falls back to
      // its nearest BS and the relays behind the TD are released.
      release_chain(out, td);
      out.set_link(*pred, NodeRef::station(nearest_station(changed, *pred)));
    } else if (out.transmits(td)) {
      release_chain(out, td);
    }
  }
  for (const TdId td : flipped) {
    if (changed.td(td).is_source() && !out.transmits(td)) {
      if (const auto pred = out.predecessor(td)) {
        release_chain(out, td);
        out.set_link(*pred, NodeRef::station(nearest_station(changed, *pred)));
      }
      out.set_link(td, NodeRef::station(nearest_station(changed, td)));
    }
  }
  return out;
}

std::vector<LinkChange> diff_links(const NetworkGraph& before, const NetworkGraph& after) {
  std::set<TdId> tds;
  for (const auto& [td, next] : before.links()) tds.insert(td);
  for (const auto& [td, next] : after.links()) tds.insert(td);
  std::vector<LinkChange> out;
  for (const TdId td : tds) {
    const auto a = before.next_hop(td);
    const auto b = after.next_hop(td);
    if (a != b) out.push_back({td, a, b});
  }
  return out;
}

DemandChangeReport cmd_demand_change(const RunConfig& config, const std::vector<TdId>& flips) {
  DemandChangeReport r;
  r.baseline = cmd_simulate(config);
  r.flipped = flips;
  r.changed = r.baseline.scenario;
  for (const TdId td : flips) r.changed = toggle_source(r.changed, td);
  r.changed.validate();

  const auto& final_w = r.baseline.formation.final_structure;
  const auto settings = settings_for(config);
  r.before = r.baseline.network_of(final_w).graph;
  r.repaired = repair_after_flips(r.changed, r.before, flips);

  LinkFormationOptions opts;
  opts.model = &settings.throughput_model();
  opts.seed = Rng::split(settings.seed, "demand-change").next_u64();
  opts.max_rounds = settings.max_rounds;
  r.rerun = run_link_formation(r.changed, SharingRelation::from_structure(final_w), r.repaired, opts);
  r.diff = diff_links(r.before, r.rerun.graph);
  return r;
}

Json to_json(const DemandChangeReport& r) {
  Json j;
  j["command"] = "demand-change";
  j["config"] = to_json(r.baseline.config);
  j["seed"] = r.baseline.seed;
  j["structure"] = r.baseline.formation.final_structure.to_string();
  j["flipped"] = r.flipped;
  auto roles = Json::array();
  for (const TdId td : r.flipped) {
    roles.push_back(Json{{"td", td}, {"role", r.changed.td(td).is_source() ? "source" : "vacant"}});
  }
  j["new_roles"] = roles;
  j["iterations"] = r.rerun.iterations;
  j["rounds"] = r.rerun.rounds;
  j["moves"] = r.rerun.moves.size();
  auto diff = Json::array();
  for (const auto& c : r.diff) {
    diff.push_back(Json{{"td", to_string(NodeRef::device(c.td))},
                        {"before", c.before ? to_string(*c.before) : "none"},
                        {"after", c.after ? to_string(*c.after) : "none"}});
  }
  j["diff"] = diff;
  j["links_before"] = links_json(r.before);
  j["links_after"] = links_json(r.rerun.graph);
  return j;
}

void write_demand_change_artifacts(const DemandChangeReport& r, const std::filesystem::path& dir) {
  const auto model = make_throughput_model(r.baseline.config.throughput_model);
  write_text_file(dir / "network_before.dot",
                  to_dot(r.baseline.scenario, r.before, *model, "before"));
  write_text_file(dir / "network_after.dot", to_dot(r.changed, r.rerun.graph, *model, "after"));
  write_text_file(dir / "report.json", to_json(r).dump(2) + "\n");
}

// --------------------------------------------------------------- enumerate

EnumerationReport cmd_enumerate(int sp_count, int bound) {
  EnumerationReport r;
  r.sp_count = sp_count;
  r.structures = enumerate_structures(sp_count, bound);
  r.formula_count = structure_count_formula(sp_count);
  return r;
}

Json to_json(const EnumerationReport& r) {
  auto list = Json::array();
  for (const auto& w : r.structures) {
    list.push_back(Json{{"label", label_of(r.structures, w)}, {"structure", w.to_string()}});
  }
  return Json{{"command", "enumerate"},
              {"sp_count", r.sp_count},
              {"enumerated", r.structures.size()},
              {"formula_count", r.formula_count},
              {"structures", list}};
}

// ----------------------------------------------------------------- shapley

TuGame read_tu_game_csv(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::map<SpSet, double> seen;
  int players = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto comma = line.rfind(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected coalition,value");
    }
    const std::string lhs = trim(line.substr(0, comma));
    const std::string rhs = trim(line.substr(comma + 1));
    if (line_no == 1 && lhs == "coalition" && rhs == "value") continue;
    const auto value = parse_double(rhs);
    if (!value) throw std::invalid_argument("line " + std::to_string(line_no) + ": bad value '" + rhs + "'");
    SpSet t = 0;
    for (std::size_t i = 0; i < lhs.size();) {
      if (std::isdigit(static_cast<unsigned char>(lhs[i]))) {
        std::size_t j = i;
        while (j < lhs.size() && std::isdigit(static_cast<unsigned char>(lhs[j]))) ++j;
        const int id = std::stoi(lhs.substr(i, j - i));
        if (id < 1 || id > kShapleyPlayerCap) {
          throw std::invalid_argument("line " + std::to_string(line_no) + ": player " +
                                      std::to_string(id) + " outside 1.." +
                                      std::to_string(kShapleyPlayerCap));
        }
        t |= sp_bit(id);
        players = std::max(players, id);
        i = j;
      } else if (std::string_view("{}() ,;SPsp").find(lhs[i]) != std::string_view::npos) {
        ++i;
      } else {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": cannot parse coalition '" +
                                    lhs + "'");
      }
    }
    if (!seen.emplace(t, *value).second) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": duplicate coalition " +
                                  coalition_to_string(t));
    }
  }
  if (players == 0) throw std::invalid_argument("game has no players");
  std::vector<double> values(std::size_t{1} << players, 0.0);
  for (SpSet t = 1; t < (SpSet{1} << players); ++t) {
    const auto it = seen.find(t);
    if (it == seen.end()) throw std::invalid_argument("missing value for " + coalition_to_string(t));
    values[t] = it->second;
  }
  if (const auto it = seen.find(0); it != seen.end()) values[0] = it->second;
  return TuGame(players, std::move(values));
}

ShapleyReport cmd_shapley(const TuGame& game) {
  ShapleyReport r;
  r.players = game.players();
  const SpSet grand = (SpSet{1} << r.players) - 1;
  for (SpSet t = 0; t <= grand; ++t) r.values.push_back(game(t));
  r.phi = shapley(game.function(), grand);
  r.grand_value = game(grand);
  return r;
}

Json to_json(const ShapleyReport& r) {
  Json phi = Json::object();
  double sum = 0.0;
  for (const auto& [m, v] : r.phi) {
    phi[std::to_string(m)] = v;
    sum += v;
  }
  return Json{{"command", "shapley"},
              {"players", r.players},
              {"phi", phi},
              {"sum", sum},
              {"grand_value", r.grand_value}};
}

}  // namespace relaycoal
