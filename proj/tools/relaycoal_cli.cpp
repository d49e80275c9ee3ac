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

// relaycoal: command-line front end.
//
//   relaycoal simulate CONFIG.json [--seed N] [--out DIR] ...
//   relaycoal analyze-tables data/tables_c5.csv data/tables_c15.csv ...
//   relaycoal demand-change CONFIG.json --flip 10,22,27 --seed N
//   relaycoal enumerate --sps 3
//   relaycoal shapley GAME.csv

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relaycoal/commands.hpp"

namespace {

using relaycoal::Json;

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::optional<double> coalition_cost;
  std::string throughput_model;
  std::string move_ordering;
  std::string split_rule;
  std::string initial_structure;
  std::string out;
};

void add_model_flags(CLI::App* app, CommonFlags& f) {
  app->add_option("--seed", f.seed, "RNG seed (overrides the config)");
  app->add_option("--coalition-cost", f.coalition_cost, "Cost C per coalition partner");
  app->add_option("--throughput-model", f.throughput_model, "shannon-tdd | packet-success");
  app->add_option("--move-ordering", f.move_ordering,
                  "best-improvement | first-improvement | random-seeded");
  app->add_option("--split-rule", f.split_rule, "strict | weak");
  app->add_option("--initial-structure", f.initial_structure, "Starting structure, e.g. \"{(1,2)}\"");
  app->add_option("--out", f.out, "Directory for CSV, DOT and JSON outputs");
}

relaycoal::RunConfig load(const std::string& path, const CommonFlags& f) {
  auto config = relaycoal::load_run_config(path);
  if (f.seed) config.seed = *f.seed;
  if (f.coalition_cost) config.spec.econ.coalition_cost = *f.coalition_cost;
  if (!f.throughput_model.empty()) config.throughput_model = f.throughput_model;
  if (!f.move_ordering.empty()) config.ordering = relaycoal::parse_move_ordering(f.move_ordering);
  if (!f.split_rule.empty()) config.split_rule = relaycoal::parse_split_rule(f.split_rule);
  if (!f.initial_structure.empty()) config.initial_structure = f.initial_structure;
  return config;
}

void emit(const Json& report, const std::string& out) {
  if (out.empty()) std::cout << report.dump(2) << "\n";
}

class Stopwatch {
 public:
  explicit Stopwatch(std::string what) : what_(std::move(what)) {}
  ~Stopwatch() {
    const auto s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::cerr << what_ << " took " << s << " s\n";
  }

 private:
  std::string what_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<relaycoal::TdId> parse_flips(const std::string& text) {
  std::vector<relaycoal::TdId> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) out.push_back(std::stoi(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coalition formation among service providers sharing relay devices"};
  app.require_subcommand(1);

  CommonFlags sim_flags;
  std::string sim_config;
  auto* simulate = app.add_subcommand("simulate", "Generate a scenario and run both games");
  simulate->add_option("config", sim_config, "Scenario JSON")->required()->check(CLI::ExistingFile);
  add_model_flags(simulate, sim_flags);

  std::vector<std::string> tables;
  std::vector<double> table_costs;
  std::string table_rule = "strict";
  std::string table_out;
  std::uint64_t table_seed = 0;
  auto* analyze = app.add_subcommand("analyze-tables", "Analyze fixed utility tables");
  analyze->add_option("tables", tables, "Utility CSV files")->required()->check(CLI::ExistingFile);
  analyze->add_option("--coalition-cost", table_costs,
                      "Cost C per table, in order; otherwise read from a _c<C> file suffix");
  analyze->add_option("--split-rule", table_rule, "strict | weak");
  analyze->add_option("--seed", table_seed, "Seed for the random-seeded policy");
  analyze->add_option("--out", table_out, "Directory for DOT and JSON outputs");

  CommonFlags dc_flags;
  std::string dc_config;
  std::string dc_flip;
  auto* demand = app.add_subcommand("demand-change", "Flip TD roles and re-run link formation");
  demand->add_option("config", dc_config, "Scenario JSON")->required()->check(CLI::ExistingFile);
  demand->add_option("--flip", dc_flip, "Comma-separated TD ids whose role flips");
  add_model_flags(demand, dc_flags);

  int enum_sps = 3;
  int enum_bound = relaycoal::kDefaultEnumerationBound;
  std::string enum_out;
  auto* enumerate = app.add_subcommand("enumerate", "List coalition structures");
  enumerate->add_option("--sps", enum_sps, "Number of SPs")->check(CLI::PositiveNumber);
  enumerate->add_option("--bound", enum_bound, "Largest SP count to enumerate");
  enumerate->add_option("--out", enum_out, "Directory for the JSON report");

  std::string game_path;
  std::string shapley_out;
  auto* shapley = app.add_subcommand("shapley", "Shapley value of a TU game");
  shapley->add_option("game", game_path, "CSV with coalition,value rows")
      ->required()
      ->check(CLI::ExistingFile);
  shapley->add_option("--out", shapley_out, "Directory for the JSON report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      const auto config = load(sim_config, sim_flags);
      std::optional<relaycoal::SimulateReport> report;
      {
        Stopwatch timer("simulate");
        report = relaycoal::cmd_simulate(config);
      }
      if (!sim_flags.out.empty()) relaycoal::write_simulate_artifacts(*report, sim_flags.out);
      const auto j = relaycoal::to_json(*report);
      emit(j, sim_flags.out);
      std::cerr << "final structure " << report->formation.final_structure.to_string() << "\n";
    } else if (*analyze) {
      if (!table_costs.empty() && table_costs.size() != tables.size()) {
        throw std::invalid_argument("give one --coalition-cost per table");
      }
      const auto rule = relaycoal::parse_split_rule(table_rule);
      std::vector<relaycoal::TableAnalysis> results;
      for (std::size_t k = 0; k < tables.size(); ++k) {
        std::optional<double> cost;
        if (!table_costs.empty()) cost = table_costs[k];
        else cost = relaycoal::cost_from_filename(tables[k]);
        if (!cost) {
          throw std::invalid_argument(tables[k] +
                                      ": coalition cost unknown; pass --coalition-cost or name "
                                      "the file *_c<cost>.csv");
        }
        const auto matrix = relaycoal::read_utility_csv_file(tables[k]);
        results.push_back(relaycoal::analyze_table(tables[k], matrix, *cost, rule, table_seed));
      }
      const auto linearity = relaycoal::check_cost_linearity(results);
      if (!table_out.empty()) relaycoal::write_table_artifacts(results, linearity, table_out);
      Json j;
      j["command"] = "analyze-tables";
      auto list = Json::array();
      for (const auto& t : results) list.push_back(relaycoal::to_json(t));
      j["tables"] = list;
      j["cost_linearity"] = relaycoal::to_json(linearity);
      emit(j, table_out);
      for (const auto& t : results) {
        std::cerr << t.name << ": stable set";
        for (const auto& w : t.stable) std::cerr << ' ' << relaycoal::structure_label(t.structures, w);
        std::cerr << "\n";
      }
    } else if (*demand) {
      const auto config = load(dc_config, dc_flags);
      std::optional<relaycoal::DemandChangeReport> report;
      {
        Stopwatch timer("demand-change");
        report = relaycoal::cmd_demand_change(config, parse_flips(dc_flip));
      }
      if (!dc_flags.out.empty()) relaycoal::write_demand_change_artifacts(*report, dc_flags.out);
      emit(relaycoal::to_json(*report), dc_flags.out);
      std::cerr << report->diff.size() << " link(s) changed in " << report->rerun.iterations
                << " iteration(s)\n";
    } else if (*enumerate) {
      const auto report = relaycoal::cmd_enumerate(enum_sps, enum_bound);
      for (std::size_t k = 0; k < report.structures.size(); ++k) {
        std::cout << 'w' << k + 1 << ' ' << report.structures[k].to_string() << "\n";
      }
      std::cout << "enumerated " << report.structures.size() << ", formula count "
                << report.formula_count << "\n";
      if (!enum_out.empty()) {
        relaycoal::write_text_file(std::filesystem::path(enum_out) / "report.json",
                                   relaycoal::to_json(report).dump(2) + "\n");
      }
    } else if (*shapley) {
      std::ifstream in(game_path);
      const auto report = relaycoal::cmd_shapley(relaycoal::read_tu_game_csv(in));
      const auto j = relaycoal::to_json(report);
      if (!shapley_out.empty()) {
        relaycoal::write_text_file(std::filesystem::path(shapley_out) / "report.json",
                                   j.dump(2) + "\n");
      }
      std::cout << j.dump(2) << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
