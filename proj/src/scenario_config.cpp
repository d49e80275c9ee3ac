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

#include "relaycoal/scenario_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace relaycoal {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw std::invalid_argument("config key '" + key + "': " + why);
}

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& known) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) bad(where.empty() ? key : where + "." + key, "unknown key");
  }
}

double number(const json& obj, const std::string& key, const std::string& where, double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) bad(where + key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad(where + key, "must be finite");
  return d;
}

int integer(const json& obj, const std::string& key, const std::string& where, int fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) bad(where + key, "expected an integer");
  return v.get<int>();
}

std::vector<int> per_sp(const json& obj, const std::string& key, int providers) {
  if (!obj.contains(key)) bad(key, "required");
  const auto& v = obj.at(key);
  if (v.is_number_integer()) return std::vector<int>(static_cast<std::size_t>(providers), v.get<int>());
  if (!v.is_array() || v.size() != static_cast<std::size_t>(providers)) {
    bad(key, "expected an integer or one integer per SP");
  }
  std::vector<int> out;
  for (const auto& x : v) {
    if (!x.is_number_integer()) bad(key, "expected integers");
    out.push_back(x.get<int>());
  }
  return out;
}

std::string text(const json& obj, const std::string& key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_string()) bad(key, "expected a string");
  return obj.at(key).get<std::string>();
}

}  // namespace

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::uint64_t RunConfig::require_seed() const {
  if (!seed) throw std::invalid_argument("a seed is required (config 'seed' or --seed)");
  return *seed;
}

RunConfig parse_run_config(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  reject_unknown(j, "",
                 {"service_providers", "tds_per_sp", "sources_per_sp", "base_stations", "area_m",
                  "radio", "economics", "throughput_model", "move_ordering", "split_rule",
                  "initial_structure", "seed", "max_link_rounds"});
  RunConfig c;
  auto& spec = c.spec;
  spec.providers = integer(j, "service_providers", "", 0);
  if (spec.providers < 1 || spec.providers > kMaxProviders) bad("service_providers", "must be in 1..32");
  spec.tds_per_sp = per_sp(j, "tds_per_sp", spec.providers);
  spec.sources_per_sp = per_sp(j, "sources_per_sp", spec.providers);

  if (j.contains("area_m")) {
    const auto& a = j.at("area_m");
    if (!a.is_object()) bad("area_m", "expected an object");
    reject_unknown(a, "area_m", {"width", "height"});
    spec.area.width = number(a, "width", "area_m.", spec.area.width);
    spec.area.height = number(a, "height", "area_m.", spec.area.height);
    if (!(spec.area.width > 0 && spec.area.height > 0)) bad("area_m", "dimensions must be > 0");
  }

  if (j.contains("base_stations")) {
    const auto& b = j.at("base_stations");
    if (b.is_number_integer()) {
      spec.stations = b.get<int>();
    } else if (b.is_array()) {
      spec.stations = static_cast<int>(b.size());
      for (const auto& p : b) {
        if (!p.is_object()) bad("base_stations", "expected {\"x_m\", \"y_m\"} objects");
        reject_unknown(p, "base_stations[]", {"x_m", "y_m"});
        if (!p.contains("x_m") || !p.contains("y_m")) bad("base_stations", "need x_m and y_m");
        spec.station_positions.push_back(
            {number(p, "x_m", "base_stations.", 0), number(p, "y_m", "base_stations.", 0)});
      }
    } else {
      bad("base_stations", "expected a count or a list of positions");
    }
  }

  if (j.contains("radio")) {
    const auto& r = j.at("radio");
    if (!r.is_object()) bad("radio", "expected an object");
    reject_unknown(r, "radio",
                   {"tx_power_mw", "noise_dbm", "target_sinr_db", "path_loss_exponent",
                    "antenna_constant", "packet_info_bits", "packet_total_bits"});
    spec.tx_power = number(r, "tx_power_mw", "radio.", spec.tx_power * 1e3) * 1e-3;
    if (r.contains("noise_dbm")) spec.radio.noise_power = dbm_to_watts(number(r, "noise_dbm", "radio.", 0));
    if (r.contains("target_sinr_db")) {
      spec.radio.target_sinr = db_to_linear(number(r, "target_sinr_db", "radio.", 0));
    }
    spec.radio.path_loss_exponent =
        number(r, "path_loss_exponent", "radio.", spec.radio.path_loss_exponent);
    spec.radio.antenna_constant = number(r, "antenna_constant", "radio.", spec.radio.antenna_constant);
    spec.radio.packet_info_bits = integer(r, "packet_info_bits", "radio.", spec.radio.packet_info_bits);
    spec.radio.packet_total_bits =
        integer(r, "packet_total_bits", "radio.", spec.radio.packet_total_bits);
  }

  if (j.contains("economics")) {
    const auto& e = j.at("economics");
    if (!e.is_object()) bad("economics", "expected an object");
    reject_unknown(e, "economics", {"revenue_per_kbps", "energy_cost_per_watt", "coalition_cost"});
    spec.econ.revenue_per_unit_throughput =
        number(e, "revenue_per_kbps", "economics.", spec.econ.revenue_per_unit_throughput);
    spec.econ.energy_cost_per_watt =
        number(e, "energy_cost_per_watt", "economics.", spec.econ.energy_cost_per_watt);
    spec.econ.coalition_cost = number(e, "coalition_cost", "economics.", spec.econ.coalition_cost);
  }

  c.throughput_model = text(j, "throughput_model", c.throughput_model);
  c.ordering = parse_move_ordering(text(j, "move_ordering", std::string(to_string(c.ordering))));
  c.split_rule = parse_split_rule(text(j, "split_rule", std::string(to_string(c.split_rule))));
  c.initial_structure = text(j, "initial_structure", c.initial_structure);
  c.max_link_rounds = integer(j, "max_link_rounds", "", 0);
  if (j.contains("seed")) {
    const auto& s = j.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      bad("seed", "expected a non-negative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config " + path);
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return parse_run_config(j);
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  const auto& spec = c.spec;
  j["service_providers"] = spec.providers;
  j["tds_per_sp"] = spec.tds_per_sp;
  j["sources_per_sp"] = spec.sources_per_sp;
  if (spec.station_positions.empty()) {
    j["base_stations"] = spec.stations;
  } else {
    auto list = nlohmann::ordered_json::array();
    for (const auto& p : spec.station_positions) list.push_back({{"x_m", p.x}, {"y_m", p.y}});
    j["base_stations"] = list;
  }
  j["area_m"] = {{"width", spec.area.width}, {"height", spec.area.height}};
  j["radio"] = {{"tx_power_mw", spec.tx_power * 1e3},
                {"noise_dbm", 10.0 * std::log10(spec.radio.noise_power) + 30.0},
                {"target_sinr_db", 10.0 * std::log10(spec.radio.target_sinr)},
                {"path_loss_exponent", spec.radio.path_loss_exponent},
                {"antenna_constant", spec.radio.antenna_constant},
                {"packet_info_bits", spec.radio.packet_info_bits},
                {"packet_total_bits", spec.radio.packet_total_bits}};
  j["economics"] = {{"revenue_per_kbps", spec.econ.revenue_per_unit_throughput},
                    {"energy_cost_per_watt", spec.econ.energy_cost_per_watt},
                    {"coalition_cost", spec.econ.coalition_cost}};
  j["throughput_model"] = c.throughput_model;
  j["move_ordering"] = std::string(to_string(c.ordering));
  j["split_rule"] = std::string(to_string(c.split_rule));
  j["initial_structure"] = c.initial_structure;
  if (c.max_link_rounds > 0) j["max_link_rounds"] = c.max_link_rounds;
  if (c.seed) j["seed"] = *c.seed;
  return j;
}

}  // namespace relaycoal
