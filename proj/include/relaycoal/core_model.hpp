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

#ifndef RELAYCOAL_CORE_MODEL_HPP
#define RELAYCOAL_CORE_MODEL_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace relaycoal {

// Identifiers are 1-based everywhere, matching how TDs, SPs and BSs are
// numbered in reports.
using TdId = int;
using SpId = int;
using BsId = int;

// Bitmask over SP ids; bit (m - 1) set means SP m is a member.
using SpSet = std::uint32_t;

inline constexpr int kMaxProviders = 32;

constexpr SpSet sp_bit(SpId m) { return SpSet{1} << (m - 1); }
constexpr bool contains(SpSet set, SpId m) { return (set & sp_bit(m)) != 0; }

std::vector<SpId> members_of(SpSet set);
SpSet set_of(const std::vector<SpId>& members);
int popcount(SpSet set);

struct Position {
  double x = 0.0;  // meters
  double y = 0.0;  // meters

  friend bool operator==(const Position&, const Position&) = default;
};

double distance(const Position& a, const Position& b);

// A vertex of the relay network: a TD or a BS. Stations order before
// devices, then by id; this is the tie-break order for equal payoffs.
struct NodeRef {
  enum class Kind : std::uint8_t { Station = 0, Device = 1 };
  Kind kind = Kind::Station;
  int id = 0;

  static constexpr NodeRef station(BsId id) { return {Kind::Station, id}; }
  static constexpr NodeRef device(TdId id) { return {Kind::Device, id}; }
  bool is_station() const { return kind == Kind::Station; }
  bool is_device() const { return kind == Kind::Device; }

  friend auto operator<=>(const NodeRef&, const NodeRef&) = default;
};

std::string to_string(const NodeRef& n);

struct BaseStation {
  BsId id = 0;
  Position position;

  friend bool operator==(const BaseStation&, const BaseStation&) = default;
};

enum class Role : std::uint8_t { Source, Vacant };

struct TerminalDevice {
  TdId id = 0;
  SpId owner = 0;
  Position position;
  Role role = Role::Vacant;
  double tx_power = 0.0;  // watts

  bool is_source() const { return role == Role::Source; }
  friend bool operator==(const TerminalDevice&, const TerminalDevice&) = default;
};

struct ServiceProvider {
  SpId id = 0;
  std::vector<TdId> td_ids;

  friend bool operator==(const ServiceProvider&, const ServiceProvider&) = default;
};

struct RadioParams {
  double path_loss_exponent = 4.0;
  double antenna_constant = 62.5;
  double noise_power = 1e-12;  // watts
  double target_sinr = 10.0;   // linear
  int packet_info_bits = 100;
  int packet_total_bits = 100;

  friend bool operator==(const RadioParams&, const RadioParams&) = default;
};

struct EconomicParams {
  double revenue_per_unit_throughput = 120.0;
  double energy_cost_per_watt = 500.0;
  double coalition_cost = 5.0;

  friend bool operator==(const EconomicParams&, const EconomicParams&) = default;
};

struct Area {
  double width = 2000.0;   // meters
  double height = 1000.0;  // meters

  friend bool operator==(const Area&, const Area&) = default;
};

// Static world. Immutable once built; every mutator returns a new value.
struct Scenario {
  std::vector<ServiceProvider> providers;  // index m - 1
  std::vector<TerminalDevice> devices;     // index id - 1
  std::vector<BaseStation> stations;       // index id - 1
  RadioParams radio;
  EconomicParams econ;
  Area area;
  std::uint64_t rng_seed = 0;

  int sp_count() const { return static_cast<int>(providers.size()); }
  int td_count() const { return static_cast<int>(devices.size()); }
  int bs_count() const { return static_cast<int>(stations.size()); }

  const TerminalDevice& td(TdId id) const;
  const BaseStation& bs(BsId id) const;
  const ServiceProvider& sp(SpId id) const;
  bool has_td(TdId id) const { return id >= 1 && id <= td_count(); }

  SpSet all_providers() const;
  std::vector<TdId> sources() const;
  int source_count() const;

  // Throws std::invalid_argument describing the first violated invariant.
  void validate() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Generation recipe for a random world.
struct ScenarioSpec {
  int providers = 3;
  int stations = 2;
  std::vector<int> tds_per_sp;      // one entry per SP
  std::vector<int> sources_per_sp;  // one entry per SP
  Area area;
  // Explicit BS sites; when empty, stations are spread along the horizontal
  // centre line at ((k - 0.5) * width / B, height / 2).
  std::vector<Position> station_positions;
  double tx_power = 0.01;  // watts, identical for every TD
  RadioParams radio;
  EconomicParams econ;
};

Scenario generate_scenario(const ScenarioSpec& spec, std::uint64_t seed);

// Flips Vacant <-> Source for one TD.
Scenario toggle_source(const Scenario& s, TdId td_id);

}  // namespace relaycoal

#endif  // RELAYCOAL_CORE_MODEL_HPP
