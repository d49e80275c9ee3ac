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

#include "relaycoal/core_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "relaycoal/rng.hpp"

namespace relaycoal {

std::vector<SpId> members_of(SpSet set) {
  std::vector<SpId> out;
  for (SpId m = 1; set != 0; ++m, set >>= 1) {
    if (set & 1U) out.push_back(m);
  }
  return out;
}

SpSet set_of(const std::vector<SpId>& members) {
  SpSet set = 0;
  for (const SpId m : members) {
    if (m < 1 || m > kMaxProviders) {
      throw std::invalid_argument("SP id out of range: " + std::to_string(m));
    }
    set |= sp_bit(m);
  }
  return set;
}

int popcount(SpSet set) { return std::popcount(set); }

double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

std::string to_string(const NodeRef& n) {
  return (n.is_station() ? "BS" : "TD") + std::to_string(n.id);
}

const TerminalDevice& Scenario::td(TdId id) const {
  if (!has_td(id)) throw std::out_of_range("unknown TD id " + std::to_string(id));
  return devices[static_cast<std::size_t>(id - 1)];
}

const BaseStation& Scenario::bs(BsId id) const {
  if (id < 1 || id > bs_count()) {
    throw std::out_of_range("unknown BS id " + std::to_string(id));
  }
  return stations[static_cast<std::size_t>(id - 1)];
}

const ServiceProvider& Scenario::sp(SpId id) const {
  if (id < 1 || id > sp_count()) {
    throw std::out_of_range("unknown SP id " + std::to_string(id));
  }
  return providers[static_cast<std::size_t>(id - 1)];
}

SpSet Scenario::all_providers() const {
  const int m = sp_count();
  return m >= 32 ? ~SpSet{0} : (SpSet{1} << m) - 1;
}

std::vector<TdId> Scenario::sources() const {
  std::vector<TdId> out;
  for (const auto& d : devices) {
    if (d.is_source()) out.push_back(d.id);
  }
  return out;
}

int Scenario::source_count() const {
  return static_cast<int>(std::count_if(devices.begin(), devices.end(),
                                        [](const auto& d) { return d.is_source(); }));
}

void Scenario::validate() const {
  if (providers.empty()) throw std::invalid_argument("scenario has no service providers");
  if (stations.empty()) throw std::invalid_argument("scenario has no base stations");
  if (sp_count() > kMaxProviders) {
    throw std::invalid_argument("too many service providers (max 32)");
  }
  const auto& r = radio;
  if (!(r.path_loss_exponent >= 2.0)) throw std::invalid_argument("path loss exponent must be >= 2");
  if (!(r.antenna_constant > 0.0)) throw std::invalid_argument("antenna constant must be > 0");
  if (!(r.noise_power > 0.0)) throw std::invalid_argument("noise power must be > 0");
  if (!(r.target_sinr > 0.0)) throw std::invalid_argument("target SINR must be > 0");
  if (r.packet_info_bits <= 0 || r.packet_info_bits > r.packet_total_bits) {
    throw std::invalid_argument("packet bits must satisfy 0 < info <= total");
  }
  if (econ.revenue_per_unit_throughput < 0 || econ.energy_cost_per_watt < 0 ||
      econ.coalition_cost < 0) {
    throw std::invalid_argument("economic parameters must be non-negative");
  }
  auto in_area = [&](const Position& p) {
    return std::isfinite(p.x) && std::isfinite(p.y) && p.x >= 0 && p.x <= area.width &&
           p.y >= 0 && p.y <= area.height;
  };
  for (std::size_t k = 0; k < stations.size(); ++k) {
    if (stations[k].id != static_cast<BsId>(k + 1)) throw std::invalid_argument("BS ids must be 1..B");
    if (!in_area(stations[k].position)) throw std::invalid_argument("BS outside area");
  }
  std::set<TdId> owned;
  for (std::size_t k = 0; k < providers.size(); ++k) {
    const auto& p = providers[k];
    if (p.id != static_cast<SpId>(k + 1)) throw std::invalid_argument("SP ids must be 1..M");
    for (const TdId t : p.td_ids) {
      if (!has_td(t)) throw std::invalid_argument("SP lists unknown TD " + std::to_string(t));
      if (!owned.insert(t).second) {
        throw std::invalid_argument("TD " + std::to_string(t) + " owned twice");
      }
      if (td(t).owner != p.id) throw std::invalid_argument("TD owner mismatch");
    }
  }
  if (owned.size() != devices.size()) {
    throw std::invalid_argument("SP TD lists do not partition the TD set");
  }
  for (std::size_t k = 0; k < devices.size(); ++k) {
    const auto& d = devices[k];
    if (d.id != static_cast<TdId>(k + 1)) throw std::invalid_argument("TD ids must be 1..N");
    if (!(d.tx_power > 0.0)) throw std::invalid_argument("TD tx power must be > 0");
    if (!in_area(d.position)) throw std::invalid_argument("TD outside area");
  }
}

Scenario generate_scenario(const ScenarioSpec& spec, std::uint64_t seed) {
  if (spec.providers < 1) throw std::invalid_argument("need at least one SP");
  if (spec.providers > kMaxProviders) throw std::invalid_argument("too many SPs (max 32)");
  if (spec.stations < 1) throw std::invalid_argument("need at least one BS");
  const auto m_count = static_cast<std::size_t>(spec.providers);
  if (spec.tds_per_sp.size() != m_count || spec.sources_per_sp.size() != m_count) {
    throw std::invalid_argument("tds_per_sp and sources_per_sp need one entry per SP");
  }
  int total_tds = 0;
  for (std::size_t m = 0; m < m_count; ++m) {
    if (spec.tds_per_sp[m] < 0 || spec.sources_per_sp[m] < 0) {
      throw std::invalid_argument("TD counts must be non-negative");
    }
    if (spec.sources_per_sp[m] > spec.tds_per_sp[m]) {
      throw std::invalid_argument("SP " + std::to_string(m + 1) +
                                  ": source count exceeds TD count");
    }
    total_tds += spec.tds_per_sp[m];
  }
  if (total_tds == 0) throw std::invalid_argument("scenario needs at least one TD");
  if (!spec.station_positions.empty() &&
      spec.station_positions.size() != static_cast<std::size_t>(spec.stations)) {
    throw std::invalid_argument("station_positions must list every BS");
  }

  Scenario s;
  s.radio = spec.radio;
  s.econ = spec.econ;
  s.area = spec.area;
  s.rng_seed = seed;

  for (int b = 1; b <= spec.stations; ++b) {
    Position p = spec.station_positions.empty()
                     ? Position{(b - 0.5) * spec.area.width / spec.stations, spec.area.height / 2}
                     : spec.station_positions[static_cast<std::size_t>(b - 1)];
    s.stations.push_back({b, p});
  }

  Rng placement = Rng::split(seed, "placement");
  Rng demand = Rng::split(seed, "demand");
  TdId next_id = 1;
  for (SpId m = 1; m <= spec.providers; ++m) {
    ServiceProvider sp{m, {}};
    const int n = spec.tds_per_sp[static_cast<std::size_t>(m - 1)];
    for (int k = 0; k < n; ++k) {
      TerminalDevice d;
      d.id = next_id++;
      d.owner = m;
      d.position.x = placement.uniform(0.0, spec.area.width);
      d.position.y = placement.uniform(0.0, spec.area.height);
      d.tx_power = spec.tx_power;
      s.devices.push_back(d);
      sp.td_ids.push_back(d.id);
    }
    // Sources: first k entries of a seeded permutation of the SP's TDs.
    std::vector<TdId> pool = sp.td_ids;
    demand.shuffle(std::span<TdId>(pool));
    const int k_src = spec.sources_per_sp[static_cast<std::size_t>(m - 1)];
    for (int k = 0; k < k_src; ++k) {
      s.devices[static_cast<std::size_t>(pool[static_cast<std::size_t>(k)] - 1)].role = Role::Source;
    }
    s.providers.push_back(std::move(sp));
  }
  s.validate();
  return s;
}

Scenario toggle_source(const Scenario& s, TdId td_id) {
  if (!s.has_td(td_id)) {
    throw std::invalid_argument("unknown TD id " + std::to_string(td_id));
  }
  Scenario out = s;
  auto& d = out.devices[static_cast<std::size_t>(td_id - 1)];
  d.role = d.is_source() ? Role::Vacant : Role::Source;
  return out;
}

}  // namespace relaycoal
