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

#include "relaycoal/radio_channel.hpp"

#include <algorithm>
#include <cmath>

namespace relaycoal {

Position node_position(const Scenario& s, NodeRef n) {
  return n.is_station() ? s.bs(n.id).position : s.td(n.id).position;
}

double link_snr(const Scenario& s, TdId i, NodeRef j) {
  if (j.is_device() && j.id == i) throw std::invalid_argument("link endpoints must differ");
  const auto& src = s.td(i);
  const double d = distance(src.position, node_position(s, j));
  if (d == 0.0) {
    throw DegenerateGeometry("TD" + std::to_string(i) + " and " + to_string(j) +
                             " are colocated");
  }
  const auto& r = s.radio;
  return r.antenna_constant * src.tx_power / (std::pow(d, r.path_loss_exponent) * r.noise_power);
}

bool is_admissible(const Scenario& s, TdId i, NodeRef j) {
  return link_snr(s, i, j) >= s.radio.target_sinr;
}

double ShannonTddModel::rate(std::span<const double> link_snrs, const RadioParams&) const {
  if (link_snrs.empty()) return 0.0;
  const double bottleneck = *std::min_element(link_snrs.begin(), link_snrs.end());
  return std::log2(1.0 + bottleneck) / static_cast<double>(link_snrs.size());
}

double PacketSuccessModel::rate(std::span<const double> link_snrs, const RadioParams& radio) const {
  if (link_snrs.empty()) return 0.0;
  double delivered = 1.0;
  for (const double snr : link_snrs) {
    const double ber = 0.5 * std::erfc(std::sqrt(std::max(snr, 0.0)));
    delivered *= std::pow(1.0 - ber, radio.packet_info_bits);
  }
  const double payload = static_cast<double>(radio.packet_info_bits) / radio.packet_total_bits;
  return payload * delivered / static_cast<double>(link_snrs.size());
}

const ThroughputModel& default_throughput_model() {
  static const ShannonTddModel model;
  return model;
}

std::shared_ptr<const ThroughputModel> make_throughput_model(std::string_view name) {
  if (name == "shannon-tdd") return std::make_shared<ShannonTddModel>();
  if (name == "packet-success") return std::make_shared<PacketSuccessModel>();
  throw std::invalid_argument("unknown throughput model '" + std::string(name) + "'");
}

std::vector<double> path_snrs(const Scenario& s, const RelayPath& p) {
  std::vector<double> snrs;
  snrs.reserve(p.hops.size() + 1);
  TdId at = p.source;
  for (const TdId hop : p.hops) {
    snrs.push_back(link_snr(s, at, NodeRef::device(hop)));
    at = hop;
  }
  snrs.push_back(link_snr(s, at, NodeRef::station(p.terminal)));
  return snrs;
}

double path_throughput(const Scenario& s, const RelayPath& p, const ThroughputModel& model) {
  const auto snrs = path_snrs(s, p);
  for (std::size_t k = 0; k + 1 < snrs.size(); ++k) {
    if (snrs[k] < s.radio.target_sinr) {
      throw std::invalid_argument("relay path of TD" + std::to_string(p.source) +
                                  " has an inadmissible hop");
    }
  }
  return model.rate(snrs, s.radio);
}

double td_energy_cost(const Scenario& s, const NetworkGraph& g, SpId m) {
  double watts = 0.0;
  for (const auto& [from, to] : g.links()) {
    const auto& d = s.td(from);
    if (d.owner == m) watts += d.tx_power;
  }
  return s.econ.energy_cost_per_watt * watts;
}

}  // namespace relaycoal
