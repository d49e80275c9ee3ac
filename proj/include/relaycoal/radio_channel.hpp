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

#ifndef RELAYCOAL_RADIO_CHANNEL_HPP
#define RELAYCOAL_RADIO_CHANNEL_HPP

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "relaycoal/core_model.hpp"
#include "relaycoal/network_graph.hpp"

namespace relaycoal {

// Raised for colocated endpoints; a zero-length link means the scenario is
// malformed.
class DegenerateGeometry : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

Position node_position(const Scenario& s, NodeRef n);

// Noise-limited SNR of the link i -> j: beta * Q_i / (d^n * N0).
double link_snr(const Scenario& s, TdId i, NodeRef j);

bool is_admissible(const Scenario& s, TdId i, NodeRef j);

// Maps the per-link SNRs of a route to an end-to-end normalised throughput.
class ThroughputModel {
 public:
  virtual ~ThroughputModel() = default;
  virtual std::string_view name() const = 0;
  virtual double rate(std::span<const double> link_snrs, const RadioParams& radio) const = 0;
};

// Bottleneck Shannon rate shared over the hops in time: log2(1 + min snr) / h.
class ShannonTddModel final : public ThroughputModel {
 public:
  std::string_view name() const override { return "shannon-tdd"; }
  double rate(std::span<const double> link_snrs, const RadioParams& radio) const override;
};

// Packet delivery model: each hop succeeds with (1 - BER)^L (BPSK in AWGN),
// scaled by the payload fraction L / M_pkt and shared over h hops.
class PacketSuccessModel final : public ThroughputModel {
 public:
  std::string_view name() const override { return "packet-success"; }
  double rate(std::span<const double> link_snrs, const RadioParams& radio) const override;
};

const ThroughputModel& default_throughput_model();

// Throws std::invalid_argument for unknown names.
std::shared_ptr<const ThroughputModel> make_throughput_model(std::string_view name);

std::vector<double> path_snrs(const Scenario& s, const RelayPath& p);

// Throws std::invalid_argument if any TD -> TD hop is inadmissible. The last
// hop to the BS is the direct-link fallback and is never rejected.
double path_throughput(const Scenario& s, const RelayPath& p,
                       const ThroughputModel& model = default_throughput_model());

// energy_cost_per_watt * total tx power of SP m's TDs that transmit in G.
double td_energy_cost(const Scenario& s, const NetworkGraph& g, SpId m);

}  // namespace relaycoal

#endif  // RELAYCOAL_RADIO_CHANNEL_HPP
