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

#ifndef RELAYCOAL_LINK_FORMATION_HPP
#define RELAYCOAL_LINK_FORMATION_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relaycoal/coalition_structure.hpp"
#include "relaycoal/core_model.hpp"
#include "relaycoal/network_graph.hpp"
#include "relaycoal/radio_channel.hpp"

namespace relaycoal {

// Which SPs take part in a link-formation run and whose vacant TDs each
// SP's flows may use. Derived from a coalition structure (everyone present,
// partners = coalition mates) or from a single coalition evaluated alone.
class SharingRelation {
 public:
  static SharingRelation from_structure(const CoalitionStructure& w);
  static SharingRelation within(SpSet members, int sp_count);

  bool present(SpId m) const { return contains(present_, m); }
  // True when flows of `flow_owner` may be relayed by TDs of `relay_owner`.
  bool shares(SpId flow_owner, SpId relay_owner) const;
  SpSet present_set() const { return present_; }

 private:
  SpSet present_ = 0;
  std::vector<SpSet> partners_;  // index m - 1, includes m
};

// Absolute slack for "strictly better" payoff comparisons.
inline constexpr double kPayoffEpsilon = 1e-12;

// A link proposal by a transmitting TD together with the payoffs that
// justify it.
struct Strategy {
  TdId actor = 0;
  NodeRef target;
  double payoff_before = 0.0;  // end-to-end throughput of the actor's flow
  double payoff_after = 0.0;
  // Set when `target` is a relay currently serving another TD, which loses it.
  std::optional<TdId> incumbent;
  // v(i u j) - v(i) for the proposer and v(k u j) - v(k) for the incumbent;
  // v(x) is x's flow throughput over its best direct BS link.
  double proposer_increment = 0.0;
  double incumbent_increment = 0.0;
};

struct LinkFormationOptions {
  const ThroughputModel* model = nullptr;  // nullptr selects the default model
  std::uint64_t seed = 0;
  int max_rounds = 0;  // 0 selects 10 * (TDs in play)
};

struct LinkFormationResult {
  NetworkGraph graph;
  int iterations = 1;  // rounds that changed the graph, at least 1
  int rounds = 0;      // rounds executed, including the final quiet one
  std::vector<Strategy> moves;
  std::vector<TdId> displaced;  // TD displaced by each move, 0 when none
};

class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Star network: every present source linked to its nearest BS (lower id on
// ties).
NetworkGraph initial_star(const Scenario& s);
NetworkGraph initial_star(const Scenario& s, SpSet present);

// End-to-end throughput of the flow `td` transmits for; 0 if it is idle.
double flow_throughput(const Scenario& s, const NetworkGraph& g, TdId td,
                       const ThroughputModel& model = default_throughput_model());

// Throughput a relay adds to the flow it serves, relative to its
// predecessor's best direct BS link; 0 for sources and idle TDs.
double relay_increment(const Scenario& s, const NetworkGraph& g, TdId relay,
                       const ThroughputModel& model = default_throughput_model());

// Next-hop candidates for a transmitting TD, ascending: every BS, then each
// vacant TD of a sharing SP that is in range and outside the actor's own
// flow. Relays already serving another flow stay listed (replacement).
std::vector<NodeRef> action_space(const Scenario& s, const NetworkGraph& g,
                                  const SharingRelation& sharing, TdId i);

// Feasibility and payoff of one proposal; nullopt when the target would not
// accept it or the link is outside the action space.
std::optional<Strategy> evaluate_strategy(const Scenario& s, const NetworkGraph& g,
                                          const SharingRelation& sharing, TdId i,
                                          NodeRef target,
                                          const ThroughputModel& model = default_throughput_model());

// Best feasible strategy if it strictly improves i's payoff.
std::optional<Strategy> best_response(const Scenario& s, const NetworkGraph& g,
                                      const SharingRelation& sharing, TdId i,
                                      const ThroughputModel& model = default_throughput_model());

// Applies a strategy produced for `g`. The actor's old downstream relays are
// released; a displaced incumbent falls back to its best direct BS link and
// is returned.
std::optional<TdId> apply_strategy(const Scenario& s, NetworkGraph& g, const Strategy& move,
                                   const ThroughputModel& model = default_throughput_model());

// Iterated myopic best response in seeded random order until a full round
// makes no move. Throws NonConvergence past the round cap and
// std::invalid_argument for an invalid starting graph.
LinkFormationResult run_link_formation(const Scenario& s, const SharingRelation& sharing,
                                       const NetworkGraph& start,
                                       const LinkFormationOptions& options = {});

// No transmitting TD has a feasible strictly improving strategy.
bool verify_nash(const Scenario& s, const SharingRelation& sharing, const NetworkGraph& g,
                 const ThroughputModel& model = default_throughput_model());

std::string to_dot(const Scenario& s, const NetworkGraph& g,
                   const ThroughputModel& model = default_throughput_model(),
                   const std::string& name = "network");

}  // namespace relaycoal

#endif  // RELAYCOAL_LINK_FORMATION_HPP
