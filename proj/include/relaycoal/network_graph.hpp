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

#ifndef RELAYCOAL_NETWORK_GRAPH_HPP
#define RELAYCOAL_NETWORK_GRAPH_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relaycoal/core_model.hpp"

namespace relaycoal {

// Uplink route of one source: source -> hops... -> terminal BS. `hops` are
// the relaying TDs only, so a direct link has an empty hop list.
struct RelayPath {
  TdId source = 0;
  std::vector<TdId> hops;
  BsId terminal = 0;

  int link_count() const { return static_cast<int>(hops.size()) + 1; }
  friend bool operator==(const RelayPath&, const RelayPath&) = default;
};

// Directed relay links i -> j (i a TD, j a TD or BS). Every TD has at most
// one outgoing link and, since a vacant TD relays for a single TD, at most
// one incoming link; the graph is therefore a set of disjoint chains.
class NetworkGraph {
 public:
  void set_link(TdId from, NodeRef to);
  void remove_link(TdId from);

  std::optional<NodeRef> next_hop(TdId td) const;
  std::optional<TdId> predecessor(TdId td) const;
  bool transmits(TdId td) const { return next_.contains(td); }

  const std::map<TdId, NodeRef>& links() const { return next_; }
  std::size_t size() const { return next_.size(); }
  bool empty() const { return next_.empty(); }

  // Walks the chain starting at `source`. Throws std::logic_error if the
  // chain is broken or cyclic.
  RelayPath path_from(TdId source) const;

  // Source TD of the flow that `td` transmits for, if any.
  std::optional<TdId> flow_source(TdId td) const;

  // Human-readable violations of the structural invariants against `s`:
  // degree bounds, no cycles, every source reaches a BS, no dangling relays,
  // relay (TD -> TD) links admissible.
  std::vector<std::string> violations(const Scenario& s) const;
  // Only SPs in `present` take part; their sources must all be linked and
  // devices of other SPs must stay silent.
  std::vector<std::string> violations(const Scenario& s, SpSet present) const;
  bool is_valid(const Scenario& s) const { return violations(s).empty(); }

  friend bool operator==(const NetworkGraph& a, const NetworkGraph& b) {
    return a.next_ == b.next_;
  }
  friend bool operator<(const NetworkGraph& a, const NetworkGraph& b) {
    return a.next_ < b.next_;
  }

 private:
  std::map<TdId, NodeRef> next_;
  std::map<TdId, TdId> prev_;  // relay TD -> the TD sending to it
};

}  // namespace relaycoal

#endif  // RELAYCOAL_NETWORK_GRAPH_HPP
