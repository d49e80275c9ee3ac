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

#include "relaycoal/network_graph.hpp"

#include <set>
#include <stdexcept>

#include "relaycoal/radio_channel.hpp"

namespace relaycoal {

void NetworkGraph::set_link(TdId from, NodeRef to) {
  if (to.is_device() && to.id == from) {
    throw std::logic_error("self link on TD" + std::to_string(from));
  }
  if (to.is_device()) {
    const auto it = prev_.find(to.id);
    if (it != prev_.end() && it->second != from) {
      throw std::logic_error("TD" + std::to_string(to.id) + " already relays for TD" +
                             std::to_string(it->second));
    }
  }
  remove_link(from);
  next_[from] = to;
  if (to.is_device()) prev_[to.id] = from;
}

void NetworkGraph::remove_link(TdId from) {
  const auto it = next_.find(from);
  if (it == next_.end()) return;
  if (it->second.is_device()) prev_.erase(it->second.id);
  next_.erase(it);
}

std::optional<NodeRef> NetworkGraph::next_hop(TdId td) const {
  const auto it = next_.find(td);
  if (it == next_.end()) return std::nullopt;
  return it->second;
}

std::optional<TdId> NetworkGraph::predecessor(TdId td) const {
  const auto it = prev_.find(td);
  if (it == prev_.end()) return std::nullopt;
  return it->second;
}

RelayPath NetworkGraph::path_from(TdId source) const {
  RelayPath p;
  p.source = source;
  TdId at = source;
  std::set<TdId> seen{source};
  for (;;) {
    const auto hop = next_hop(at);
    if (!hop) throw std::logic_error("chain from TD" + std::to_string(source) + " is broken");
    if (hop->is_station()) {
      p.terminal = hop->id;
      return p;
    }
    if (!seen.insert(hop->id).second) {
      throw std::logic_error("chain from TD" + std::to_string(source) + " is cyclic");
    }
    p.hops.push_back(hop->id);
    at = hop->id;
  }
}

std::optional<TdId> NetworkGraph::flow_source(TdId td) const {
  if (!transmits(td)) return std::nullopt;
  TdId at = td;
  for (std::size_t steps = 0; steps <= prev_.size(); ++steps) {
    const auto up = predecessor(at);
    if (!up) return at;
    at = *up;
  }
  return std::nullopt;  // cycle
}

std::vector<std::string> NetworkGraph::violations(const Scenario& s) const {
  return violations(s, s.all_providers());
}

std::vector<std::string> NetworkGraph::violations(const Scenario& s, SpSet present) const {
  std::vector<std::string> out;
  auto name = [](TdId t) { return "TD" + std::to_string(t); };
  for (const auto& [from, to] : next_) {
    if (!s.has_td(from)) {
      out.push_back("link from unknown " + name(from));
      continue;
    }
    if (to.is_station()) {
      if (to.id < 1 || to.id > s.bs_count()) out.push_back(name(from) + " links to unknown BS");
      continue;
    }
    if (!s.has_td(to.id)) {
      out.push_back(name(from) + " links to unknown " + name(to.id));
      continue;
    }
    if (s.td(to.id).is_source()) out.push_back(name(from) + " uses source " + name(to.id) + " as relay");
    if (next_hop(to.id) == NodeRef::device(from)) {
      out.push_back("2-cycle between " + name(from) + " and " + name(to.id));
    }
    if (!is_admissible(s, from, to)) {
      out.push_back("relay link " + name(from) + "->" + name(to.id) + " below target SINR");
    }
  }
  for (const auto& d : s.devices) {
    const bool has_in = prev_.contains(d.id);
    const bool has_out = transmits(d.id);
    if (!contains(present, d.owner)) {
      if (has_in || has_out) out.push_back(name(d.id) + " belongs to an absent SP but carries traffic");
      continue;
    }
    if (d.is_source()) {
      if (!has_out) out.push_back("source " + name(d.id) + " is not connected");
      if (has_in) out.push_back("source " + name(d.id) + " has an incoming link");
    } else if (has_in != has_out) {
      out.push_back(has_out ? "vacant " + name(d.id) + " transmits without a flow"
                            : "relay " + name(d.id) + " has no next hop");
    }
  }
  for (const auto& [from, to] : next_) {
    if (!s.has_td(from)) continue;
    const auto src = flow_source(from);
    if (!src) {
      out.push_back(name(from) + " sits on a cycle");
      continue;
    }
    try {
      (void)path_from(*src);
    } catch (const std::logic_error& e) {
      out.push_back(e.what());
    }
  }
  return out;
}

}  // namespace relaycoal
