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

#include "relaycoal/link_formation.hpp"

#include <algorithm>
#include <deque>
#include <iomanip>
#include <set>
#include <sstream>

#include "relaycoal/rng.hpp"

namespace relaycoal {
namespace {

const ThroughputModel& resolve(const ThroughputModel* model) {
  return model ? *model : default_throughput_model();
}

// [source, ..., i]
std::vector<TdId> upstream_chain(const NetworkGraph& g, TdId i) {
  std::vector<TdId> up{i};
  TdId at = i;
  while (const auto p = g.predecessor(at)) {
    up.push_back(*p);
    at = *p;
    if (up.size() > g.size() + 1) throw std::logic_error("cyclic relay chain");
  }
  std::reverse(up.begin(), up.end());
  return up;
}

struct Tail {
  std::vector<TdId> relays;
  BsId terminal = 0;
};

// Relays after `td` on its chain and the BS the chain ends at.
Tail downstream(const NetworkGraph& g, TdId td) {
  Tail tail;
  TdId at = td;
  for (;;) {
    const auto hop = g.next_hop(at);
    if (!hop) throw std::logic_error("chain through TD" + std::to_string(td) + " is broken");
    if (hop->is_station()) {
      tail.terminal = hop->id;
      return tail;
    }
    tail.relays.push_back(hop->id);
    at = hop->id;
    if (tail.relays.size() > g.size()) throw std::logic_error("cyclic relay chain");
  }
}

double chain_rate(const Scenario& s, const std::vector<TdId>& chain, BsId bs,
                  const ThroughputModel& model) {
  RelayPath p;
  p.source = chain.front();
  p.hops.assign(chain.begin() + 1, chain.end());
  p.terminal = bs;
  return path_throughput(s, p, model);
}

// Best direct BS for the last TD of `chain`; lower id wins ties.
std::pair<BsId, double> best_station(const Scenario& s, const std::vector<TdId>& chain,
                                     const ThroughputModel& model) {
  BsId best = 1;
  double best_rate = chain_rate(s, chain, 1, model);
  for (BsId b = 2; b <= s.bs_count(); ++b) {
    const double r = chain_rate(s, chain, b, model);
    if (r > best_rate + kPayoffEpsilon) {
      best = b;
      best_rate = r;
    }
  }
  return {best, best_rate};
}

double current_rate(const Scenario& s, const NetworkGraph& g, const std::vector<TdId>& up,
                    const ThroughputModel& model) {
  return path_throughput(s, g.path_from(up.front()), model);
}

bool eligible(const Scenario& s, const NetworkGraph& g, const SharingRelation& sharing,
              const std::vector<TdId>& up, NodeRef target) {
  const TdId i = up.back();
  if (target.is_station()) return target.id >= 1 && target.id <= s.bs_count();
  const TdId j = target.id;
  if (!s.has_td(j) || j == i) return false;
  const auto& relay = s.td(j);
  if (relay.is_source() || !sharing.present(relay.owner)) return false;
  const SpId flow_owner = s.td(up.front()).owner;
  if (!sharing.shares(flow_owner, relay.owner)) return false;
  if (std::find(up.begin(), up.end(), j) != up.end()) return false;
  const auto own_tail = downstream(g, i);
  if (std::find(own_tail.relays.begin(), own_tail.relays.end(), j) != own_tail.relays.end()) {
    return false;
  }
  if (!is_admissible(s, i, target)) return false;
  if (g.predecessor(j)) {
    for (const TdId r : downstream(g, j).relays) {
      const SpId owner = s.td(r).owner;
      if (!sharing.present(owner) || !sharing.shares(flow_owner, owner)) return false;
    }
  }
  return true;
}

std::optional<Strategy> evaluate_eligible(const Scenario& s, const NetworkGraph& g,
                                          const std::vector<TdId>& up, NodeRef target,
                                          const ThroughputModel& model) {
  Strategy st;
  st.actor = up.back();
  st.target = target;
  st.payoff_before = current_rate(s, g, up, model);
  if (target.is_station()) {
    st.payoff_after = chain_rate(s, up, target.id, model);
    return st;
  }
  const TdId j = target.id;
  const double fallback = best_station(s, up, model).second;
  auto via = up;
  via.push_back(j);
  if (const auto k = g.predecessor(j)) {
    const auto tail = downstream(g, j);
    via.insert(via.end(), tail.relays.begin(), tail.relays.end());
    st.payoff_after = chain_rate(s, via, tail.terminal, model);
    const auto up_k = upstream_chain(g, *k);
    st.incumbent = *k;
    st.incumbent_increment = current_rate(s, g, up_k, model) - best_station(s, up_k, model).second;
  } else {
    st.payoff_after = best_station(s, via, model).second;
  }
  st.proposer_increment = st.payoff_after - fallback;
  if (st.proposer_increment <= kPayoffEpsilon) return std::nullopt;
  if (st.incumbent && st.proposer_increment <= st.incumbent_increment + kPayoffEpsilon) {
    return std::nullopt;
  }
  return st;
}

}  // namespace

SharingRelation SharingRelation::from_structure(const CoalitionStructure& w) {
  SharingRelation r;
  const int m_count = w.sp_count();
  r.present_ = m_count >= 32 ? ~SpSet{0} : (SpSet{1} << m_count) - 1;
  for (SpId m = 1; m <= m_count; ++m) r.partners_.push_back(w.partners(m));
  return r;
}

SharingRelation SharingRelation::within(SpSet members, int sp_count) {
  SharingRelation r;
  r.present_ = members;
  for (SpId m = 1; m <= sp_count; ++m) {
    r.partners_.push_back(contains(members, m) ? members : sp_bit(m));
  }
  return r;
}

bool SharingRelation::shares(SpId flow_owner, SpId relay_owner) const {
  if (flow_owner < 1 || flow_owner > static_cast<int>(partners_.size())) return false;
  return contains(partners_[static_cast<std::size_t>(flow_owner - 1)], relay_owner);
}

NetworkGraph initial_star(const Scenario& s) { return initial_star(s, s.all_providers()); }

NetworkGraph initial_star(const Scenario& s, SpSet present) {
  NetworkGraph g;
  for (const auto& d : s.devices) {
    if (!d.is_source() || !contains(present, d.owner)) continue;
    BsId best = 1;
    double best_d = distance(d.position, s.bs(1).position);
    for (BsId b = 2; b <= s.bs_count(); ++b) {
      const double dist = distance(d.position, s.bs(b).position);
      if (dist < best_d) {
        best = b;
        best_d = dist;
      }
    }
    g.set_link(d.id, NodeRef::station(best));
  }
  return g;
}

double flow_throughput(const Scenario& s, const NetworkGraph& g, TdId td,
                       const ThroughputModel& model) {
  const auto src = g.flow_source(td);
  if (!src) return 0.0;
  return path_throughput(s, g.path_from(*src), model);
}

double relay_increment(const Scenario& s, const NetworkGraph& g, TdId relay,
                       const ThroughputModel& model) {
  const auto pred = g.predecessor(relay);
  if (!pred) return 0.0;
  const auto up = upstream_chain(g, *pred);
  return flow_throughput(s, g, relay, model) - best_station(s, up, model).second;
}

std::vector<NodeRef> action_space(const Scenario& s, const NetworkGraph& g,
                                  const SharingRelation& sharing, TdId i) {
  std::vector<NodeRef> out;
  if (!g.transmits(i)) return out;
  const auto up = upstream_chain(g, i);
  for (BsId b = 1; b <= s.bs_count(); ++b) out.push_back(NodeRef::station(b));
  for (const auto& d : s.devices) {
    const auto target = NodeRef::device(d.id);
    if (eligible(s, g, sharing, up, target)) out.push_back(target);
  }
  return out;
}

std::optional<Strategy> evaluate_strategy(const Scenario& s, const NetworkGraph& g,
                                          const SharingRelation& sharing, TdId i,
                                          NodeRef target, const ThroughputModel& model) {
  if (!g.transmits(i)) return std::nullopt;
  const auto up = upstream_chain(g, i);
  if (!eligible(s, g, sharing, up, target)) return std::nullopt;
  return evaluate_eligible(s, g, up, target, model);
}

std::optional<Strategy> best_response(const Scenario& s, const NetworkGraph& g,
                                      const SharingRelation& sharing, TdId i,
                                      const ThroughputModel& model) {
  if (!g.transmits(i)) return std::nullopt;
  const auto up = upstream_chain(g, i);
  std::optional<Strategy> best;
  for (const NodeRef target : action_space(s, g, sharing, i)) {
    auto st = evaluate_eligible(s, g, up, target, model);
    if (!st) continue;
    // Candidates arrive in ascending node order, so ties keep the lower id.
    if (!best || st->payoff_after > best->payoff_after + kPayoffEpsilon) best = std::move(st);
  }
  if (best && best->payoff_after > best->payoff_before + kPayoffEpsilon) return best;
  return std::nullopt;
}

std::optional<TdId> apply_strategy(const Scenario& s, NetworkGraph& g, const Strategy& move,
                                   const ThroughputModel& model) {
  const TdId i = move.actor;
  if (!g.transmits(i)) throw std::logic_error("TD" + std::to_string(i) + " is not transmitting");
  const auto up = upstream_chain(g, i);

  // Release the actor's current downstream relays.
  const auto old_tail = downstream(g, i);
  g.remove_link(i);
  for (const TdId r : old_tail.relays) g.remove_link(r);

  if (move.target.is_station()) {
    g.set_link(i, move.target);
    return std::nullopt;
  }
  const TdId j = move.target.id;
  if (const auto k = g.predecessor(j)) {
    const auto up_k = upstream_chain(g, *k);
    const BsId fallback = best_station(s, up_k, model).first;
    g.remove_link(*k);
    g.set_link(*k, NodeRef::station(fallback));
    g.set_link(i, move.target);
    return *k;
  }
  auto via = up;
  via.push_back(j);
  const BsId bs = best_station(s, via, model).first;
  g.set_link(i, move.target);
  g.set_link(j, NodeRef::station(bs));
  return std::nullopt;
}

LinkFormationResult run_link_formation(const Scenario& s, const SharingRelation& sharing,
                                       const NetworkGraph& start,
                                       const LinkFormationOptions& options) {
  const ThroughputModel& model = resolve(options.model);
  if (const auto bad = start.violations(s, sharing.present_set()); !bad.empty()) {
    throw std::invalid_argument("invalid starting network: " + bad.front());
  }
  std::vector<TdId> players;
  for (const auto& d : s.devices) {
    if (sharing.present(d.owner)) players.push_back(d.id);
  }
  const int cap = options.max_rounds > 0
                      ? options.max_rounds
                      : std::max(1, 10 * static_cast<int>(players.size()));
  // Bounds one round's queue when displaced TDs keep re-entering.
  const std::size_t turn_limit = players.size() * (players.size() + 1) + 1;

  LinkFormationResult result;
  result.graph = start;
  Rng order_rng = Rng::split(options.seed, "play-order");
  int changed_rounds = 0;
  for (int round = 1; round <= cap; ++round) {
    std::vector<TdId> order = players;
    order_rng.shuffle(std::span<TdId>(order));
    std::deque<TdId> queue(order.begin(), order.end());
    std::multiset<TdId> pending(order.begin(), order.end());
    int moves = 0;
    std::size_t turns = 0;
    while (!queue.empty() && turns++ < turn_limit) {
      const TdId i = queue.front();
      queue.pop_front();
      pending.erase(pending.find(i));
      if (!result.graph.transmits(i)) continue;
      auto br = best_response(s, result.graph, sharing, i, model);
      if (!br) continue;
      const auto displaced = apply_strategy(s, result.graph, *br, model);
      result.moves.push_back(*br);
      result.displaced.push_back(displaced.value_or(0));
      ++moves;
      if (displaced && !pending.contains(*displaced)) {
        queue.push_back(*displaced);
        pending.insert(*displaced);
      }
    }
    if (moves == 0 && queue.empty()) {
      result.rounds = round;
      result.iterations = std::max(1, changed_rounds);
      return result;
    }
    ++changed_rounds;
  }
  throw NonConvergence("link formation did not converge within " + std::to_string(cap) +
                       " rounds");
}

bool verify_nash(const Scenario& s, const SharingRelation& sharing, const NetworkGraph& g,
                 const ThroughputModel& model) {
  for (const auto& [td, next] : g.links()) {
    if (best_response(s, g, sharing, td, model)) return false;
  }
  return true;
}

std::string to_dot(const Scenario& s, const NetworkGraph& g, const ThroughputModel& model,
                   const std::string& name) {
  std::ostringstream out;
  out << std::setprecision(6);
  out << "digraph \"" << name << "\" {\n";
  out << "  rankdir=LR;\n";
  for (const auto& b : s.stations) {
    out << "  \"BS" << b.id << "\" [shape=box, label=\"BS" << b.id << "\", pos=\""
        << b.position.x << "," << b.position.y << "!\"];\n";
  }
  for (const auto& d : s.devices) {
    out << "  \"TD" << d.id << "\" [shape=circle, label=\"TD" << d.id << "\\nSP" << d.owner
        << "\", owner=" << d.owner << ", role=" << (d.is_source() ? "source" : "vacant");
    if (d.is_source()) out << ", style=filled";
    out << ", pos=\"" << d.position.x << "," << d.position.y << "!\"];\n";
  }
  for (const auto& [from, to] : g.links()) {
    out << "  \"TD" << from << "\" -> \"" << to_string(to) << "\" [snr=" << link_snr(s, from, to)
        << ", throughput=" << flow_throughput(s, g, from, model) << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace relaycoal
