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

// Independent re-derivation of the link-formation rules, used to audit the
// library: own snr arithmetic, own chain walking, own admission test, and an
// exhaustive enumeration of every valid network on tiny instances.

#ifndef RELAYCOAL_TESTS_LINK_ORACLE_HPP
#define RELAYCOAL_TESTS_LINK_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "relaycoal/core_model.hpp"
#include "relaycoal/network_graph.hpp"

namespace relaycoal::oracle {

// TD id -> next hop; positive values are TDs, negative values -b are BS b.
using Links = std::map<int, int>;
using Shares = std::function<bool(SpId flow_owner, SpId relay_owner)>;

inline constexpr double kEps = 1e-12;

inline Links from_graph(const NetworkGraph& g) {
  Links out;
  for (const auto& [td, next] : g.links()) out[td] = next.is_station() ? -next.id : next.id;
  return out;
}

class World {
 public:
  World(const Scenario& s, SpSet present, Shares shares)
      : s_(s), present_(present), shares_(std::move(shares)) {}

  double snr(int from, int to) const {
    const auto& a = s_.devices[static_cast<std::size_t>(from - 1)];
    const Position b = to > 0 ? s_.devices[static_cast<std::size_t>(to - 1)].position
                              : s_.stations[static_cast<std::size_t>(-to - 1)].position;
    const double d = std::hypot(a.position.x - b.x, a.position.y - b.y);
    return s_.radio.antenna_constant * a.tx_power /
           (std::pow(d, s_.radio.path_loss_exponent) * s_.radio.noise_power);
  }

  // Bottleneck Shannon rate over hops, TDD-shared.
  double rate(const std::vector<int>& chain, int bs) const {
    double lo = INFINITY;
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) lo = std::min(lo, snr(chain[k], chain[k + 1]));
    lo = std::min(lo, snr(chain.back(), -bs));
    return std::log2(1.0 + lo) / static_cast<double>(chain.size());
  }

  double best_direct(const std::vector<int>& chain) const {
    double best = -INFINITY;
    for (int b = 1; b <= s_.bs_count(); ++b) best = std::max(best, rate(chain, b));
    return best;
  }

  const TerminalDevice& td(int id) const { return s_.devices[static_cast<std::size_t>(id - 1)]; }
  bool present(int id) const { return contains(present_, td(id).owner); }

  static std::optional<int> pred(const Links& g, int id) {
    for (const auto& [from, to] : g) {
      if (to == id) return from;
    }
    return std::nullopt;
  }

  static std::vector<int> upstream(const Links& g, int i) {
    std::vector<int> up{i};
    while (const auto p = pred(g, up.back())) up.push_back(*p);
    std::reverse(up.begin(), up.end());
    return up;
  }

  // Relays after i and the BS reached.
  static std::pair<std::vector<int>, int> tail(const Links& g, int i) {
    std::vector<int> relays;
    int at = g.at(i);
    while (at > 0) {
      relays.push_back(at);
      at = g.at(at);
    }
    return {relays, -at};
  }

  double flow_rate(const Links& g, int source) const {
    auto [relays, bs] = tail(g, source);
    std::vector<int> chain{source};
    chain.insert(chain.end(), relays.begin(), relays.end());
    return rate(chain, bs);
  }

  // Value of each admitted deviation of TD i; BS targets are always admitted.
  std::vector<double> admitted_values(const Links& g, int i) const {
    const auto up = upstream(g, i);
    const SpId owner = td(up.front()).owner;
    const double fallback = best_direct(up);
    const auto own_tail = tail(g, i).first;
    std::vector<double> out;
    for (int b = 1; b <= s_.bs_count(); ++b) out.push_back(rate(up, b));
    for (int j = 1; j <= s_.td_count(); ++j) {
      if (j == i || td(j).is_source() || !present(j) || !shares_(owner, td(j).owner)) continue;
      if (std::count(up.begin(), up.end(), j) || std::count(own_tail.begin(), own_tail.end(), j)) {
        continue;
      }
      if (snr(i, j) < s_.radio.target_sinr) continue;
      auto via = up;
      via.push_back(j);
      if (const auto k = pred(g, j)) {
        auto [relays, bs] = tail(g, j);
        bool ok = true;
        for (const int r : relays) ok = ok && present(r) && shares_(owner, td(r).owner);
        if (!ok) continue;
        via.insert(via.end(), relays.begin(), relays.end());
        const double value = rate(via, bs);
        const auto up_k = upstream(g, *k);
        const double inc_k = flow_rate(g, up_k.front()) - best_direct(up_k);
        if (value - fallback > kEps && value - fallback > inc_k + kEps) out.push_back(value);
      } else {
        const double value = best_direct(via);
        if (value - fallback > kEps) out.push_back(value);
      }
    }
    return out;
  }

  bool is_nash(const Links& g) const {
    for (const auto& [i, next] : g) {
      const auto up = upstream(g, i);
      const double current = flow_rate(g, up.front());
      for (const double v : admitted_values(g, i)) {
        if (v > current + kEps) return false;
      }
    }
    return true;
  }

  bool valid(const Links& g) const {
    for (const auto& d : s_.devices) {
      const bool in = pred(g, d.id).has_value();
      const bool out = g.contains(d.id);
      if (!present(d.id)) {
        if (in || out) return false;
        continue;
      }
      if (d.is_source() ? (!out || in) : (in != out)) return false;
    }
    std::map<int, int> indegree;
    for (const auto& [from, to] : g) {
      if (to > 0) {
        if (td(to).is_source() || ++indegree[to] > 1) return false;
        if (snr(from, to) < s_.radio.target_sinr) return false;
      }
    }
    // Every transmitting TD must lie on a source's loop-free chain to a BS.
    std::map<int, bool> covered;
    for (const auto& d : s_.devices) {
      if (!d.is_source() || !g.contains(d.id)) continue;
      int at = d.id;
      covered[at] = true;
      for (std::size_t steps = 0; g.at(at) > 0; ++steps) {
        if (steps > g.size()) return false;
        at = g.at(at);
        if (!shares_(d.owner, td(at).owner)) return false;
        covered[at] = true;
      }
    }
    return covered.size() == g.size();
  }

  // Every valid network of the instance (exponential; tiny worlds only).
  std::vector<Links> all_valid() const {
    std::vector<int> players;
    for (const auto& d : s_.devices) {
      if (present(d.id)) players.push_back(d.id);
    }
    std::vector<int> choices{0};
    for (int b = 1; b <= s_.bs_count(); ++b) choices.push_back(-b);
    for (const int p : players) choices.push_back(p);

    std::vector<Links> out;
    std::vector<std::size_t> pick(players.size(), 0);
    for (;;) {
      Links g;
      bool self = false;
      for (std::size_t k = 0; k < players.size(); ++k) {
        const int c = choices[pick[k]];
        if (c == players[k]) self = true;
        if (c != 0) g[players[k]] = c;
      }
      if (!self && valid(g)) out.push_back(g);
      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == choices.size()) pick[k++] = 0;
      if (k == pick.size()) break;
    }
    return out;
  }

 private:
  const Scenario& s_;
  SpSet present_;
  Shares shares_;
};

}  // namespace relaycoal::oracle

#endif  // RELAYCOAL_TESTS_LINK_ORACLE_HPP
