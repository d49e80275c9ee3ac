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

#include "relaycoal/coalition_structure.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace relaycoal {
namespace {

bool coalition_less(SpSet a, SpSet b) { return members_of(a) < members_of(b); }

// Bron-Kerbosch with pivoting; collects maximal cliques of size >= 2.
void maximal_cliques(const std::vector<SpSet>& adj, SpSet r, SpSet p, SpSet x,
                     std::vector<SpSet>& out) {
  if (p == 0 && x == 0) {
    if (std::popcount(r) >= 2) out.push_back(r);
    return;
  }
  const SpSet px = p | x;
  const int pivot = std::countr_zero(px);
  SpSet candidates = p & ~adj[static_cast<std::size_t>(pivot)];
  while (candidates != 0) {
    const int v = std::countr_zero(candidates);
    const SpSet vbit = SpSet{1} << v;
    candidates &= ~vbit;
    maximal_cliques(adj, r | vbit, p & adj[static_cast<std::size_t>(v)],
                    x & adj[static_cast<std::size_t>(v)], out);
    p &= ~vbit;
    x |= vbit;
  }
}

void check_sp(SpId m, int sp_count) {
  if (m < 1 || m > sp_count) {
    throw std::invalid_argument("SP id " + std::to_string(m) + " outside 1.." +
                                std::to_string(sp_count));
  }
}

}  // namespace

CoalitionStructure::CoalitionStructure(int sp_count) : sp_count_(sp_count) {
  if (sp_count < 1 || sp_count > kMaxProviders) {
    throw std::invalid_argument("SP count must be in 1..32");
  }
}

CoalitionStructure::CoalitionStructure(int sp_count, const std::vector<SpSet>& coalitions)
    : CoalitionStructure(sp_count) {
  std::vector<SpSet> adj(static_cast<std::size_t>(sp_count), 0);
  const SpSet universe = sp_count >= 32 ? ~SpSet{0} : (SpSet{1} << sp_count) - 1;
  for (const SpSet t : coalitions) {
    if ((t & ~universe) != 0) throw std::invalid_argument("coalition names an unknown SP");
    for (const SpId a : members_of(t)) {
      adj[static_cast<std::size_t>(a - 1)] |= t & ~sp_bit(a);
    }
  }
  *this = CoalitionStructure(sp_count, std::move(adj), true);
}

CoalitionStructure::CoalitionStructure(int sp_count, std::vector<SpSet> adj, bool)
    : sp_count_(sp_count) {
  const SpSet universe = sp_count >= 32 ? ~SpSet{0} : (SpSet{1} << sp_count) - 1;
  maximal_cliques(adj, 0, universe, 0, coalitions_);
  std::sort(coalitions_.begin(), coalitions_.end(), coalition_less);
}

CoalitionStructure CoalitionStructure::grand(int sp_count) {
  CoalitionStructure w(sp_count);
  if (sp_count >= 2) w = CoalitionStructure(sp_count, {(SpSet{1} << sp_count) - 1});
  return w;
}

std::vector<SpSet> CoalitionStructure::adjacency() const {
  std::vector<SpSet> adj(static_cast<std::size_t>(sp_count_), 0);
  for (const SpSet t : coalitions_) {
    for (const SpId a : members_of(t)) adj[static_cast<std::size_t>(a - 1)] |= t & ~sp_bit(a);
  }
  return adj;
}

std::vector<SpSet> CoalitionStructure::coalitions_of(SpId m) const {
  std::vector<SpSet> out;
  for (const SpSet t : coalitions_) {
    if (contains(t, m)) out.push_back(t);
  }
  return out;
}

bool CoalitionStructure::cooperates(SpId a, SpId b) const {
  if (a == b) return true;
  const SpSet pair = sp_bit(a) | sp_bit(b);
  return std::any_of(coalitions_.begin(), coalitions_.end(),
                     [pair](SpSet t) { return (t & pair) == pair; });
}

SpSet CoalitionStructure::partners(SpId m) const {
  SpSet out = sp_bit(m);
  for (const SpSet t : coalitions_) {
    if (contains(t, m)) out |= t;
  }
  return out;
}

int CoalitionStructure::edge_count() const {
  int twice = 0;
  for (const SpSet a : adjacency()) twice += std::popcount(a);
  return twice / 2;
}

CoalitionStructure CoalitionStructure::with_pair(SpId a, SpId b) const {
  check_sp(a, sp_count_);
  check_sp(b, sp_count_);
  if (a == b) throw std::invalid_argument("a pair needs two distinct SPs");
  auto adj = adjacency();
  adj[static_cast<std::size_t>(a - 1)] |= sp_bit(b);
  adj[static_cast<std::size_t>(b - 1)] |= sp_bit(a);
  return CoalitionStructure(sp_count_, std::move(adj), true);
}

CoalitionStructure CoalitionStructure::without_pair(SpId a, SpId b) const {
  check_sp(a, sp_count_);
  check_sp(b, sp_count_);
  auto adj = adjacency();
  adj[static_cast<std::size_t>(a - 1)] &= ~sp_bit(b);
  adj[static_cast<std::size_t>(b - 1)] &= ~sp_bit(a);
  return CoalitionStructure(sp_count_, std::move(adj), true);
}

CoalitionStructure CoalitionStructure::leaving(SpId m, SpSet coalition) const {
  check_sp(m, sp_count_);
  if (!contains(coalition, m)) throw std::invalid_argument("SP is not a member of the coalition");
  SpSet kept = 0;  // partners m keeps through another coalition
  for (const SpSet t : coalitions_) {
    if (t != coalition && contains(t, m)) kept |= t;
  }
  auto adj = adjacency();
  for (const SpId n : members_of(coalition & ~sp_bit(m))) {
    if (contains(kept, n)) continue;
    adj[static_cast<std::size_t>(m - 1)] &= ~sp_bit(n);
    adj[static_cast<std::size_t>(n - 1)] &= ~sp_bit(m);
  }
  return CoalitionStructure(sp_count_, std::move(adj), true);
}

std::string coalition_to_string(SpSet coalition) {
  std::string out = "(";
  bool first = true;
  for (const SpId m : members_of(coalition)) {
    if (!first) out += ',';
    out += std::to_string(m);
    first = false;
  }
  return out + ")";
}

std::string CoalitionStructure::to_string() const {
  std::string out = "{";
  for (std::size_t k = 0; k < coalitions_.size(); ++k) {
    if (k) out += ',';
    out += coalition_to_string(coalitions_[k]);
  }
  return out + "}";
}

CoalitionStructure CoalitionStructure::parse(std::string_view text, int sp_count) {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("bad coalition structure '" + std::string(text) + "': " + why);
  };
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_int = [&]() -> SpId {
    skip_ws();
    // Tolerate an "SP" prefix as printed in tables.
    if (text.substr(pos, 2) == "SP") pos += 2;
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected an SP id");
    const int id = std::stoi(std::string(text.substr(start, pos - start)));
    if (id < 1 || id > sp_count) fail("SP id out of range");
    return id;
  };
  skip_ws();
  if (pos >= text.size() || text[pos] != '{') fail("missing '{'");
  ++pos;
  std::vector<SpSet> groups;
  skip_ws();
  if (pos < text.size() && text[pos] == '}') {
    ++pos;
  } else {
    for (;;) {
      skip_ws();
      if (pos >= text.size()) fail("unterminated");
      SpSet group = 0;
      if (text[pos] == '(') {
        ++pos;
        for (;;) {
          group |= sp_bit(read_int());
          skip_ws();
          if (pos >= text.size()) fail("unterminated group");
          if (text[pos] == ',') { ++pos; continue; }
          if (text[pos] == ')') { ++pos; break; }
          fail("expected ',' or ')'");
        }
      } else {
        group = sp_bit(read_int());
      }
      if (std::popcount(group) >= 2) groups.push_back(group);
      skip_ws();
      if (pos >= text.size()) fail("unterminated");
      if (text[pos] == ',') { ++pos; continue; }
      if (text[pos] == '}') { ++pos; break; }
      fail("expected ',' or '}'");
    }
  }
  skip_ws();
  if (pos != text.size()) fail("trailing characters");
  return CoalitionStructure(sp_count, groups);
}

int coalition_cost_units(const CoalitionStructure& w, SpId m) {
  int units = 0;
  for (const SpSet t : w.coalitions_of(m)) units += std::popcount(t) - 1;
  return units;
}

std::vector<CoalitionStructure> enumerate_structures(int sp_count, int bound) {
  if (sp_count < 1) throw std::invalid_argument("need at least one SP");
  if (sp_count > bound) {
    throw std::invalid_argument("refusing to enumerate structures for " + std::to_string(sp_count) +
                                " SPs (bound " + std::to_string(bound) + ")");
  }
  std::vector<std::pair<SpId, SpId>> pairs;
  for (SpId a = 1; a <= sp_count; ++a) {
    for (SpId b = a + 1; b <= sp_count; ++b) pairs.emplace_back(a, b);
  }
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  std::vector<std::pair<std::uint64_t, CoalitionStructure>> keyed;
  keyed.reserve(total);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<SpSet> adj(static_cast<std::size_t>(sp_count), 0);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (mask >> k & 1U) {
        const auto [a, b] = pairs[k];
        adj[static_cast<std::size_t>(a - 1)] |= sp_bit(b);
        adj[static_cast<std::size_t>(b - 1)] |= sp_bit(a);
      }
    }
    std::vector<SpSet> edges;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (mask >> k & 1U) edges.push_back(sp_bit(pairs[k].first) | sp_bit(pairs[k].second));
    }
    keyed.emplace_back(mask, CoalitionStructure(sp_count, edges));
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    const int cx = std::popcount(x.first), cy = std::popcount(y.first);
    return cx != cy ? cx < cy : x.first < y.first;
  });
  std::vector<CoalitionStructure> out;
  out.reserve(keyed.size());
  for (auto& [mask, w] : keyed) out.push_back(std::move(w));

  if (sp_count == 3) {
    static constexpr std::string_view kConventional[] = {
        "{}",            "{(1,2)}",       "{(2,3)}",       "{(1,3)}",
        "{(1,2),(1,3)}", "{(1,3),(2,3)}", "{(1,2),(2,3)}", "{(1,2,3)}"};
    auto rank = [](const CoalitionStructure& w) {
      const auto text = w.to_string();
      return std::find(std::begin(kConventional), std::end(kConventional), text) -
             std::begin(kConventional);
    };
    std::stable_sort(out.begin(), out.end(),
                     [&](const auto& x, const auto& y) { return rank(x) < rank(y); });
  }
  return out;
}

long long structure_count_formula(int sp_count) {
  if (sp_count < 1) return 0;
  if (sp_count <= 2) return sp_count;
  long long d = 1;
  for (int k = 0; k < sp_count; ++k) d *= sp_count - 1;
  return d;
}

std::string structure_label(const std::vector<CoalitionStructure>& all,
                            const CoalitionStructure& w) {
  const auto it = std::find(all.begin(), all.end(), w);
  if (it == all.end()) return w.to_string();
  return "w" + std::to_string(it - all.begin() + 1);
}

}  // namespace relaycoal
