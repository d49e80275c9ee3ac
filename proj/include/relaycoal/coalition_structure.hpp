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

#ifndef RELAYCOAL_COALITION_STRUCTURE_HPP
#define RELAYCOAL_COALITION_STRUCTURE_HPP

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "relaycoal/core_model.hpp"

namespace relaycoal {

// An overlapping cover of the SP set. Only sub-coalitions with two or more
// members are stored; uncovered SPs are implicit singletons.
//
// A coalition is equivalent to the set of all its member pairs, so the
// canonical form is the list of maximal cliques of the pairwise cooperation
// graph: {(1,2),(1,3),(2,3)} and {(1,2,3)} are the same structure.
class CoalitionStructure {
 public:
  CoalitionStructure() = default;
  explicit CoalitionStructure(int sp_count);  // no cooperation
  CoalitionStructure(int sp_count, const std::vector<SpSet>& coalitions);

  static CoalitionStructure grand(int sp_count);
  // Parses "{(1,2),(2,3)}"; singleton groups such as "(3)" or "3" are
  // accepted and ignored. Throws std::invalid_argument.
  static CoalitionStructure parse(std::string_view text, int sp_count);

  int sp_count() const { return sp_count_; }
  const std::vector<SpSet>& coalitions() const { return coalitions_; }
  bool is_singletons() const { return coalitions_.empty(); }

  // Gamma_m without the implicit singleton.
  std::vector<SpSet> coalitions_of(SpId m) const;
  bool cooperates(SpId a, SpId b) const;
  // SPs sharing at least one coalition with m, plus m itself.
  SpSet partners(SpId m) const;
  int edge_count() const;

  // One new cooperation pair; the result is re-canonicalised.
  CoalitionStructure with_pair(SpId a, SpId b) const;
  // Drops the pair (a,b) wherever it appears.
  CoalitionStructure without_pair(SpId a, SpId b) const;
  // m leaves `coalition`; pairs m keeps through other coalitions survive.
  CoalitionStructure leaving(SpId m, SpSet coalition) const;

  std::string to_string() const;

  friend bool operator==(const CoalitionStructure&, const CoalitionStructure&) = default;
  friend auto operator<=>(const CoalitionStructure&, const CoalitionStructure&) = default;

 private:
  CoalitionStructure(int sp_count, std::vector<SpSet> adjacency, bool);
  std::vector<SpSet> adjacency() const;

  int sp_count_ = 0;
  std::vector<SpSet> coalitions_;
};

std::string coalition_to_string(SpSet coalition);

// Sum over Gamma_m of (|T| - 1): the number of coalition-cost units SP m pays.
int coalition_cost_units(const CoalitionStructure& w, SpId m);

inline constexpr int kDefaultEnumerationBound = 6;

// All structures over M SPs in canonical order. For M = 3 the order is the
// conventional labelling w1..w8:
//   {}, {(1,2)}, {(2,3)}, {(1,3)}, {(1,2),(1,3)}, {(1,3),(2,3)},
//   {(1,2),(2,3)}, {(1,2,3)}.
// Other M order by number of cooperating pairs, then by pair mask.
// Throws std::invalid_argument when M < 1 or M > bound.
std::vector<CoalitionStructure> enumerate_structures(int sp_count,
                                                     int bound = kDefaultEnumerationBound);

// Closed-form collection count: M for M <= 2, (M - 1)^M otherwise. Reported
// alongside the enumeration; the two agree up to M = 3 only.
long long structure_count_formula(int sp_count);

// "w1".."wD" position of `w` within `all`, or its serialisation if absent.
std::string structure_label(const std::vector<CoalitionStructure>& all,
                            const CoalitionStructure& w);

}  // namespace relaycoal

#endif  // RELAYCOAL_COALITION_STRUCTURE_HPP
