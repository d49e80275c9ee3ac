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

#ifndef RELAYCOAL_COALITION_ENGINE_HPP
#define RELAYCOAL_COALITION_ENGINE_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "relaycoal/coalition_structure.hpp"
#include "relaycoal/utility_matrix.hpp"

namespace relaycoal {

// Supplies phi_m(w) for every SP under a structure. Implementations must be
// safe to call concurrently.
class UtilityEvaluator {
 public:
  virtual ~UtilityEvaluator() = default;
  virtual int sp_count() const = 0;
  // Index m - 1 holds SP m's allocated utility.
  virtual std::vector<double> utilities(const CoalitionStructure& w) const = 0;

  double utility(const CoalitionStructure& w, SpId m) const {
    return utilities(w).at(static_cast<std::size_t>(m - 1));
  }
};

// Backed by a utility matrix; structures missing from it are an error.
class TableEvaluator final : public UtilityEvaluator {
 public:
  explicit TableEvaluator(UtilityMatrix matrix);

  int sp_count() const override { return matrix_.sp_count; }
  std::vector<double> utilities(const CoalitionStructure& w) const override;
  const UtilityMatrix& matrix() const { return matrix_; }

 private:
  UtilityMatrix matrix_;
};

// Leaving a coalition must strictly pay off (default), or merely not hurt.
enum class SplitRule { Strict, Weak };

enum class MoveOrdering {
  BestImprovement,   // the SP's utility-maximising admitted move
  FirstImprovement,  // the first admitted move in generation order
  RandomSeeded,      // a seeded uniform pick among admitted moves
};

std::string_view to_string(MoveOrdering ordering);
MoveOrdering parse_move_ordering(std::string_view text);
std::string_view to_string(SplitRule rule);
SplitRule parse_split_rule(std::string_view text);

enum class MoveKind { Merge, Split };

struct CoalitionMove {
  SpId actor = 0;
  MoveKind kind = MoveKind::Merge;
  // Merge: the pair formed. Split: the coalition left or the pair dropped.
  SpSet counterpart = 0;
  CoalitionStructure from;
  CoalitionStructure to;
  double actor_before = 0.0;
  double actor_after = 0.0;
};

// Moves where m cooperates with one new partner n. Admitted when m strictly
// gains and n does not lose.
std::vector<CoalitionMove> merge_candidates(const CoalitionStructure& w, SpId m,
                                            const UtilityEvaluator& eval);

// Moves where m leaves a coalition, or drops a single partner from a
// coalition of three or more. Admitted when m gains (strictly, unless the
// weak rule is selected); no consent is needed.
std::vector<CoalitionMove> split_candidates(const CoalitionStructure& w, SpId m,
                                            const UtilityEvaluator& eval,
                                            SplitRule rule = SplitRule::Strict);

// Utility-maximising update for SP m: the better of the best admitted split
// and the best admitted merge, split on ties; nullopt when neither exists.
std::optional<CoalitionMove> update_step(const CoalitionStructure& w, SpId m,
                                         const UtilityEvaluator& eval,
                                         SplitRule rule = SplitRule::Strict);

class Rng;

struct EngineOptions {
  MoveOrdering ordering = MoveOrdering::BestImprovement;
  SplitRule split_rule = SplitRule::Strict;
  std::uint64_t seed = 0;
};

// The move SP m makes under `options.ordering`. `rng` is consulted only for
// the random policy.
std::optional<CoalitionMove> choose_move(const CoalitionStructure& w, SpId m,
                                         const UtilityEvaluator& eval,
                                         const EngineOptions& options, Rng* rng);

struct FormationResult {
  CoalitionStructure final_structure;
  std::vector<CoalitionStructure> visited;  // starting structure first
  std::vector<CoalitionMove> trajectory;
  int passes = 0;
};

// Signals a structure revisited during merge-and-split, which strictly
// improving moves should never produce for a consistent evaluator.
class CycleDetected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Merge-and-split over the SPs in a seeded round-robin order until a full
// pass changes nothing.
FormationResult run_coalition_formation(const CoalitionStructure& start,
                                        const UtilityEvaluator& eval,
                                        const EngineOptions& options = {});

// True when no SP has an admitted merge or split.
bool is_absorbing(const CoalitionStructure& w, const UtilityEvaluator& eval,
                  SplitRule rule = SplitRule::Strict);

// Internally and externally stable structures, in canonical order.
std::vector<CoalitionStructure> stable_set(int sp_count, const UtilityEvaluator& eval,
                                           SplitRule rule = SplitRule::Strict);

struct TransitionGraph {
  struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;
    SpId actor = 0;
    MoveKind kind = MoveKind::Merge;
    SpSet counterpart = 0;
  };

  std::vector<CoalitionStructure> states;  // canonical order
  std::vector<Edge> edges;

  std::vector<std::size_t> absorbing() const;
  std::size_t out_degree(std::size_t state) const;
  // Absorbing states reachable from `start` (itself included if absorbing).
  std::set<std::size_t> reachable_absorbing(std::size_t start) const;
};

// Admitted moves between all structures. With the random policy every
// admitted move is an edge; the best/first policies keep the single move
// each SP would make from each state.
TransitionGraph transition_graph(int sp_count, const UtilityEvaluator& eval,
                                 SplitRule rule = SplitRule::Strict,
                                 MoveOrdering ordering = MoveOrdering::RandomSeeded);

// Absorbing states drawn double-circled; edges labelled "SPm merge (a,b)".
std::string to_dot(const TransitionGraph& graph, const std::string& name = "transitions");

}  // namespace relaycoal

#endif  // RELAYCOAL_COALITION_ENGINE_HPP
