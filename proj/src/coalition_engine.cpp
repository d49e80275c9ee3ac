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

#include "relaycoal/coalition_engine.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "relaycoal/rng.hpp"

namespace relaycoal {

TableEvaluator::TableEvaluator(UtilityMatrix matrix) : matrix_(std::move(matrix)) {
  for (const auto& r : matrix_.rows) {
    if (r.structure.sp_count() != matrix_.sp_count ||
        r.phi.size() != static_cast<std::size_t>(matrix_.sp_count)) {
      throw std::invalid_argument("utility matrix row does not match its SP count");
    }
  }
}

std::vector<double> TableEvaluator::utilities(const CoalitionStructure& w) const {
  const auto* row = matrix_.find(w);
  if (!row) throw std::out_of_range("no utilities for structure " + w.to_string());
  return row->phi;
}

std::string_view to_string(MoveOrdering ordering) {
  switch (ordering) {
    case MoveOrdering::BestImprovement: return "best-improvement";
    case MoveOrdering::FirstImprovement: return "first-improvement";
    case MoveOrdering::RandomSeeded: return "random-seeded";
  }
  return "?";
}

MoveOrdering parse_move_ordering(std::string_view text) {
  for (const auto o : {MoveOrdering::BestImprovement, MoveOrdering::FirstImprovement,
                       MoveOrdering::RandomSeeded}) {
    if (text == to_string(o)) return o;
  }
  throw std::invalid_argument("unknown move ordering '" + std::string(text) + "'");
}

std::string_view to_string(SplitRule rule) {
  return rule == SplitRule::Strict ? "strict" : "weak";
}

SplitRule parse_split_rule(std::string_view text) {
  if (text == "strict") return SplitRule::Strict;
  if (text == "weak") return SplitRule::Weak;
  throw std::invalid_argument("unknown split rule '" + std::string(text) + "'");
}

std::vector<CoalitionMove> merge_candidates(const CoalitionStructure& w, SpId m,
                                            const UtilityEvaluator& eval) {
  std::vector<CoalitionMove> out;
  const auto before = eval.utilities(w);
  for (SpId n = 1; n <= w.sp_count(); ++n) {
    if (n == m || w.cooperates(m, n)) continue;
    CoalitionMove mv;
    mv.actor = m;
    mv.kind = MoveKind::Merge;
    mv.counterpart = sp_bit(m) | sp_bit(n);
    mv.from = w;
    mv.to = w.with_pair(m, n);
    const auto after = eval.utilities(mv.to);
    mv.actor_before = before[static_cast<std::size_t>(m - 1)];
    mv.actor_after = after[static_cast<std::size_t>(m - 1)];
    const bool initiator_gains = mv.actor_after > mv.actor_before;
    const bool partner_consents =
        after[static_cast<std::size_t>(n - 1)] >= before[static_cast<std::size_t>(n - 1)];
    if (initiator_gains && partner_consents) out.push_back(std::move(mv));
  }
  return out;
}

std::vector<CoalitionMove> split_candidates(const CoalitionStructure& w, SpId m,
                                            const UtilityEvaluator& eval, SplitRule rule) {
  std::vector<CoalitionMove> generated;
  for (const SpSet t : w.coalitions_of(m)) {
    CoalitionMove leave;
    leave.actor = m;
    leave.kind = MoveKind::Split;
    leave.counterpart = t;
    leave.from = w;
    leave.to = w.leaving(m, t);
    generated.push_back(std::move(leave));
    if (popcount(t) >= 3) {
      // The coalition read as its member pairs: drop one partner only.
      for (const SpId n : members_of(t & ~sp_bit(m))) {
        CoalitionMove drop;
        drop.actor = m;
        drop.kind = MoveKind::Split;
        drop.counterpart = sp_bit(m) | sp_bit(n);
        drop.from = w;
        drop.to = w.without_pair(m, n);
        generated.push_back(std::move(drop));
      }
    }
  }
  std::vector<CoalitionMove> out;
  const double before = eval.utility(w, m);
  for (auto& mv : generated) {
    if (mv.to == w) continue;
    const bool dup = std::any_of(out.begin(), out.end(),
                                 [&](const auto& o) { return o.to == mv.to; });
    if (dup) continue;
    mv.actor_before = before;
    mv.actor_after = eval.utility(mv.to, m);
    const bool admitted = rule == SplitRule::Strict ? mv.actor_after > before
                                                    : mv.actor_after >= before;
    if (admitted) out.push_back(std::move(mv));
  }
  return out;
}

namespace {

std::optional<CoalitionMove> best_of(std::vector<CoalitionMove> moves) {
  std::optional<CoalitionMove> best;
  for (auto& mv : moves) {
    if (!best || mv.actor_after > best->actor_after) best = std::move(mv);
  }
  return best;
}

}  // namespace

std::optional<CoalitionMove> update_step(const CoalitionStructure& w, SpId m,
                                         const UtilityEvaluator& eval, SplitRule rule) {
  auto split = best_of(split_candidates(w, m, eval, rule));
  auto merge = best_of(merge_candidates(w, m, eval));
  if (split && (!merge || split->actor_after >= merge->actor_after)) return split;
  return merge;
}

std::optional<CoalitionMove> choose_move(const CoalitionStructure& w, SpId m,
                                         const UtilityEvaluator& eval,
                                         const EngineOptions& options, Rng* rng) {
  switch (options.ordering) {
    case MoveOrdering::BestImprovement:
      return update_step(w, m, eval, options.split_rule);
    case MoveOrdering::FirstImprovement: {
      auto splits = split_candidates(w, m, eval, options.split_rule);
      if (!splits.empty()) return std::move(splits.front());
      auto merges = merge_candidates(w, m, eval);
      if (!merges.empty()) return std::move(merges.front());
      return std::nullopt;
    }
    case MoveOrdering::RandomSeeded: {
      auto all = split_candidates(w, m, eval, options.split_rule);
      auto merges = merge_candidates(w, m, eval);
      all.insert(all.end(), std::make_move_iterator(merges.begin()),
                 std::make_move_iterator(merges.end()));
      if (all.empty()) return std::nullopt;
      if (!rng) throw std::invalid_argument("random move ordering needs an RNG");
      return std::move(all[static_cast<std::size_t>(rng->below(all.size()))]);
    }
  }
  return std::nullopt;
}

FormationResult run_coalition_formation(const CoalitionStructure& start,
                                        const UtilityEvaluator& eval,
                                        const EngineOptions& options) {
  if (start.sp_count() != eval.sp_count()) {
    throw std::invalid_argument("structure and evaluator disagree on the SP count");
  }
  FormationResult result;
  result.final_structure = start;
  result.visited.push_back(start);

  std::vector<SpId> order;
  for (SpId m = 1; m <= start.sp_count(); ++m) order.push_back(m);
  Rng order_rng = Rng::split(options.seed, "coalition-order");
  order_rng.shuffle(std::span<SpId>(order));
  Rng move_rng = Rng::split(options.seed, "coalition-moves");

  for (;;) {
    ++result.passes;
    bool changed = false;
    for (const SpId m : order) {
      auto mv = choose_move(result.final_structure, m, eval, options, &move_rng);
      if (!mv) continue;
      if (std::find(result.visited.begin(), result.visited.end(), mv->to) !=
          result.visited.end()) {
        throw CycleDetected("merge-and-split revisited " + mv->to.to_string() + " after SP" +
                            std::to_string(m) + "'s move");
      }
      result.final_structure = mv->to;
      result.visited.push_back(mv->to);
      result.trajectory.push_back(std::move(*mv));
      changed = true;
    }
    if (!changed) return result;
  }
}

bool is_absorbing(const CoalitionStructure& w, const UtilityEvaluator& eval, SplitRule rule) {
  for (SpId m = 1; m <= w.sp_count(); ++m) {
    if (!split_candidates(w, m, eval, rule).empty()) return false;
    if (!merge_candidates(w, m, eval).empty()) return false;
  }
  return true;
}

std::vector<CoalitionStructure> stable_set(int sp_count, const UtilityEvaluator& eval,
                                           SplitRule rule) {
  std::vector<CoalitionStructure> out;
  for (const auto& w : enumerate_structures(sp_count)) {
    if (is_absorbing(w, eval, rule)) out.push_back(w);
  }
  return out;
}

std::vector<std::size_t> TransitionGraph::absorbing() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (out_degree(k) == 0) out.push_back(k);
  }
  return out;
}

std::size_t TransitionGraph::out_degree(std::size_t state) const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [&](const Edge& e) { return e.from == state; }));
}

std::set<std::size_t> TransitionGraph::reachable_absorbing(std::size_t start) const {
  std::vector<bool> seen(states.size(), false);
  std::deque<std::size_t> frontier{start};
  seen[start] = true;
  std::set<std::size_t> out;
  while (!frontier.empty()) {
    const auto at = frontier.front();
    frontier.pop_front();
    if (out_degree(at) == 0) out.insert(at);
    for (const auto& e : edges) {
      if (e.from == at && !seen[e.to]) {
        seen[e.to] = true;
        frontier.push_back(e.to);
      }
    }
  }
  return out;
}

TransitionGraph transition_graph(int sp_count, const UtilityEvaluator& eval, SplitRule rule,
                                 MoveOrdering ordering) {
  TransitionGraph g;
  g.states = enumerate_structures(sp_count);
  auto index_of = [&](const CoalitionStructure& w) {
    const auto it = std::find(g.states.begin(), g.states.end(), w);
    if (it == g.states.end()) throw std::logic_error("move left the structure space");
    return static_cast<std::size_t>(it - g.states.begin());
  };
  for (std::size_t k = 0; k < g.states.size(); ++k) {
    const auto& w = g.states[k];
    for (SpId m = 1; m <= sp_count; ++m) {
      std::vector<CoalitionMove> moves;
      if (ordering == MoveOrdering::RandomSeeded) {
        moves = split_candidates(w, m, eval, rule);
        auto merges = merge_candidates(w, m, eval);
        moves.insert(moves.end(), merges.begin(), merges.end());
      } else {
        EngineOptions opts;
        opts.ordering = ordering;
        opts.split_rule = rule;
        if (auto mv = choose_move(w, m, eval, opts, nullptr)) moves.push_back(std::move(*mv));
      }
      for (const auto& mv : moves) {
        g.edges.push_back({k, index_of(mv.to), m, mv.kind, mv.counterpart});
      }
    }
  }
  return g;
}

std::string to_dot(const TransitionGraph& graph, const std::string& name) {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n";
  for (std::size_t k = 0; k < graph.states.size(); ++k) {
    out << "  w" << k + 1 << " [label=\"w" << k + 1 << "\\n" << graph.states[k].to_string()
        << "\", shape=" << (graph.out_degree(k) == 0 ? "doublecircle" : "circle") << "];\n";
  }
  for (const auto& e : graph.edges) {
    out << "  w" << e.from + 1 << " -> w" << e.to + 1 << " [label=\"SP" << e.actor << ' '
        << (e.kind == MoveKind::Merge ? "merge " : "split ") << coalition_to_string(e.counterpart)
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace relaycoal
