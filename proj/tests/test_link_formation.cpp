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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "link_oracle.hpp"
#include "relaycoal/link_formation.hpp"
#include "relaycoal/rng.hpp"
#include "test_support.hpp"

namespace relaycoal {
namespace {

using testing::make_world;

const Position kBs{2000.0, 1000.0};

oracle::Shares shares_of(const CoalitionStructure& w) {
  return [w](SpId a, SpId b) { return a == b || w.cooperates(a, b); };
}

bool has_target(const std::vector<NodeRef>& v, NodeRef n) {
  return std::find(v.begin(), v.end(), n) != v.end();
}

TEST_CASE("initial star") {
  ScenarioSpec spec;
  spec.providers = 3;
  spec.tds_per_sp = {12, 12, 12};
  spec.sources_per_sp = {4, 4, 4};
  const auto s = generate_scenario(spec, 42);
  const auto g = initial_star(s);
  CHECK(g.size() == 12);
  for (const auto& [td, next] : g.links()) {
    CHECK(s.td(td).is_source());
    CHECK(next.is_station());
    const auto& p = s.td(td).position;
    const BsId other = next.id == 1 ? 2 : 1;
    CHECK(distance(p, s.bs(next.id).position) <= distance(p, s.bs(other).position));
  }
  CHECK(g.is_valid(s));

  spec.sources_per_sp = {0, 0, 0};
  CHECK(initial_star(generate_scenario(spec, 42)).empty());

  const auto tie = make_world({{1000.0, 1000.0}, {3000.0, 1000.0}}, {{1, 2000.0, 500.0, true}});
  CHECK(initial_star(tie).next_hop(1) == NodeRef::station(1));
}

// One source far from the BS with one relay halfway.
Scenario lone_relay_world() {
  return make_world({kBs}, {{1, 1000.0, 1000.0, true}, {1, 1500.0, 1000.0, false}});
}

TEST_CASE("profitable relay is taken") {
  const auto s = lone_relay_world();
  const auto sharing = SharingRelation::within(1u, 1);
  const auto star = initial_star(s);
  CHECK_FALSE(verify_nash(s, sharing, star));
  const auto br = best_response(s, star, sharing, 1);
  REQUIRE(br);
  CHECK(br->target == NodeRef::device(2));
  CHECK(br->payoff_before == doctest::Approx(std::log2(1.0 + 0.625)));
  CHECK(br->payoff_after == doctest::Approx(std::log2(11.0) / 2.0));

  const auto run = run_link_formation(s, sharing, star, {nullptr, 9, 0});
  CHECK(run.graph.path_from(1) == RelayPath{1, {2}, 1});
  CHECK(verify_nash(s, sharing, run.graph));
  CHECK(run.iterations == 1);
}

TEST_CASE("no relay in range keeps the direct link") {
  const auto s = make_world({kBs}, {{1, 1000.0, 1000.0, true}, {1, 1000.0, 1900.0, false}});
  const auto sharing = SharingRelation::within(1u, 1);
  CHECK_FALSE(best_response(s, initial_star(s), sharing, 1));
  const auto run = run_link_formation(s, sharing, initial_star(s));
  CHECK(run.graph == initial_star(s));
  CHECK(run.iterations == 1);
  CHECK(run.moves.empty());
}

TEST_CASE("zero vacant devices") {
  const auto s = make_world({kBs}, {{1, 1000.0, 1000.0, true}, {2, 1400.0, 1100.0, true}});
  const auto run = run_link_formation(s, SharingRelation::within(3u, 2), initial_star(s));
  CHECK(run.graph == initial_star(s));
  CHECK(run.iterations == 1);
}

TEST_CASE("empty network is trivially Nash") {
  const auto s = make_world({kBs}, {{1, 1000.0, 1000.0, false}});
  CHECK(verify_nash(s, SharingRelation::within(1u, 1), NetworkGraph{}));
}

TEST_CASE("action space follows the sharing relation") {
  // SP1 source; relays of SP1, SP2 and SP3 all in range.
  const auto s = make_world({kBs}, {{1, 1000.0, 1000.0, true},
                                    {1, 1400.0, 1000.0, false},
                                    {2, 1400.0, 1100.0, false},
                                    {3, 1400.0, 900.0, false},
                                    {3, 1000.0, 1900.0, false}});
  const auto star = initial_star(s);
  const auto alone = action_space(s, star, SharingRelation::from_structure(CoalitionStructure(3)), 1);
  CHECK(has_target(alone, NodeRef::station(1)));
  CHECK(has_target(alone, NodeRef::device(2)));
  CHECK_FALSE(has_target(alone, NodeRef::device(3)));
  CHECK_FALSE(has_target(alone, NodeRef::device(4)));

  const auto grand = action_space(s, star, SharingRelation::from_structure(CoalitionStructure::grand(3)), 1);
  CHECK(has_target(grand, NodeRef::device(2)));
  CHECK(has_target(grand, NodeRef::device(3)));
  CHECK(has_target(grand, NodeRef::device(4)));
  CHECK_FALSE(has_target(grand, NodeRef::device(5)));  // out of range

  const auto pair = action_space(s, star, SharingRelation::from_structure(CoalitionStructure::parse("{(1,3)}", 3)), 1);
  CHECK_FALSE(has_target(pair, NodeRef::device(3)));
  CHECK(has_target(pair, NodeRef::device(4)));
}

// TD1 (near) and TD2 (far) both want relay TD3; the far one gains more.
Scenario contention_world() {
  return make_world({kBs}, {{1, 1250.0, 1000.0, true},
                            {1, 1100.0, 1100.0, true},
                            {1, 1550.0, 1000.0, false}});
}

TEST_CASE("link replacement favours the larger increment") {
  const auto s = contention_world();
  const auto sharing = SharingRelation::within(1u, 1);
  const oracle::World w(s, 1u, [](SpId, SpId) { return true; });
  const double inc_near = w.rate({1, 3}, 1) - w.best_direct({1});
  const double inc_far = w.rate({2, 3}, 1) - w.best_direct({2});
  REQUIRE(inc_near > 0.0);
  REQUIRE(inc_far > inc_near);

  SUBCASE("far source displaces the near incumbent") {
    NetworkGraph g;
    g.set_link(1, NodeRef::device(3));
    g.set_link(3, NodeRef::station(1));
    g.set_link(2, NodeRef::station(1));
    CHECK(relay_increment(s, g, 3) == doctest::Approx(inc_near));
    CHECK(action_space(s, g, sharing, 2).size() == 2);  // occupied relay still listed
    const auto st = evaluate_strategy(s, g, sharing, 2, NodeRef::device(3));
    REQUIRE(st);
    CHECK(st->incumbent == 1);
    CHECK(st->proposer_increment == doctest::Approx(inc_far));
    CHECK(st->incumbent_increment == doctest::Approx(inc_near));
    const auto displaced = apply_strategy(s, g, *st);
    CHECK(displaced == 1);
    CHECK(g.next_hop(1) == NodeRef::station(1));
    CHECK(g.path_from(2) == RelayPath{2, {3}, 1});
    CHECK(g.is_valid(s));
  }
  SUBCASE("near source cannot displace the far incumbent") {
    NetworkGraph g;
    g.set_link(2, NodeRef::device(3));
    g.set_link(3, NodeRef::station(1));
    g.set_link(1, NodeRef::station(1));
    CHECK_FALSE(evaluate_strategy(s, g, sharing, 1, NodeRef::device(3)));
    CHECK(verify_nash(s, sharing, g));
  }
  SUBCASE("dynamics from the star settle on the far source") {
    const auto run = run_link_formation(s, sharing, initial_star(s), {nullptr, 3, 0});
    CHECK(run.graph.path_from(2) == RelayPath{2, {3}, 1});
    CHECK(run.graph.next_hop(1) == NodeRef::station(1));
  }
}

TEST_CASE("best of several relays") {
  // Relay candidates TD2, TD3 (best) and TD4, owned by three SPs.
  const auto s = make_world({kBs}, {{1, 1100.0, 1000.0, true},
                                    {1, 1500.0, 1000.0, false},
                                    {2, 1550.0, 1000.0, false},
                                    {3, 1450.0, 1200.0, false}});
  const auto sharing = SharingRelation::from_structure(CoalitionStructure::grand(3));
  const auto star = initial_star(s);
  std::vector<double> values;
  for (TdId j = 2; j <= 4; ++j) {
    const auto st = evaluate_strategy(s, star, sharing, 1, NodeRef::device(j));
    REQUIRE(st);
    values.push_back(st->payoff_after);
  }
  CHECK(values[1] > values[0]);
  CHECK(values[1] > values[2]);
  const auto br = best_response(s, star, sharing, 1);
  REQUIRE(br);
  CHECK(br->target == NodeRef::device(3));
}

TEST_CASE("payoff ties go to the lowest node") {
  // Two mirror-image relays.
  const auto s = make_world({kBs}, {{1, 1000.0, 1000.0, true},
                                    {1, 1450.0, 1030.0, false},
                                    {1, 1450.0, 970.0, false}});
  const auto br = best_response(s, initial_star(s), SharingRelation::within(1u, 1), 1);
  REQUIRE(br);
  CHECK(br->target == NodeRef::device(2));
}

TEST_CASE("invalid start is rejected") {
  const auto s = lone_relay_world();
  CHECK_THROWS_AS(run_link_formation(s, SharingRelation::within(1u, 1), NetworkGraph{}),
                  std::invalid_argument);
}

Scenario random_world(Rng& rng, int sources, int relays, int sps) {
  ScenarioSpec spec;
  spec.providers = sps;
  spec.stations = 1 + static_cast<int>(rng.below(2));
  spec.area = {2400.0, 1200.0};
  spec.tds_per_sp.assign(static_cast<std::size_t>(sps), 0);
  spec.sources_per_sp.assign(static_cast<std::size_t>(sps), 0);
  for (int k = 0; k < sources; ++k) {
    const auto m = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(sps)));
    ++spec.tds_per_sp[m];
    ++spec.sources_per_sp[m];
  }
  for (int k = 0; k < relays; ++k) ++spec.tds_per_sp[rng.below(static_cast<std::uint64_t>(sps))];
  return generate_scenario(spec, rng.next_u64());
}

TEST_CASE("converged networks are fixed points of the exhaustive oracle") {
  Rng rng(20261015);
  int with_relays = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int sources = 1 + static_cast<int>(rng.below(3));
    const int relays = 1 + static_cast<int>(rng.below(2));
    const auto s = random_world(rng, sources, relays, 2);
    const auto w = trial % 2 ? CoalitionStructure::grand(2) : CoalitionStructure(2);
    const auto sharing = SharingRelation::from_structure(w);
    const auto run = run_link_formation(s, sharing, initial_star(s), {nullptr, rng.next_u64(), 0});

    const oracle::World world(s, s.all_providers(), shares_of(w));
    const auto all = world.all_valid();
    std::vector<oracle::Links> fixed;
    for (const auto& g : all) {
      if (world.is_nash(g)) fixed.push_back(g);
    }
    const auto got = oracle::from_graph(run.graph);
    INFO("trial " << trial);
    CHECK(std::find(all.begin(), all.end(), got) != all.end());
    CHECK(std::find(fixed.begin(), fixed.end(), got) != fixed.end());
    CHECK(verify_nash(s, sharing, run.graph));
    // The library and oracle agree on every valid network, not just this one.
    for (const auto& g : all) {
      NetworkGraph ng;
      for (const auto& [from, to] : g) ng.set_link(from, to > 0 ? NodeRef::device(to) : NodeRef::station(-to));
      CHECK(verify_nash(s, sharing, ng) == world.is_nash(g));
    }
    for (const auto& [from, to] : got) with_relays += to > 0 ? 1 : 0;
  }
  CHECK(with_relays > 0);
}

TEST_CASE("random worlds converge to oracle-confirmed Nash networks") {
  Rng rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    ScenarioSpec spec;
    spec.providers = 3;
    spec.area = {4000.0, 2000.0};
    spec.tds_per_sp = {10, 10, 10};
    spec.sources_per_sp = {3, 4, 2};
    const auto s = generate_scenario(spec, rng.next_u64());
    const auto all = enumerate_structures(3);
    const auto w = all[rng.below(all.size())];
    const auto sharing = SharingRelation::from_structure(w);
    const std::uint64_t seed = rng.next_u64();
    const auto run = run_link_formation(s, sharing, initial_star(s), {nullptr, seed, 0});
    CHECK(run.graph.is_valid(s));
    CHECK(verify_nash(s, sharing, run.graph));
    CHECK(oracle::World(s, s.all_providers(), shares_of(w)).is_nash(oracle::from_graph(run.graph)));
    for (const auto& mv : run.moves) CHECK(mv.payoff_after > mv.payoff_before);
    CHECK(run_link_formation(s, sharing, initial_star(s), {nullptr, seed, 0}).graph == run.graph);
  }
}

TEST_CASE("dot export") {
  const auto s = lone_relay_world();
  const auto run = run_link_formation(s, SharingRelation::within(1u, 1), initial_star(s));
  const auto dot = to_dot(s, run.graph);
  CHECK(dot.find("\"TD1\" -> \"TD2\"") != std::string::npos);
  CHECK(dot.find("\"TD2\" -> \"BS1\"") != std::string::npos);
}

}  // namespace
}  // namespace relaycoal
