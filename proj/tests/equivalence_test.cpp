/*
 * Copyright 2026 The pis Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pis/dot.hpp"
#include "pis/equivalence.hpp"
#include "pis/generators.hpp"
#include "support/oracles.hpp"
#include "support/random_systems.hpp"

#include <gtest/gtest.h>

namespace pis {
namespace {

ActionLts chain_ab(const std::string& p) {
  LtsBuilder<ActionId> b;
  b.initial(p + "0").transition(p + "0", "a", p + "1").transition(p + "1", "b", p + "2");
  return b.build();
}

// a.(b + c)
ActionLts late_choice() {
  LtsBuilder<ActionId> b;
  b.initial("s0").transition("s0", "a", "s1").transition("s1", "b", "s2").transition("s1", "c", "s3");
  return b.build();
}

// a.b + a.c
ActionLts early_choice() {
  LtsBuilder<ActionId> b;
  b.initial("t0")
      .transition("t0", "a", "t1")
      .transition("t0", "a", "t2")
      .transition("t1", "b", "t3")
      .transition("t2", "c", "t4");
  return b.build();
}

TEST(BranchingPartition, TauSelfLoopIsRedundant) {
  LtsBuilder<ActionId> b;
  b.initial("s0").tau("s0", "s0").transition("s0", "a", "s1");
  const auto lts = b.build();
  const auto p = branching_partition(lts);
  EXPECT_EQ(p.block_count, 2u);
  EXPECT_EQ(p.blocks(), (std::vector<std::vector<StateId>>{{0}, {1}}));
  EXPECT_TRUE(testing::partition_matches_relation(p, testing::naive_branching_bisimilarity(lts)));
}

TEST(BranchingPartition, IsomorphicCopiesShareBlocks) {
  const auto both = disjoint_union(chain_ab("x"), chain_ab("y"));
  const auto p = branching_partition(both);
  EXPECT_EQ(p.block_count, 3u);
  for (StateId k = 0; k < 3; ++k) EXPECT_TRUE(p.same_block(k, k + 3));
}

TEST(BranchingPartition, SeparatesEarlyAndLateChoice) {
  const auto both = disjoint_union(late_choice(), early_choice());
  const auto p = branching_partition(both);
  const StateId s0 = *both.find_state("0:s0");
  const StateId t0 = *both.find_state("1:t0");
  EXPECT_FALSE(p.same_block(s0, t0));
  EXPECT_TRUE(testing::partition_matches_relation(p, testing::naive_branching_bisimilarity(both)));
}

TEST(BranchingPartition, InertTauCycleCollapses) {
  LtsBuilder<ActionId> b;
  b.initial("s0").tau("s0", "s1").tau("s1", "s0").transition("s1", "a", "s2");
  const auto lts = b.build();
  const auto p = branching_partition(lts);
  EXPECT_TRUE(p.same_block(0, 1));
  EXPECT_TRUE(testing::partition_matches_relation(p, testing::naive_branching_bisimilarity(lts)));
}

TEST(BranchingPartition, NonInertTauKeepsStatesApart) {
  // s0 can silently commit to s2, which has lost the b option.
  LtsBuilder<ActionId> b;
  b.initial("s0").transition("s0", "a", "s1").transition("s0", "b", "s1").tau("s0", "s2").transition("s2", "a", "s1");
  const auto lts = b.build();
  const auto p = branching_partition(lts);
  EXPECT_FALSE(p.same_block(0, 2));
  EXPECT_TRUE(testing::partition_matches_relation(p, testing::naive_branching_bisimilarity(lts)));
}

TEST(BranchingBisimilar, Examples) {
  EXPECT_TRUE(branching_bisimilar(chain_ab("x"), chain_ab("y")));

  LtsBuilder<ActionId> one, two;
  one.initial("s0").transition("s0", "a", "s1");
  two.initial("t0").transition("t0", "a", "t1").tau("t1", "t2");
  EXPECT_TRUE(branching_bisimilar(one.build(), two.build()));

  EXPECT_FALSE(branching_bisimilar(late_choice(), early_choice()));
}

TEST(BranchingBisimilar, ComparesAllInitialStates) {
  LtsBuilder<ActionId> one, two;
  one.initial("s0").initial("s1").transition("s0", "a", "s0");
  two.initial("t0").transition("t0", "a", "t0");
  EXPECT_FALSE(branching_bisimilar(one.build(), two.build()));
}

TEST(Minimize, AlreadyMinimalChainIsUnchanged) {
  LtsBuilder<ActionId> b;
  b.initial("s0").transition("s0", "a", "s1");
  const auto lts = b.build();
  EXPECT_EQ(minimize(lts), lts);
  EXPECT_TRUE(is_minimal(lts));
}

TEST(Minimize, MergesLeadingInertTau) {
  LtsBuilder<ActionId> b, expected;
  b.initial("s0").tau("s0", "s1").transition("s1", "a", "s2");
  expected.initial("s0").transition("s0", "a", "s2");
  const auto lts = b.build();
  EXPECT_TRUE(testing::naive_branching_bisimilarity(lts)[0][1]);
  EXPECT_EQ(minimize(lts), expected.build());
  EXPECT_FALSE(is_minimal(lts));
}

TEST(Minimize, DropsUnreachableBlocks) {
  LtsBuilder<ActionId> b;
  b.initial("s0").transition("s0", "a", "s0").transition("z", "b", "z");
  EXPECT_EQ(minimize(b.build()).state_count(), 1u);
}

TEST(Minimize, MiddleComponentPortOfStarBecomesSingleLoop) {
  const System star = generate_star(3);
  const auto view = port_view(star, {"m", "2"});
  EXPECT_FALSE(is_tau_free(view));
  LtsBuilder<ActionId> expected;
  expected.initial("m0").transition("m0", "a_m^2", "m0");
  const auto minimal = minimize(view);
  EXPECT_EQ(minimal, expected.build());
  EXPECT_TRUE(is_tau_free(minimal));
}

TEST(TauFreedom, Examples) {
  LtsBuilder<ActionId> with_tau, empty;
  with_tau.initial("s0").transition("s0", "a", "s1").tau("s1", "s0");
  empty.initial("s0");
  EXPECT_FALSE(is_tau_free(with_tau.build()));
  EXPECT_TRUE(is_tau_free(empty.build()));
  EXPECT_TRUE(is_tau_free(minimize(port_view(generate_star(2), {"m", "1"}))));
}

TEST(Conformance, GeneratedExamplesConform) {
  const System ex1 = generate_ex1();
  EXPECT_TRUE(conforms(ex1, {"i", "p"}));
  EXPECT_TRUE(conforms(ex1, {"j", "q"}));
  const System star = generate_star(4);
  for (const auto& p : star.all_ports()) EXPECT_TRUE(conforms(star, p)) << to_string(p);
}

TEST(Conformance, ChainProtocolForLoopingComponentDoesNotConform) {
  System star = generate_star(3);
  LtsBuilder<ActionId> chain;
  chain.initial("b0").transition("b0", "a_1", "b1");
  star.protocols.insert_or_assign(PortRef{"1", "p"}, chain.build());
  EXPECT_FALSE(conforms(star, {"1", "p"}));
  EXPECT_TRUE(conforms(star, {"2", "p"}));
}

TEST(Conformance, UnknownPortIsAQueryError) {
  EXPECT_THROW(conforms(generate_ex1(), {"i", "nope"}), QueryError);
  EXPECT_THROW(port_view(generate_ex1(), {"k", "p"}), QueryError);
}

// Random properties.

class EquivalenceProperties : public ::testing::TestWithParam<int> {};

TEST_P(EquivalenceProperties, PartitionAgreesWithNaiveOracle) {
  testing::Rng rng(static_cast<std::uint64_t>(GetParam()));
  const auto lts = testing::random_lts(rng, {"a", "b"}, {8, testing::chance(rng, 0.5) ? 0.12 : 0.2, true});
  EXPECT_TRUE(testing::partition_matches_relation(branching_partition(lts), testing::naive_branching_bisimilarity(lts)))
      << emit_dot(lts);
}

TEST_P(EquivalenceProperties, MinimizeLaws) {
  testing::Rng rng(static_cast<std::uint64_t>(GetParam()) + 7777);
  const auto lts = testing::random_lts(rng, {"a", "b"}, {6, 0.2, true});
  const auto minimal = minimize(lts);
  EXPECT_TRUE(branching_bisimilar(lts, minimal));
  EXPECT_EQ(minimize(minimal), minimal);
  EXPECT_LE(minimal.state_count(), lts.state_count());
  EXPECT_EQ(minimal.state_count() == reachable_states(lts).size(),
            [&] {
              // Discrete on reachable states.
              const auto p = branching_partition(lts);
              std::set<BlockId> blocks;
              for (StateId s : reachable_states(lts)) blocks.insert(p.block_of[s]);
              return blocks.size() == reachable_states(lts).size();
            }());
}

TEST_P(EquivalenceProperties, BisimilarityIsAnEquivalence) {
  testing::Rng rng(static_cast<std::uint64_t>(GetParam()) + 31337);
  const auto a = testing::random_lts(rng, {"a"}, {4, 0.25, true});
  const auto b = testing::chance(rng, 0.5) ? minimize(a) : testing::random_lts(rng, {"a"}, {4, 0.25, true}, "t");
  const auto c = testing::chance(rng, 0.5) ? hide(b, {"a"}) : testing::random_lts(rng, {"a"}, {4, 0.25, true}, "u");
  EXPECT_TRUE(branching_bisimilar(a, a));
  EXPECT_EQ(branching_bisimilar(a, b), branching_bisimilar(b, a));
  if (branching_bisimilar(a, b) && branching_bisimilar(b, c)) {
    EXPECT_TRUE(branching_bisimilar(a, c));
  }
}

INSTANTIATE_TEST_SUITE_P(Random, EquivalenceProperties, ::testing::Range(0, 100));

} // namespace
} // namespace pis
