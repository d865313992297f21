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

#include "pis/bench.hpp"
#include "pis/dot.hpp"
#include "pis/format.hpp"
#include "pis/generators.hpp"
#include "support/random_systems.hpp"

#include <gtest/gtest.h>

namespace pis {
namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + needle.size())) ++n;
  return n;
}

constexpr const char* kTiny = R"(system tiny
# one component that loops
component c
port c.p alphabet a
behavior c init s0
behavior c trans s0 a s0
protocol c.p init q0
protocol c.p trans q0 a q0
interaction a
)";

TEST(Parse, TinySystem) {
  const auto result = parse_system(kTiny);
  ASSERT_TRUE(result.ok());
  const System& sys = *result.system;
  EXPECT_EQ(sys.name, "tiny");
  EXPECT_EQ(sys.components, std::set<ComponentId>{"c"});
  EXPECT_EQ(sys.port_alphabet({"c", "p"}), std::set<ActionId>{"a"});
  EXPECT_EQ(sys.behaviors.at("c").transition_count(), 1u);
  EXPECT_EQ(sys.interactions, std::set<Interaction>{Interaction{"a"}});
}

TEST(Parse, MissingInitNamesTheComponent) {
  const auto result = parse_system("component c\nport c.p alphabet a\nbehavior c trans s0 a s0\ninteraction a\n"
                                   "protocol c.p init q0\nprotocol c.p trans q0 a q0\n");
  ASSERT_FALSE(result.ok());
  bool named = false;
  for (const auto& d : result.errors) named = named || (d.message.find("init") != std::string::npos &&
                                                         d.message.find('c') != std::string::npos);
  EXPECT_TRUE(named);
}

TEST(Parse, DuplicateActionIsADisjointnessError) {
  const auto result = parse_system(R"(component c
component d
port c.p alphabet a
port d.q alphabet a
behavior c init s0
behavior d init t0
protocol c.p init q0
protocol d.q init r0
interaction a
)");
  ASSERT_FALSE(result.ok());
  ASSERT_FALSE(result.errors.empty());
  EXPECT_GT(result.errors[0].line, 0u);
  bool disjoint = false;
  for (const auto& d : result.errors) disjoint = disjoint || d.message.find("c.p") != std::string::npos;
  EXPECT_TRUE(disjoint);
}

TEST(Parse, TauIsReserved) {
  EXPECT_FALSE(parse_system("component c\nport c.p alphabet tau\n").ok());
  EXPECT_FALSE(parse_system("component c\nport c.p alphabet a\nbehavior c init s\nbehavior c trans s tau s\n").ok());
}

TEST(Parse, OrderingAndSyntaxErrorsCarryPositions) {
  const auto early = parse_system("port c.p alphabet a\ncomponent c\n");
  ASSERT_FALSE(early.ok());
  EXPECT_EQ(early.errors[0].line, 1u);
  const auto junk = parse_system("component c\nfrobnicate x\n");
  ASSERT_FALSE(junk.ok());
  auto keyword = std::find_if(junk.errors.begin(), junk.errors.end(),
                              [](const Diagnostic& d) { return d.message.find("frobnicate") != std::string::npos; });
  ASSERT_NE(keyword, junk.errors.end());
  EXPECT_EQ(keyword->line, 2u);
  EXPECT_EQ(keyword->column, 1u);
}

TEST(Render, RoundTripsGeneratedSystems) {
  for (const System& sys : {generate_ex1(), generate_star(3), generate_ring(4), generate_pair_mismatch()}) {
    const std::string text = render_system(sys);
    const auto parsed = parse_system(text);
    ASSERT_TRUE(parsed.ok()) << text;
    EXPECT_EQ(*parsed.system, sys);
    EXPECT_EQ(render_system(*parsed.system), text);
  }
}

TEST(Dot, CommGraphOfEx1) {
  const std::string dot = emit_dot(comm_graph(generate_ex1()));
  EXPECT_EQ(dot.rfind("graph comm {", 0), 0u);
  EXPECT_EQ(count(dot, "[shape="), 4u);
  EXPECT_EQ(count(dot, " -- "), 3u);
  EXPECT_EQ(dot, emit_dot(comm_graph(generate_ex1())));
}

TEST(Dot, GraphWithoutEdges) {
  System sys;
  sys.add_component("solo");
  const std::string dot = emit_dot(comm_graph(sys));
  EXPECT_EQ(count(dot, " -- "), 0u);
  EXPECT_EQ(dot, "graph comm {\n  \"solo\" [shape=ellipse];\n}\n");
}

TEST(Dot, SelfLoopLts) {
  LtsBuilder<ActionId> b;
  b.initial("s").transition("s", "a", "s").tau("s", "s");
  const std::string dot = emit_dot(b.build());
  EXPECT_EQ(dot, "digraph lts {\n"
                 "  \"s\";\n"
                 "  __init0 [shape=point];\n"
                 "  __init0 -> \"s\";\n"
                 "  \"s\" -> \"s\" [label=\"tau\", style=dashed];\n"
                 "  \"s\" -> \"s\" [label=\"a\"];\n"
                 "}\n");
}

TEST(Generators, AreDeterministicAndValid) {
  EXPECT_EQ(generate_ex1(), generate_ex1());
  EXPECT_EQ(generate_star(5), generate_star(5));
  EXPECT_EQ(generate_ring(5), generate_ring(5));
  EXPECT_THROW(generate_star(0), QueryError);
  EXPECT_THROW(generate_ring(2), QueryError);
  EXPECT_EQ(generate_star(3).components.size(), 4u);
}

TEST(Bench, SingleStar) {
  const auto rows = bench_scaling({1});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].theorem_cost, 2u);
  EXPECT_EQ(rows[0].baseline_cost, 2u);
  const std::string csv = render_csv(rows);
  EXPECT_EQ(csv.rfind("n,theorem_cost,baseline_cost,theorem_ms,baseline_ms\n1,2,2,", 0), 0u);
  EXPECT_THROW(bench_scaling({}), QueryError);
}

class FrontendProperties : public ::testing::TestWithParam<int> {};

TEST_P(FrontendProperties, RandomSystemsRoundTrip) {
  testing::Rng rng(static_cast<std::uint64_t>(GetParam()));
  const System sys = GetParam() % 2 ? testing::random_system(rng) : testing::random_tree_system(rng);
  const auto parsed = parse_system(render_system(sys));
  ASSERT_TRUE(parsed.ok()) << render_system(sys);
  EXPECT_EQ(*parsed.system, sys);
}

INSTANTIATE_TEST_SUITE_P(Random, FrontendProperties, ::testing::Range(0, 50));

} // namespace
} // namespace pis
