// Copyright 2026 The OptiGraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "optigraph/transform.hpp"

#include <gtest/gtest.h>

#include <random>

#include "optigraph/fixtures.hpp"
#include "test_util.hpp"

namespace optigraph {
namespace {

using testing::monolithic;
using testing::random_case;
using testing::RandomCase;
using testing::rel_diff;
using testing::triangle;

// Four nodes x_i >= 0, min sum x_i, links x_i + x_{i+1} >= 1 around a ring.
Graph ring4(const std::string& id = "g", const std::string& prefix = "n") {
  Graph g(id);
  for (int i = 1; i <= 4; ++i) {
    Node& n = g.add_node(prefix + std::to_string(i));
    const VarRef x = n.add_variable("x", 0);
    n.set_objective(LinearExpr{{x, 1}});
  }
  for (int i = 1; i <= 4; ++i) {
    const int j = i % 4 + 1;
    g.add_link_constraint(LinearExpr{{{prefix + std::to_string(i), "x"}, 1},
                                     {{prefix + std::to_string(j), "x"}, 1}},
                          Sense::kGreaterEqual, 1);
  }
  return g;
}

size_t count_rows(const Graph& g) { return flatten(g).rhs.size(); }

TEST(ValidatePartition, MembershipVector) {
  const Graph g = ring4();
  const Partition p = validate_partition(g, std::vector<int>{1, 1, 2, 2});
  ASSERT_EQ(p.blocks.size(), 2u);
  EXPECT_EQ(p.blocks[0], (std::vector<std::string>{"n1", "n2"}));
  EXPECT_EQ(p.blocks[1], (std::vector<std::string>{"n3", "n4"}));
  EXPECT_EQ(validate_partition(g, std::vector<int>{1, 1, 1, 1}).blocks.size(),
            1u);
}

TEST(ValidatePartition, Errors) {
  const Graph g = ring4();
  EXPECT_ERRC(validate_partition(g, std::map<std::string, int>{
                                        {"n1", 1}, {"n2", 1}, {"n3", 2}}),
              Errc::kNotCovering);
  EXPECT_ERRC(validate_partition(g, std::vector<int>{1, 1, 3, 3}),
              Errc::kEmptyBlock);
  EXPECT_ERRC(validate_partition(g, std::vector<int>{0, 1, 1, 1}),
              Errc::kPartitionInvalid);
  EXPECT_ERRC(validate_partition(g, std::vector<int>{1, 1, 2}),
              Errc::kNotCovering);
  Partition dup;
  dup.blocks = {{"n1", "n2"}, {"n2", "n3", "n4"}};
  EXPECT_ERRC(check_partition(g, dup), Errc::kNotDisjoint);
  Partition extra;
  extra.blocks = {{"n1", "n2", "n3", "n4", "n9"}};
  EXPECT_ERRC(check_partition(g, extra), Errc::kNotCovering);
}

TEST(ApplyPartition, RingIntoTwoBlocks) {
  Graph g = ring4();
  const size_t rows = count_rows(g);
  const Partition p = validate_partition(g, std::vector<int>{1, 1, 2, 2});
  const Graph out = apply_partition(g, p);
  ASSERT_EQ(out.local_subgraphs().size(), 2u);
  EXPECT_EQ(out.local_subgraphs()[0]->local_edges().size(), 1u);
  EXPECT_EQ(out.local_subgraphs()[1]->local_edges().size(), 1u);
  EXPECT_EQ(out.local_edges().size(), 2u);
  EXPECT_EQ(out.all_nodes().size(), 4u);
  EXPECT_EQ(count_rows(out), rows);
  EXPECT_NEAR(monolithic(out), monolithic(g), 1e-12);
  // The input is untouched in assemble mode.
  EXPECT_TRUE(g.local_subgraphs().empty());
  apply_partition(g, p, PartitionMode::kInPlace);
  EXPECT_EQ(g.local_subgraphs().size(), 2u);
  EXPECT_EQ(g.local_subgraphs()[0]->id(), "g_b1");
  EXPECT_ERRC(apply_partition(g, p), Errc::kPartitionInvalid);
}

TEST(ApplyPartition, SingletonBlocks) {
  const Graph g = ring4();
  const Graph out =
      apply_partition(g, validate_partition(g, std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(out.local_subgraphs().size(), 4u);
  EXPECT_EQ(out.local_edges().size(), 4u);
  for (const Graph* s : out.local_subgraphs()) {
    EXPECT_TRUE(s->local_edges().empty());
  }
}

TEST(ApplyPartition, NestedSubPartitions) {
  const Graph g = ring4();
  Partition p;
  p.blocks = {{"n1", "n2"}, {"n3", "n4"}};
  p.names = {"left", "right"};
  Partition inner;
  inner.blocks = {{"n1"}, {"n2"}};
  p.sub_partitions = {inner, Partition{}};
  const Graph out = apply_partition(g, p);
  EXPECT_EQ(out.depth(), 2);
  EXPECT_EQ(out.enumerate(EnumerateKind::kAllSubgraphs),
            (std::vector<std::string>{"left", "left_b1", "left_b2", "right"}));
  EXPECT_EQ(out.find_subgraph("left")->local_edges().size(), 1u);
}

TEST(CondensedTopology, Chain3IsAPath) {
  const Graph g = chain3_milp();
  const CondensedTopology t = condensed_topology(g);
  EXPECT_EQ(t.vertices, (std::vector<std::string>{"g1", "g2", "g3"}));
  EXPECT_EQ(t.adjacency.size(), 2u);
  EXPECT_TRUE(t.connected());
  EXPECT_TRUE(t.acyclic());
  EXPECT_TRUE(t.orphan_edges.empty());
  EXPECT_NE(t.to_dot().find("\"g1\" -- \"g2\""), std::string::npos);
}

TEST(CondensedTopology, RingPairHasMultiplicityTwo) {
  const Graph g = ring4();
  const Graph out =
      apply_partition(g, validate_partition(g, std::vector<int>{1, 1, 2, 2}));
  const CondensedTopology t = condensed_topology(out);
  ASSERT_EQ(t.adjacency.size(), 1u);
  EXPECT_EQ(t.adjacency.begin()->second, 2);
  EXPECT_TRUE(t.acyclic());
}

TEST(CondensedTopology, HyperedgeIsOrphan) {
  Graph g("g");
  for (int i = 1; i <= 3; ++i) {
    Graph s("s" + std::to_string(i));
    s.add_node("n" + std::to_string(i)).add_variable("x", 0, 1);
    g.add_subgraph(std::move(s));
  }
  g.add_link_constraint(
      LinearExpr{{{"n1", "x"}, 1}, {{"n2", "x"}, 1}, {{"n3", "x"}, 1}},
      Sense::kLessEqual, 2);
  EXPECT_EQ(condensed_topology(g).orphan_edges.size(), 1u);
  EXPECT_ERRC(condensed_topology(Graph("flat")), Errc::kNoSubgraphs);
}

TEST(CondensedTopology, RingOfFourSubgraphsIsCyclic) {
  const Graph g = ring4();
  const Graph out =
      apply_partition(g, validate_partition(g, std::vector<int>{1, 2, 3, 4}));
  EXPECT_FALSE(condensed_topology(out).acyclic());
}

TEST(Aggregate, WholeGraph) {
  const Graph g = chain3_milp();
  const AggregateResult a = aggregate(g);
  EXPECT_EQ(a.graph.all_nodes().size(), 1u);
  EXPECT_TRUE(a.graph.all_edges().empty());
  EXPECT_EQ(a.graph.all_nodes()[0]->id(), "chain3_agg");
  EXPECT_EQ(a.reference_map.at(VarRef{"n2", "x"}),
            (VarRef{"chain3_agg", "n2.x"}));
  EXPECT_NEAR(monolithic(a.graph), monolithic(g), 1e-12);
  const AggregateResult again = aggregate(a.graph);
  EXPECT_EQ(again.graph.all_nodes()[0]->variables().size(), 6u);
  EXPECT_NEAR(monolithic(again.graph), monolithic(g), 1e-12);
  EXPECT_ERRC(aggregate(Graph("empty")), Errc::kEmptyModel);
}

// Top graph with a local node and two partitioned rings, each with an extra
// local node.
Graph layered() {
  Graph g("g");
  for (int k = 1; k <= 2; ++k) {
    const std::string id = "g" + std::to_string(k);
    Graph ring = ring4(id, id + "n");
    Graph sub = apply_partition(
        ring, validate_partition(ring, std::vector<int>{1, 1, 2, 2}));
    Node& extra = sub.add_node("n_" + id);
    const VarRef e = extra.add_variable("x", 0, 5);
    extra.set_objective(LinearExpr{{e, -1}});
    g.add_subgraph(std::move(sub));
  }
  Node& top = g.add_node("n_g");
  const VarRef t = top.add_variable("x", 0, 3);
  top.set_objective(LinearExpr{{t, 1}});
  g.add_link_constraint(LinearExpr{{t, 1}, {{"g1n1", "x"}, 1}},
                        Sense::kGreaterEqual, 2);
  return g;
}

TEST(AggregateToDepth, Levels) {
  const Graph g = layered();
  ASSERT_EQ(g.depth(), 2);
  const double ref = monolithic(g);

  const AggregateResult l0 = aggregate_to_depth(g, 0);
  EXPECT_EQ(l0.graph.enumerate(EnumerateKind::kLocalNodes),
            (std::vector<std::string>{"n_g", "g1", "g2"}));
  EXPECT_TRUE(l0.graph.local_subgraphs().empty());
  EXPECT_NEAR(monolithic(l0.graph), ref, 1e-12);

  const AggregateResult l1 = aggregate_to_depth(g, 1);
  EXPECT_EQ(l1.graph.enumerate(EnumerateKind::kLocalNodes),
            (std::vector<std::string>{"n_g"}));
  const Graph* g1 = l1.graph.find_subgraph("g1");
  ASSERT_NE(g1, nullptr);
  EXPECT_EQ(g1->enumerate(EnumerateKind::kLocalNodes),
            (std::vector<std::string>{"n_g1", "g1_b1", "g1_b2"}));
  EXPECT_EQ(l1.reference_map.at(VarRef{"g1n3", "x"}),
            (VarRef{"g1_b2", "g1n3.x"}));
  EXPECT_NEAR(monolithic(l1.graph), ref, 1e-12);

  EXPECT_ERRC(aggregate_to_depth(g, 2), Errc::kLevelOutOfRange);
  EXPECT_ERRC(aggregate_to_depth(g, -1), Errc::kLevelOutOfRange);
}

TEST(RerouteLink, TriangleBecomesPath) {
  Graph g = triangle();
  const double ref = monolithic(g);
  EXPECT_FALSE(condensed_topology(g).acyclic());
  const std::string edge = g.local_edges()[2]->id;
  const size_t cols = flatten(g).num_cols();
  const size_t rows = count_rows(g);
  const RerouteResult r = reroute_link(g, edge, "G2");
  EXPECT_EQ(r.new_variables.size(), 1u);
  EXPECT_EQ(r.new_rows, 1);
  EXPECT_EQ(r.new_variables[0], (VarRef{"m2", "m1.x"}));
  EXPECT_EQ(flatten(g).num_cols(), cols + 1);
  EXPECT_EQ(count_rows(g), rows + 1);
  const CondensedTopology t = condensed_topology(g);
  EXPECT_TRUE(t.acyclic());
  EXPECT_TRUE(t.connected());
  EXPECT_EQ(t.adjacency.at({"G1", "G2"}), 1);
  EXPECT_EQ(g.local_edges()[0]->constraints.size(), 2u);
  EXPECT_NEAR(monolithic(g), ref, 1e-12);
}

TEST(RerouteLink, IntoTheOtherEndpoint) {
  Graph g = triangle();
  const double ref = monolithic(g);
  const std::string edge = g.local_edges()[2]->id;
  reroute_link(g, edge, "G3", std::string("G1"));
  // G1 still reaches G3 through the copy link.
  EXPECT_EQ(condensed_topology(g).adjacency.at({"G1", "G3"}), 1);
  EXPECT_NEAR(monolithic(g), ref, 1e-12);
  // The rewritten row now lives inside G3.
  EXPECT_EQ(g.find_node("m3")->constraints().size(), 1u);
}

TEST(RerouteLink, Errors) {
  Graph g = triangle();
  EXPECT_ERRC(reroute_link(g, "nope", "G2"), Errc::kNotParentEdge);
  Graph chain = chain3_milp();
  // g1 and g3 are not linked, so g3 cannot take over a g1 link.
  const std::string e12 = chain.local_edges()[0]->id;
  EXPECT_ERRC(reroute_link(chain, e12, "g3", std::string("g1")),
              Errc::kSubgraphNotAdjacent);
}

TEST(RerouteLink, BudgetLiftingGivesStar) {
  const Graph g = mini_cem();
  const CondensedTopology t = condensed_topology(g);
  EXPECT_TRUE(t.orphan_edges.empty());
  EXPECT_EQ(t.adjacency.size(), 3u);
  for (const auto& [pair, count] : t.adjacency) {
    EXPECT_TRUE(pair.first == "planning" || pair.second == "planning");
  }
  EXPECT_TRUE(t.acyclic());
  EXPECT_TRUE(t.connected());
  const Node* plan = g.find_node("plan");
  EXPECT_EQ(plan->variables().size(), 5u);
  EXPECT_EQ(plan->constraints().size(), 1u);
}

TEST(RerouteLink, BudgetLiftingPreservesOptimum) {
  const Graph unlifted = mini_cem(false);
  EXPECT_EQ(condensed_topology(unlifted).orphan_edges.size(), 1u);
  EXPECT_LE(rel_diff(monolithic(mini_cem()), monolithic(unlifted)), 1e-9);
}

TEST(TransformProperty, OptimumInvariantOnRandomInstances) {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    RandomCase rc = random_case(rng);
    const SolveResult base = solve_lp(flatten(rc.flat));
    if (base.status != SolveStatus::kOptimal) continue;
    ++checked;
    const double ref = base.objective;
    Graph parted = apply_partition(rc.flat, rc.partition);
    EXPECT_EQ(parted.all_nodes().size(), rc.flat.all_nodes().size());
    EXPECT_EQ(count_rows(parted), count_rows(rc.flat));
    EXPECT_LE(rel_diff(monolithic(parted), ref), 1e-8) << trial;
    EXPECT_LE(rel_diff(monolithic(aggregate(parted).graph), ref), 1e-8);
    EXPECT_LE(rel_diff(monolithic(aggregate_to_depth(parted, 0).graph), ref),
              1e-8);
    EXPECT_LE(rel_diff(monolithic(aggregate_to_depth(parted, 1).graph), ref),
              1e-8);
    std::string edge;
    for (const Edge* e : parted.local_edges()) {
      if (e->nodes == std::vector<std::string>{"v0", "v2"}) edge = e->id;
    }
    ASSERT_FALSE(edge.empty());
    const int cols = flatten(parted).num_cols();
    const size_t rows = count_rows(parted);
    const RerouteResult r = reroute_link(parted, edge, "V", std::string("A"));
    EXPECT_EQ(static_cast<int>(r.new_variables.size()), r.new_rows);
    EXPECT_EQ(flatten(parted).num_cols(), cols + r.new_rows);
    EXPECT_EQ(count_rows(parted), rows + r.new_rows);
    EXPECT_LE(rel_diff(monolithic(parted), ref), 1e-8) << trial;
  }
  EXPECT_GE(checked, 60);
}

}  // namespace
}  // namespace optigraph
