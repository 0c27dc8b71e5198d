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

#include "optigraph/sequential.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "optigraph/benders.hpp"
#include "optigraph/fixtures.hpp"
#include "test_util.hpp"

namespace optigraph {
namespace {

// A: min x, x in [0, 2]. B: min 2y, y >= 0. Link x + y >= 3.
Graph two_node() {
  Graph g("pair");
  Graph a("A");
  Node& na = a.add_node("a");
  const VarRef x = na.add_variable("x", 0, 2);
  na.set_objective(LinearExpr{{x, 1}});
  Graph b("B");
  Node& nb = b.add_node("b");
  const VarRef y = nb.add_variable("y", 0);
  nb.set_objective(LinearExpr{{y, 2}});
  g.add_subgraph(std::move(a));
  g.add_subgraph(std::move(b));
  g.add_link_constraint(LinearExpr{{x, 1}, {y, 1}}, Sense::kGreaterEqual, 3);
  return g;
}

SequentialOptions slacks() {
  SequentialOptions o;
  o.add_slacks = true;
  return o;
}

TEST(Sequential, TwoNodeToy) {
  const Graph g = two_node();
  EXPECT_NEAR(testing::monolithic(g), 4.0, 1e-9);
  const SequentialReport r = sequential_solve(g, {"A", "B"});
  EXPECT_NEAR(r.objective, 6.0, 1e-9);
  EXPECT_NEAR(r.solution.at({"a", "x"}), 0.0, 1e-9);
  EXPECT_NEAR(r.solution.at({"b", "y"}), 3.0, 1e-9);
  EXPECT_NEAR(r.costs.at("B"), 6.0, 1e-9);
  EXPECT_ERRC(sequential_solve(g, {"B", "A"}), Errc::kSubproblemInfeasible);
  // With slacks the reversed order pays the penalty for the missing unit.
  const SequentialReport s = sequential_solve(g, {"B", "A"}, slacks());
  EXPECT_NEAR(s.objective, 2.0 + 1e6, 1e-6);
  EXPECT_NEAR(relaxed_parallel_bound(g).objective, 0.0, 1e-12);
}

TEST(Sequential, InvalidOrders) {
  const Graph g = two_node();
  EXPECT_ERRC(sequential_solve(g, {"A"}), Errc::kInvalidOrder);
  EXPECT_ERRC(sequential_solve(g, {"A", "A"}), Errc::kInvalidOrder);
  EXPECT_ERRC(sequential_solve(g, {"A", "B", "C"}), Errc::kInvalidOrder);
  EXPECT_ERRC(sequential_solve(storage_fixture(), {"planning"}),
              Errc::kLocalNodesAtRoot);
}

TEST(Sequential, SingleSubgraphIsMonolithic) {
  const Graph flat = storage_fixture();
  Partition p;
  p.blocks.emplace_back();
  for (const Node* n : flat.all_nodes()) p.blocks[0].push_back(n->id());
  const Graph g = apply_partition(flat, p);
  const double mono = testing::monolithic(flat);
  const std::string id = g.local_subgraphs()[0]->id();
  EXPECT_LE(testing::rel_diff(sequential_solve(g, {id}).objective, mono), 1e-9);
  EXPECT_LE(testing::rel_diff(relaxed_parallel_bound(g).objective, mono), 1e-9);
}

TEST(Sequential, NoLinksMeansBoundIsExact) {
  Graph g = two_node();
  g.remove_local_edge(g.local_edges()[0]->id);
  EXPECT_NEAR(relaxed_parallel_bound(g).objective, testing::monolithic(g), 1e-12);
}

struct Case {
  Graph graph;
  std::string root;
};

std::vector<Case> fixtures() {
  return {{storage_two_block(), "planning"},
          {chain3_milp(), "g2"},
          {mini_cem(), "planning"},
          {mini_pcm(), "pcm1"},
          {mini_pcm(true), "pcm2"}};
}

TEST(Sequential, SandwichOnFixtures) {
  for (const Case& c : fixtures()) {
    const double mono = testing::monolithic(c.graph);
    const double lb = relaxed_parallel_bound(c.graph, slacks()).objective;
    auto order = bfs_order(c.graph, c.root);
    const double ub = sequential_solve(c.graph, order, slacks()).objective;
    const double tol = 1e-9 * std::max(1.0, std::abs(mono));
    EXPECT_LE(lb, mono + tol) << c.graph.id();
    EXPECT_LE(mono, ub + tol) << c.graph.id();
    std::reverse(order.begin(), order.end());
    EXPECT_LE(mono, sequential_solve(c.graph, order, slacks()).objective + tol)
        << c.graph.id() << " reversed";
  }
}

TEST(Sequential, HyperedgeEnforcedInLatestSubgraph) {
  const Graph g = mini_cem(false);
  const double mono = testing::monolithic(g);
  for (const auto& order :
       std::vector<std::vector<std::string>>{{"planning", "ops1", "ops2", "ops3"},
                                             {"ops3", "planning", "ops2", "ops1"}}) {
    const SequentialReport r = sequential_solve(g, order, slacks());
    EXPECT_GE(r.objective, mono - 1e-9 * mono);
    const StandardFormProblem p = flatten(g);
    std::vector<double> x(p.num_cols());
    for (int j = 0; j < p.num_cols(); ++j) x[j] = r.solution.at(p.columns[j]);
    EXPECT_LE(p.max_violation(x), 1e-6);
  }
  EXPECT_LE(relaxed_parallel_bound(g, slacks()).objective, mono + 1e-9);
}

TEST(Sequential, MatchesCutFreeForwardPass) {
  for (const Case& c : fixtures()) {
    BendersConfig cfg;
    cfg.add_slacks = true;
    BendersAlgorithm alg(c.graph, c.root, cfg);
    const ForwardPassResult fp = alg.forward_pass();
    const SequentialReport r =
        sequential_solve(c.graph, alg.tree().order, slacks());
    EXPECT_EQ(fp.ub, r.objective) << c.graph.id();
    for (const auto& [g, cost] : fp.costs) EXPECT_EQ(r.costs.at(g), cost) << g;
  }
}

TEST(Sequential, ParallelBoundIsDeterministic) {
  SequentialOptions par = slacks();
  par.parallel = true;
  for (const Case& c : fixtures()) {
    const SequentialReport a = relaxed_parallel_bound(c.graph, slacks());
    const SequentialReport b = relaxed_parallel_bound(c.graph, par);
    EXPECT_EQ(a.objective, b.objective);
    EXPECT_EQ(a.solution, b.solution);
  }
}

}  // namespace
}  // namespace optigraph
