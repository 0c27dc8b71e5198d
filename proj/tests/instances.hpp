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

#ifndef OPTIGRAPH_TESTS_INSTANCES_HPP_
#define OPTIGRAPH_TESTS_INSTANCES_HPP_

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "optigraph/benders.hpp"
#include "optigraph/model.hpp"
#include "optigraph/transform.hpp"

namespace optigraph::testing {

// Flat graph of `nodes` nodes with 1-2 bounded variables each, a node row
// per node and random two-node links. Small enough for exact solves.
inline Graph random_flat_graph(std::mt19937_64& rng, int nodes, int links) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> c(1, 5);
  Graph g("r");
  for (int i = 0; i < nodes; ++i) {
    Node& n = g.add_node("v" + std::to_string(i));
    const VarRef x = n.add_variable("x", 0, 2 + c(rng));
    LinearExpr obj{{x, static_cast<double>(c(rng))}};
    LinearExpr row{{x, 1}};
    if (u(rng) < 0.5) {
      const VarRef y = n.add_variable("y", -c(rng), c(rng));
      obj.add(y, c(rng) - 3.0);
      row.add(y, 1);
    }
    n.add_constraint(row, Sense::kGreaterEqual, -1.0 + c(rng) * 0.5);
    n.set_objective(obj);
  }
  for (int k = 0; k < links; ++k) {
    const int a = static_cast<int>(u(rng) * nodes);
    int b = static_cast<int>(u(rng) * (nodes - 1));
    if (b >= a) ++b;
    const double rhs = 1 + c(rng);
    g.add_link_constraint(
        LinearExpr{{{"v" + std::to_string(a), "x"}, 1.0},
                   {{"v" + std::to_string(b), "x"}, c(rng) * 0.5}},
        u(rng) < 0.8 ? Sense::kGreaterEqual : Sense::kLessEqual,
        u(rng) < 0.8 ? rhs : rhs + 10);
  }
  return g;
}

// Three one-node subgraphs linked pairwise.
inline Graph triangle() {
  Graph g("tri");
  const double costs[3] = {1, 2, 3};
  for (int i = 1; i <= 3; ++i) {
    Graph s("G" + std::to_string(i));
    Node& n = s.add_node("m" + std::to_string(i));
    const VarRef x = n.add_variable("x", 0, 4);
    n.set_objective(LinearExpr{{x, costs[i - 1]}});
    g.add_subgraph(std::move(s));
  }
  g.add_link_constraint(LinearExpr{{{"m1", "x"}, 1}, {{"m2", "x"}, 1}},
                        Sense::kGreaterEqual, 1);
  g.add_link_constraint(LinearExpr{{{"m2", "x"}, 1}, {{"m3", "x"}, 1}},
                        Sense::kGreaterEqual, 1);
  g.add_link_constraint(LinearExpr{{{"m1", "x"}, 2}, {{"m3", "x"}, 1}},
                        Sense::kGreaterEqual, 3);
  return g;
}

// chain3_milp with x relaxed to [0, 1].
inline Graph chain3_lp() {
  Graph graph("chain3_lp");
  for (int i = 1; i <= 3; ++i) {
    Node& node = graph.add_node("n" + std::to_string(i));
    const VarRef x = node.add_variable("x", 0, 1);
    const VarRef y = node.add_variable("y", 0);
    node.add_constraint(LinearExpr{{x, 1}, {y, 1}}, Sense::kGreaterEqual, 1.3);
    node.set_objective(LinearExpr{{x, 1}, {y, 2}});
  }
  for (int i = 1; i <= 2; ++i) {
    graph.add_link_constraint(
        LinearExpr{{{"n" + std::to_string(i), "x"}, 1},
                   {{"n" + std::to_string(i + 1), "y"}, 1}},
        Sense::kGreaterEqual, i);
  }
  Partition p;
  p.blocks = {{"n1"}, {"n2"}, {"n3"}};
  p.names = {"g1", "g2", "g3"};
  return apply_partition(graph, p);
}

// Random six-node instance with a three-block nested partition; v0-v2 is an
// A-B link and v1-v4 an A-V link.
struct RandomCase {
  Graph flat;
  Partition partition;
};

inline RandomCase random_case(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> extra(0, 4);
  RandomCase rc{random_flat_graph(rng, 6, extra(rng)), {}};
  // Guaranteed A-B and A-V links for the reroute step.
  rc.flat.add_link_constraint(LinearExpr{{{"v0", "x"}, 1}, {{"v2", "x"}, 1}},
                              Sense::kGreaterEqual, 2);
  rc.flat.add_link_constraint(LinearExpr{{{"v1", "x"}, 1}, {{"v4", "x"}, 2}},
                              Sense::kGreaterEqual, 1);
  rc.partition.blocks = {{"v0", "v1"}, {"v2", "v3"}, {"v4", "v5"}};
  rc.partition.names = {"A", "B", "V"};
  Partition split;
  split.blocks = {{"v0"}, {"v1"}};
  rc.partition.sub_partitions = {split, Partition{}, Partition{}};
  return rc;
}

// Random point in the copy domain of g (integer copies get integer values).
inline std::vector<double> random_anchor(const BendersAlgorithm& alg,
                                  const std::string& g, std::mt19937_64& rng) {
  const Subproblem& sp = alg.subproblem(g);
  std::vector<double> a;
  for (int col : sp.copy_columns) {
    const double lo = sp.problem.lower[col];
    const double hi = std::isfinite(sp.problem.upper[col]) ? sp.problem.upper[col]
                                                             : lo + 5.0;
    if (sp.problem.integrality[col] != Integrality::kContinuous) {
      std::uniform_int_distribution<int> d(static_cast<int>(lo),
                                           static_cast<int>(hi));
      a.push_back(d(rng));
    } else {
      a.push_back(std::uniform_real_distribution<double>(lo, hi)(rng));
    }
  }
  return a;
}

}  // namespace optigraph::testing

#endif  // OPTIGRAPH_TESTS_INSTANCES_HPP_
