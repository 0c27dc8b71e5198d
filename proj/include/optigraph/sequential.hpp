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

// Approximations over the local subgraphs of a graph.
//
// sequential_solve visits the subgraphs in a given order. Each parent-level
// edge is enforced in the last of its subgraphs to be visited, with the
// variables of earlier subgraphs fixed at their solved values. The sum of
// the true costs is a feasible upper bound.
//
// relaxed_parallel_bound drops every edge between subgraphs and sums the
// independent optima, which is a lower bound.

#ifndef OPTIGRAPH_SEQUENTIAL_HPP_
#define OPTIGRAPH_SEQUENTIAL_HPP_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "optigraph/model.hpp"
#include "optigraph/solver.hpp"

namespace optigraph {

struct SequentialOptions {
  bool add_slacks = false;
  double slack_penalty = 1e6;
  // relaxed_parallel_bound only.
  bool parallel = false;
  // Defaults to a BuiltinSolver.
  std::shared_ptr<const Solver> solver;
};

struct SequentialReport {
  double objective = 0.0;
  std::vector<std::string> order;
  // True cost per subgraph; slack penalties count, the objective constant
  // goes to the first subgraph.
  std::map<std::string, double> costs;
  std::map<VarRef, double> solution;
  double seconds = 0.0;
};

// `order` must list every local subgraph exactly once (kInvalidOrder).
// Throws kNoSubgraphs, kLocalNodesAtRoot, kOverlapUnsupported and
// kSubproblemInfeasible.
SequentialReport sequential_solve(const Graph& graph,
                                  const std::vector<std::string>& order,
                                  const SequentialOptions& options = {});

// Throws as sequential_solve.
SequentialReport relaxed_parallel_bound(const Graph& graph,
                                        const SequentialOptions& options = {});

// Subgraph ids in breadth-first order from `root` over the tree of
// subgraphs. Requires a structure valid for decomposition.
std::vector<std::string> bfs_order(const Graph& graph, const std::string& root);

}  // namespace optigraph

#endif  // OPTIGRAPH_SEQUENTIAL_HPP_
