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

// Per-subgraph problems shared by the decomposition drivers.
//
// A subproblem holds the columns and rows of one local subgraph plus a set of
// relocated parent-level rows. Variables of other subgraphs that appear in a
// relocated row are replaced by copy columns, which are pinned to given
// values by fixing rows appended at solve time.

#ifndef OPTIGRAPH_SUBPROBLEM_HPP_
#define OPTIGRAPH_SUBPROBLEM_HPP_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "optigraph/model.hpp"
#include "optigraph/solver.hpp"
#include "optigraph/standard_form.hpp"
#include "optigraph/transform.hpp"

namespace optigraph {

// Node ids of instrumentation columns. They contain '$' so they cannot clash
// with model node ids.
inline constexpr std::string_view kCopyNode = "$copy";
inline constexpr std::string_view kSlackNode = "$slack";
inline constexpr std::string_view kThetaNode = "$theta";

struct SubproblemSpec {
  const Graph* subgraph = nullptr;
  // Objective over the subgraph's own variables (constant included).
  LinearExpr objective;
  // Parent-level rows whose nodes all lie in this subgraph.
  std::vector<const Constraint*> internal_rows;
  // Parent-level rows enforced here; foreign variables become copies.
  std::vector<const Constraint*> relocated_rows;
  bool add_slacks = false;
  double slack_penalty = 1e6;
};

struct Subproblem {
  std::string id;
  // Own columns first, then copies, then slacks. No fixing rows.
  StandardFormProblem problem;
  int num_own = 0;
  std::vector<VarRef> copies;
  std::vector<int> copy_columns;
  std::vector<int> slack_columns;
  // True when some own column is integer.
  bool integer_own = false;

  // problem plus one row copy_j == values[j] per copy, appended in order.
  StandardFormProblem fixed(std::span<const double> values) const;
  int first_fixing_row() const { return problem.num_rows(); }
  // Objective of own and slack columns at x (constant included).
  double true_cost(std::span<const double> x) const;
};

// `root` resolves the bounds of foreign variables. Copies keep the bounds and
// integrality of the variable they stand for.
Subproblem build_subproblem(const Graph& root, const SubproblemSpec& spec);

// Splits the effective objective of `graph` by owning local subgraph. The
// constant is returned separately.
std::map<std::string, LinearExpr> split_objective(const Graph& graph,
                                                  const CondensedTopology& topo,
                                                  double* constant);

// Solves with solve_milp when p has integer columns, otherwise solve_lp.
SolveResult solve_any(const Solver& solver, const StandardFormProblem& p);

// Solves p, an instrumented copy of sp.problem: as a MILP when some own
// column of sp is integer, otherwise as the LP relaxation. Integer copies
// are pinned by fixing rows, so they need no branching.
SolveResult solve_subproblem(const Solver& solver, const Subproblem& sp,
                             const StandardFormProblem& p);

// Throws kSubproblemInfeasible, kUnboundedSubproblem or kNumericalBreakdown
// unless r is optimal. `what` names the problem in the message.
void require_optimal(const SolveResult& r, const std::string& what);

}  // namespace optigraph

#endif  // OPTIGRAPH_SUBPROBLEM_HPP_
