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

#include "optigraph/subproblem.hpp"

#include <algorithm>

namespace optigraph {

StandardFormProblem Subproblem::fixed(std::span<const double> values) const {
  if (values.size() != copies.size()) {
    throw Error(Errc::kInvalidConfig,
                "subproblem " + id + " expects " +
                    std::to_string(copies.size()) + " fixed values");
  }
  StandardFormProblem p = problem;
  for (size_t j = 0; j < copies.size(); ++j) {
    p.add_row({{copy_columns[j], 1.0}}, Sense::kEqual, values[j],
              "fix:" + copies[j].qualified());
  }
  return p;
}

double Subproblem::true_cost(std::span<const double> x) const {
  double total = problem.objective_constant;
  for (int j = 0; j < problem.num_cols(); ++j) {
    total += problem.objective[j] * x[j];
  }
  return total;
}

Subproblem build_subproblem(const Graph& root, const SubproblemSpec& spec) {
  Subproblem sp;
  sp.id = spec.subgraph->id();
  StandardFormProblem& p = sp.problem;
  if (!spec.subgraph->all_nodes().empty()) p = flatten(*spec.subgraph);
  sp.num_own = p.num_cols();
  for (int j = 0; j < sp.num_own; ++j) {
    p.objective[j] = 0.0;
    if (p.integrality[j] != Integrality::kContinuous) sp.integer_own = true;
  }
  p.objective_constant = spec.objective.constant();
  for (const auto& [ref, coef] : spec.objective.terms()) {
    const int col = p.column(ref);
    if (col < 0) {
      throw Error(Errc::kForeignVariable, "objective term " + ref.qualified() +
                                              " is not in subgraph " + sp.id);
    }
    p.objective[col] = coef;
  }
  for (const Constraint* c : spec.internal_rows) {
    const NormalizedRow row = normalize_row(*c, p.var_index);
    p.add_row(row.coefficients, row.sense, row.rhs, c->id);
  }
  for (const Constraint* c : spec.relocated_rows) {
    for (const auto& [ref, coef] : c->expr.terms()) {
      if (p.column(ref) >= 0 ||
          std::find(sp.copies.begin(), sp.copies.end(), ref) != sp.copies.end()) {
        continue;
      }
      const Variable& v = root.variable(ref);
      const int col = p.add_column(VarRef{std::string(kCopyNode), ref.qualified()},
                                   v.lower, v.upper, v.integrality);
      sp.copies.push_back(ref);
      sp.copy_columns.push_back(col);
    }
  }
  // Copies are keyed by the qualified name of the original variable.
  std::map<VarRef, int> lookup = p.var_index;
  for (size_t j = 0; j < sp.copies.size(); ++j) {
    lookup[sp.copies[j]] = sp.copy_columns[j];
  }
  for (const Constraint* c : spec.relocated_rows) {
    NormalizedRow row = normalize_row(*c, lookup);
    if (spec.add_slacks) {
      const int below = p.add_column(
          VarRef{std::string(kSlackNode), c->id + "-"}, 0.0, kInf,
          Integrality::kContinuous, spec.slack_penalty);
      row.coefficients.emplace_back(below, -1.0);
      sp.slack_columns.push_back(below);
      if (row.sense == Sense::kEqual) {
        const int above = p.add_column(
            VarRef{std::string(kSlackNode), c->id + "+"}, 0.0, kInf,
            Integrality::kContinuous, spec.slack_penalty);
        row.coefficients.emplace_back(above, 1.0);
        sp.slack_columns.push_back(above);
      }
    }
    p.add_row(row.coefficients, row.sense, row.rhs, c->id);
  }
  return sp;
}

std::map<std::string, LinearExpr> split_objective(const Graph& graph,
                                                  const CondensedTopology& topo,
                                                  double* constant) {
  std::map<std::string, LinearExpr> out;
  for (const auto& v : topo.vertices) out[v];
  const LinearExpr obj = graph.effective_objective();
  for (const auto& [ref, coef] : obj.terms()) {
    auto it = topo.owner.find(ref.node);
    if (it == topo.owner.end()) {
      throw Error(Errc::kLocalNodesAtRoot,
                  "objective term on parent-level node " + ref.node);
    }
    out[it->second].add(ref, coef);
  }
  if (constant != nullptr) *constant = obj.constant();
  return out;
}

SolveResult solve_any(const Solver& solver, const StandardFormProblem& p) {
  return p.has_integers() ? solver.solve_milp(p) : solver.solve_lp(p);
}

SolveResult solve_subproblem(const Solver& solver, const Subproblem& sp,
                             const StandardFormProblem& p) {
  return sp.integer_own ? solver.solve_milp(p)
                        : solver.solve_lp(lp_relaxation(p));
}

void require_optimal(const SolveResult& r, const std::string& what) {
  if (r.status == SolveStatus::kInfeasible) {
    throw Error(Errc::kSubproblemInfeasible,
                what + " is infeasible; the fixed upstream values leave it "
                       "no recourse (enable slacks)");
  }
  if (r.status == SolveStatus::kUnbounded) {
    throw Error(Errc::kUnboundedSubproblem, what + " is unbounded");
  }
  if (r.status != SolveStatus::kOptimal) {
    throw Error(Errc::kNumericalBreakdown,
                what + " stopped with status " + std::string(to_string(r.status)));
  }
}

}  // namespace optigraph
