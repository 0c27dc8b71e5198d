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

#include "optigraph/standard_form.hpp"

#include <algorithm>
#include <cmath>

namespace optigraph {

int StandardFormProblem::add_column(VarRef ref, double lo, double hi,
                                    Integrality kind, double cost) {
  const int col = num_cols();
  auto [it, inserted] = var_index.emplace(ref, col);
  if (!inserted) {
    throw Error(Errc::kDuplicateName, "column " + ref.qualified() + " exists");
  }
  columns.push_back(std::move(ref));
  lower.push_back(lo);
  upper.push_back(hi);
  integrality.push_back(kind);
  objective.push_back(cost);
  return col;
}

int StandardFormProblem::add_row(
    const std::vector<std::pair<int, double>>& coefficients, Sense sense,
    double b, std::string provenance) {
  const int row = num_rows();
  for (const auto& [col, value] : coefficients) {
    if (value != 0.0) entries.push_back(Triplet{row, col, value});
  }
  row_sense.push_back(sense);
  rhs.push_back(b);
  row_provenance.push_back(std::move(provenance));
  return row;
}

int StandardFormProblem::column(const VarRef& ref) const {
  auto it = var_index.find(ref);
  return it == var_index.end() ? -1 : it->second;
}

bool StandardFormProblem::has_integers() const {
  return std::any_of(integrality.begin(), integrality.end(), [](Integrality k) {
    return k != Integrality::kContinuous;
  });
}

double StandardFormProblem::evaluate_objective(
    std::span<const double> x) const {
  double total = objective_constant;
  for (int j = 0; j < num_cols(); ++j) total += objective[j] * x[j];
  return total;
}

std::vector<double> StandardFormProblem::activities(
    std::span<const double> x) const {
  std::vector<double> act(num_rows(), 0.0);
  for (const auto& t : entries) act[t.row] += t.value * x[t.col];
  return act;
}

double StandardFormProblem::max_violation(std::span<const double> x) const {
  double worst = 0.0;
  for (int j = 0; j < num_cols(); ++j) {
    worst = std::max({worst, lower[j] - x[j], x[j] - upper[j]});
  }
  const auto act = activities(x);
  for (int i = 0; i < num_rows(); ++i) {
    const double diff = act[i] - rhs[i];
    switch (row_sense[i]) {
      case Sense::kLessEqual: worst = std::max(worst, diff); break;
      case Sense::kGreaterEqual: worst = std::max(worst, -diff); break;
      case Sense::kEqual: worst = std::max(worst, std::abs(diff)); break;
    }
  }
  return worst;
}

NormalizedRow normalize_row(const Constraint& constraint,
                            const std::map<VarRef, int>& columns) {
  NormalizedRow row;
  const double sign = constraint.sense == Sense::kGreaterEqual ? -1.0 : 1.0;
  row.sense = constraint.sense == Sense::kEqual ? Sense::kEqual
                                                : Sense::kLessEqual;
  row.rhs = sign * (constraint.rhs - constraint.expr.constant());
  row.coefficients.reserve(constraint.expr.terms().size());
  for (const auto& [var, coef] : constraint.expr.terms()) {
    auto it = columns.find(var);
    if (it == columns.end()) {
      throw Error(Errc::kUnknownVariable,
                  "constraint " + constraint.id + " references " +
                      var.qualified() + " with no column");
    }
    row.coefficients.emplace_back(it->second, sign * coef);
  }
  return row;
}

StandardFormProblem flatten(const Graph& graph) {
  StandardFormProblem p;
  const auto nodes = graph.all_nodes();
  for (const Node* node : nodes) {
    for (const Variable& v : node->variables()) {
      p.add_column(VarRef{node->id(), v.name}, v.lower, v.upper, v.integrality);
    }
  }
  if (p.num_cols() == 0) {
    throw Error(Errc::kEmptyModel, "graph " + graph.id() + " has no variables");
  }
  const LinearExpr objective = graph.effective_objective();
  for (const auto& [var, coef] : objective.terms()) {
    const int col = p.column(var);
    if (col < 0) {
      throw Error(Errc::kUnknownVariable,
                  "objective references " + var.qualified());
    }
    p.objective[col] += coef;
  }
  p.objective_constant = objective.constant();
  for (const Node* node : nodes) {
    for (const Constraint& c : node->constraints()) {
      auto row = normalize_row(c, p.var_index);
      p.add_row(row.coefficients, row.sense, row.rhs, c.id);
    }
  }
  for (const Edge* edge : graph.all_edges()) {
    for (const Constraint& c : edge->constraints) {
      auto row = normalize_row(c, p.var_index);
      p.add_row(row.coefficients, row.sense, row.rhs, c.id);
    }
  }
  return p;
}

}  // namespace optigraph
