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

#ifndef OPTIGRAPH_STANDARD_FORM_HPP_
#define OPTIGRAPH_STANDARD_FORM_HPP_

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "optigraph/model.hpp"

namespace optigraph {

struct Triplet {
  int row;
  int col;
  double value;
};

// Flattened LP/MILP in minimization form:
//
//   min  objective' x + objective_constant
//   s.t. sum_j A(i, j) x_j  (row_sense[i])  rhs[i]
//        lower <= x <= upper,  integrality per column.
//
// Rows produced by flatten() are either <= or ==; >= rows are negated.
struct StandardFormProblem {
  std::vector<VarRef> columns;
  std::map<VarRef, int> var_index;
  std::vector<double> objective;
  double objective_constant = 0.0;
  std::vector<Triplet> entries;
  std::vector<Sense> row_sense;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<Integrality> integrality;
  std::vector<std::string> row_provenance;

  int num_cols() const { return static_cast<int>(columns.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }

  int add_column(VarRef ref, double lo, double hi,
                 Integrality kind = Integrality::kContinuous,
                 double cost = 0.0);
  int add_row(const std::vector<std::pair<int, double>>& coefficients,
              Sense sense, double b, std::string provenance);
  // Column of `ref`, or -1.
  int column(const VarRef& ref) const;
  bool has_integers() const;

  double evaluate_objective(std::span<const double> x) const;
  // Largest violation of any row or bound at x.
  double max_violation(std::span<const double> x) const;
  // Row activities A x.
  std::vector<double> activities(std::span<const double> x) const;
};

// Row coefficients of a constraint against a column map, with >= rows negated
// into <= form. Returns (coefficients, sense, rhs).
struct NormalizedRow {
  std::vector<std::pair<int, double>> coefficients;
  Sense sense;
  double rhs;
};
NormalizedRow normalize_row(const Constraint& constraint,
                            const std::map<VarRef, int>& columns);

// One column per variable of all_nodes(graph) (depth-first graph order, then
// node order, then variable order); one row per node constraint followed by
// one row per edge constraint at every depth. Throws kEmptyModel.
StandardFormProblem flatten(const Graph& graph);

}  // namespace optigraph

#endif  // OPTIGRAPH_STANDARD_FORM_HPP_
