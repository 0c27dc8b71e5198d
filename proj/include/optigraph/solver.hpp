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

// Built-in LP/MILP engine.
//
// Dual convention: duals[i] is the derivative of the optimal objective with
// respect to rhs[i]. For a minimization problem a <= row therefore has a
// nonpositive dual, a >= row a nonnegative dual, and an == row a free one.
// Reduced costs are objective - A' duals, one per column.

#ifndef OPTIGRAPH_SOLVER_HPP_
#define OPTIGRAPH_SOLVER_HPP_

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "optigraph/standard_form.hpp"

namespace optigraph {

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string_view to_string(SolveStatus status);

struct SolverOptions {
  int max_iterations = 200000;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int degeneracy_stall = 50;
  double mip_gap = 0.0;
  int node_limit = 200000;
  double integrality_tol = 1e-6;
  // Geometric row and column scaling of the LP before the simplex.
  bool scale = true;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> primal;
  std::vector<double> duals;
  std::vector<double> reduced_costs;
  bool has_duals = false;
  int iterations = 0;  // simplex pivots (summed over B&B nodes)
  int nodes = 0;       // B&B nodes explored; 0 for LP solves
};

// Two-phase dense simplex. Integrality is ignored. Throws
// kNumericalBreakdown when the final basis cannot be refactored cleanly.
SolveResult solve_lp(const StandardFormProblem& p,
                     const SolverOptions& opts = {});

// Best-first branch and bound over solve_lp relaxations. Falls through to
// solve_lp when p has no integer columns. Throws kNodeLimit.
SolveResult solve_milp(const StandardFormProblem& p,
                       const SolverOptions& opts = {});

// Drops integrality; binary columns are clamped to [0, 1].
StandardFormProblem lp_relaxation(StandardFormProblem p);

struct SolverCapability {
  bool solves_lp = false;
  bool solves_milp = false;
  bool returns_duals = false;
  std::map<std::string, std::string> options;
};

// Contract for LP/MILP engines used by the decomposition modules.
class Solver {
 public:
  virtual ~Solver() = default;
  virtual SolverCapability capability() const = 0;
  virtual SolveResult solve_lp(const StandardFormProblem& p) const = 0;
  virtual SolveResult solve_milp(const StandardFormProblem& p) const = 0;
};

class BuiltinSolver final : public Solver {
 public:
  explicit BuiltinSolver(SolverOptions opts = {}) : opts_(opts) {}

  SolverCapability capability() const override;
  SolveResult solve_lp(const StandardFormProblem& p) const override;
  SolveResult solve_milp(const StandardFormProblem& p) const override;

  const SolverOptions& options() const { return opts_; }

 private:
  SolverOptions opts_;
};

}  // namespace optigraph

#endif  // OPTIGRAPH_SOLVER_HPP_
