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

#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "optigraph/solver.hpp"

namespace optigraph {

namespace {

struct BbNode {
  int id;
  double bound;
  std::vector<double> lower;
  std::vector<double> upper;
};

struct WorseFirst {
  bool operator()(const BbNode& a, const BbNode& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

bool pruned(double bound, double incumbent, double gap) {
  if (!std::isfinite(incumbent)) return false;
  const double slack = std::max(1e-9, gap * std::abs(incumbent));
  return bound >= incumbent - slack;
}

}  // namespace

SolveResult solve_milp(const StandardFormProblem& p, const SolverOptions& opts) {
  if (!p.has_integers()) return solve_lp(p, opts);

  StandardFormProblem work = lp_relaxation(p);
  const int n = work.num_cols();
  std::vector<bool> integral(n, false);
  for (int j = 0; j < n; ++j) {
    integral[j] = p.integrality[j] != Integrality::kContinuous;
    if (integral[j]) {
      work.lower[j] = std::ceil(work.lower[j] - opts.integrality_tol);
      work.upper[j] = std::floor(work.upper[j] + opts.integrality_tol);
    }
  }

  SolveResult best;
  best.status = SolveStatus::kInfeasible;
  double incumbent = std::numeric_limits<double>::infinity();
  int total_iterations = 0;
  int explored = 0;
  int next_id = 0;

  std::priority_queue<BbNode, std::vector<BbNode>, WorseFirst> open;
  open.push(BbNode{next_id++, -std::numeric_limits<double>::infinity(),
                   work.lower, work.upper});

  while (!open.empty()) {
    BbNode node = open.top();
    open.pop();
    if (pruned(node.bound, incumbent, opts.mip_gap)) continue;
    if (explored >= opts.node_limit) {
      throw Error(Errc::kNodeLimit, "branch and bound exceeded " +
                                        std::to_string(opts.node_limit) +
                                        " nodes");
    }
    ++explored;
    work.lower = node.lower;
    work.upper = node.upper;
    SolveResult lp = solve_lp(work, opts);
    total_iterations += lp.iterations;
    if (lp.status == SolveStatus::kInfeasible) continue;
    if (lp.status == SolveStatus::kUnbounded ||
        lp.status == SolveStatus::kIterationLimit) {
      lp.iterations = total_iterations;
      lp.nodes = explored;
      lp.has_duals = false;
      lp.duals.clear();
      lp.reduced_costs.clear();
      return lp;
    }
    if (pruned(lp.objective, incumbent, opts.mip_gap)) continue;

    int branch = -1;
    double most = opts.integrality_tol;
    for (int j = 0; j < n; ++j) {
      if (!integral[j]) continue;
      const double x = lp.primal[j];
      const double dist = std::min(x - std::floor(x), std::ceil(x) - x);
      if (dist > most) {
        most = dist;
        branch = j;
      }
    }

    if (branch < 0) {
      // Integral relaxation: snap and polish the continuous part.
      std::vector<double> lo = node.lower;
      std::vector<double> hi = node.upper;
      for (int j = 0; j < n; ++j) {
        if (integral[j]) lo[j] = hi[j] = std::round(lp.primal[j]);
      }
      work.lower = lo;
      work.upper = hi;
      SolveResult polished = solve_lp(work, opts);
      total_iterations += polished.iterations;
      if (polished.status != SolveStatus::kOptimal) polished = lp;
      for (int j = 0; j < n; ++j) {
        if (integral[j]) polished.primal[j] = std::round(polished.primal[j]);
      }
      polished.objective = p.evaluate_objective(polished.primal);
      if (polished.objective < incumbent) {
        incumbent = polished.objective;
        best = std::move(polished);
      }
      continue;
    }

    const double x = lp.primal[branch];
    BbNode down{next_id++, lp.objective, node.lower, node.upper};
    down.upper[branch] = std::floor(x);
    BbNode up{next_id++, lp.objective, std::move(node.lower),
              std::move(node.upper)};
    up.lower[branch] = std::ceil(x);
    open.push(std::move(down));
    open.push(std::move(up));
  }

  best.iterations = total_iterations;
  best.nodes = explored;
  best.has_duals = false;
  best.duals.clear();
  best.reduced_costs.clear();
  return best;
}

}  // namespace optigraph
