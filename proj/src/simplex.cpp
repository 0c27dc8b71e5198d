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

// Dense two-phase tableau simplex.
//
// Columns are shifted, flipped or split so every structural variable is
// nonnegative; finite upper bounds become explicit rows. Each row is scaled so
// its rhs is nonnegative, then gets a slack (<=), a surplus plus artificial
// (>=) or an artificial (==). The final basis is refactored with an LU to
// recover accurate primal values and duals.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "optigraph/solver.hpp"

namespace optigraph {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kIterationLimit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kPhaseOneTol = 1e-7;
constexpr double kFinalCheckTol = 1e-6;

enum class ColumnKind { kStructural, kSlack, kArtificial };

struct Substitution {
  double offset = 0.0;
  // (standard column, multiplier) pairs: x = offset + sum mult * x'.
  std::vector<std::pair<int, double>> parts;
};

class Tableau {
 public:
  Tableau(Eigen::MatrixXd full, Eigen::VectorXd b)
      : m_(static_cast<int>(full.rows())), n_(static_cast<int>(full.cols())),
        full_(std::move(full)), b_(std::move(b)),
        t_(static_cast<size_t>(m_) * (n_ + 1), 0.0), z_(n_ + 1, 0.0),
        basis_(m_, -1) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) at(i, j) = full_(i, j);
      rhs(i) = b_(i);
    }
  }

  double& at(int r, int c) { return t_[static_cast<size_t>(r) * (n_ + 1) + c]; }
  double at(int r, int c) const {
    return t_[static_cast<size_t>(r) * (n_ + 1) + c];
  }
  double& rhs(int r) { return at(r, n_); }
  double cost(int c) const { return z_[c]; }
  int& basis(int r) { return basis_[r]; }
  const std::vector<int>& basis() const { return basis_; }
  int rows() const { return m_; }
  int cols() const { return n_; }
  const Eigen::MatrixXd& full() const { return full_; }
  const Eigen::VectorXd& b() const { return b_; }

  void set_costs(const std::vector<double>& c) {
    costs_ = c;
    for (int j = 0; j < n_; ++j) z_[j] = c[j];
    z_[n_] = 0.0;
    for (int r = 0; r < m_; ++r) {
      const double cb = c[basis_[r]];
      if (cb == 0.0) continue;
      const double* row = &t_[static_cast<size_t>(r) * (n_ + 1)];
      for (int j = 0; j <= n_; ++j) z_[j] -= cb * row[j];
    }
  }

  // Rebuilds the tableau as inv(B) [A | b] from the original rows. Returns
  // false, leaving the tableau unchanged, when B is numerically singular.
  bool refactor() {
    if (m_ == 0) return true;
    Eigen::MatrixXd basis_matrix(m_, m_);
    for (int r = 0; r < m_; ++r) basis_matrix.col(r) = full_.col(basis_[r]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
    if (!(lu.rcond() > 1e-14)) return false;
    const Eigen::MatrixXd t = lu.solve(full_);
    const Eigen::VectorXd x = lu.solve(b_);
    if (!t.allFinite() || !x.allFinite()) return false;
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) at(i, j) = t(i, j);
      rhs(i) = x(i);
    }
    for (int r = 0; r < m_; ++r) {
      for (int i = 0; i < m_; ++i) at(i, basis_[r]) = i == r ? 1.0 : 0.0;
    }
    set_costs(costs_);
    return true;
  }

  // Current objective value of the cost row.
  double objective() const { return -z_[n_]; }

  void pivot(int r, int q) {
    double* prow = &t_[static_cast<size_t>(r) * (n_ + 1)];
    const double inv = 1.0 / prow[q];
    for (int j = 0; j <= n_; ++j) prow[j] *= inv;
    prow[q] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &t_[static_cast<size_t>(i) * (n_ + 1)];
      const double f = row[q];
      if (f == 0.0) continue;
      for (int j = 0; j <= n_; ++j) row[j] -= f * prow[j];
      row[q] = 0.0;
    }
    const double f = z_[q];
    if (f != 0.0) {
      for (int j = 0; j <= n_; ++j) z_[j] -= f * prow[j];
      z_[q] = 0.0;
    }
    basis_[r] = q;
  }

 private:
  int m_;
  int n_;
  Eigen::MatrixXd full_;
  Eigen::VectorXd b_;
  std::vector<double> t_;
  std::vector<double> z_;
  std::vector<double> costs_;
  std::vector<int> basis_;
};

enum class LoopResult { kOptimal, kUnbounded, kIterationLimit };

// twin[j] is the mirrored half of a split free column, or -1. A twin never
// enters while its partner is basic.
LoopResult run_simplex(Tableau& tab, const std::vector<bool>& may_enter,
                       const std::vector<int>& twin, const SolverOptions& opts,
                       int& iterations) {
  const int m = tab.rows();
  const int n = tab.cols();
  std::vector<bool> is_basic(n, false);
  for (int r = 0; r < m; ++r) is_basic[tab.basis(r)] = true;
  int degenerate_run = 0;
  bool bland = false;
  double cost_scale = 1.0;
  for (int j = 0; j < n; ++j) cost_scale = std::max(cost_scale, std::abs(tab.cost(j)));
  const double ray_tol = 1e-7 * cost_scale;
  std::vector<bool> skip(n, false);
  int since_refactor = 0;
  while (true) {
    int q = -1;
    double best = -kCostTol;
    for (int j = 0; j < n; ++j) {
      if (is_basic[j] || !may_enter[j] || skip[j]) continue;
      if (twin[j] >= 0 && is_basic[twin[j]]) continue;
      const double d = tab.cost(j);
      if (bland) {
        if (d < -kCostTol) {
          q = j;
          break;
        }
      } else if (d < best) {
        best = d;
        q = j;
      }
    }
    if (q < 0) return LoopResult::kOptimal;
    if (iterations >= opts.max_iterations) return LoopResult::kIterationLimit;

    int r = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    double col_scale = 1.0;
    for (int i = 0; i < m; ++i) col_scale = std::max(col_scale, std::abs(tab.at(i, q)));
    const double pivot_tol = kPivotTol * col_scale;
    for (int i = 0; i < m; ++i) {
      const double a = tab.at(i, q);
      if (a <= pivot_tol) continue;
      const double ratio = std::max(tab.rhs(i), 0.0) / a;
      const double tie = 1e-12 * (1.0 + std::abs(best_ratio));
      if (r < 0 || ratio < best_ratio - tie) {
        r = i;
        best_ratio = ratio;
      } else if (ratio <= best_ratio + tie) {
        const bool take = bland ? tab.basis(i) < tab.basis(r)
                                : a > tab.at(r, q);
        if (take) {
          r = i;
          best_ratio = std::min(best_ratio, ratio);
        }
      }
    }
    if (r < 0) {
      // A ray whose reduced cost is within noise of zero is not a ray.
      if (tab.cost(q) > -ray_tol) {
        skip[q] = true;
        continue;
      }
      if (since_refactor > 0 && tab.refactor()) {
        since_refactor = 0;
        continue;
      }
      return LoopResult::kUnbounded;
    }

    if (best_ratio <= 1e-12) {
      if (++degenerate_run >= opts.degeneracy_stall) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
    std::fill(skip.begin(), skip.end(), false);
    is_basic[tab.basis(r)] = false;
    tab.pivot(r, q);
    is_basic[q] = true;
    ++iterations;
    ++since_refactor;
  }
}


}  // namespace

SolveResult solve_lp(const StandardFormProblem& p, const SolverOptions& opts) {
  const int n = p.num_cols();
  const int m0 = p.num_rows();
  SolveResult result;

  // Column substitution and bound rows.
  std::vector<Substitution> subst(n);
  std::vector<std::pair<int, double>> bound_rows;  // (standard column, ub)
  std::vector<std::pair<int, int>> free_pairs;
  int ns = 0;
  for (int j = 0; j < n; ++j) {
    const double lo = p.lower[j];
    const double hi = p.upper[j];
    if (lo > hi) {
      result.status = SolveStatus::kInfeasible;
      return result;
    }
    if (std::isfinite(lo)) {
      subst[j].offset = lo;
      subst[j].parts.emplace_back(ns, 1.0);
      if (std::isfinite(hi)) bound_rows.emplace_back(ns, hi - lo);
      ++ns;
    } else if (std::isfinite(hi)) {
      subst[j].offset = hi;
      subst[j].parts.emplace_back(ns++, -1.0);
    } else {
      subst[j].parts.emplace_back(ns++, 1.0);
      subst[j].parts.emplace_back(ns++, -1.0);
      free_pairs.emplace_back(ns - 2, ns - 1);
    }
  }

  const int m = m0 + static_cast<int>(bound_rows.size());
  // Dense standardized rows over structural columns.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, ns);
  Eigen::VectorXd b(m);
  std::vector<Sense> sense(m);
  for (int i = 0; i < m0; ++i) {
    b(i) = p.rhs[i];
    sense[i] = p.row_sense[i];
  }
  for (const auto& t : p.entries) {
    const auto& s = subst[t.col];
    b(t.row) -= t.value * s.offset;
    for (const auto& [k, mult] : s.parts) a(t.row, k) += t.value * mult;
  }
  for (size_t k = 0; k < bound_rows.size(); ++k) {
    const int i = m0 + static_cast<int>(k);
    a(i, bound_rows[k].first) = 1.0;
    b(i) = bound_rows[k].second;
    sense[i] = Sense::kLessEqual;
  }
  std::vector<double> flip(m, 1.0);
  for (int i = 0; i < m; ++i) {
    if (b(i) < 0.0) {
      flip[i] = -1.0;
      a.row(i) *= -1.0;
      b(i) = -b(i);
      if (sense[i] == Sense::kLessEqual) {
        sense[i] = Sense::kGreaterEqual;
      } else if (sense[i] == Sense::kGreaterEqual) {
        sense[i] = Sense::kLessEqual;
      }
    }
  }

  // Geometric row and column scaling by powers of two.
  std::vector<double> row_scale(m, 1.0);
  std::vector<double> col_scale(ns, 1.0);
  if (opts.scale) {
    for (int pass = 0; pass < 4; ++pass) {
      for (int i = 0; i < m; ++i) {
        double lo = kInf;
        double hi = 0.0;
        for (int k = 0; k < ns; ++k) {
          const double v = std::abs(a(i, k));
          if (v == 0.0) continue;
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        if (hi == 0.0) continue;
        const double f = std::exp2(std::round(-0.5 * std::log2(lo * hi)));
        a.row(i) *= f;
        row_scale[i] *= f;
      }
      for (int k = 0; k < ns; ++k) {
        double lo = kInf;
        double hi = 0.0;
        for (int i = 0; i < m; ++i) {
          const double v = std::abs(a(i, k));
          if (v == 0.0) continue;
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        if (hi == 0.0) continue;
        const double f = std::exp2(std::round(-0.5 * std::log2(lo * hi)));
        a.col(k) *= f;
        col_scale[k] *= f;
      }
    }
    for (int i = 0; i < m; ++i) b(i) *= row_scale[i];
  }

  // Slack, surplus and artificial columns.
  std::vector<ColumnKind> kind(ns, ColumnKind::kStructural);
  std::vector<int> slack_of(m, -1);
  std::vector<int> art_of(m, -1);
  int ncols = ns;
  for (int i = 0; i < m; ++i) {
    if (sense[i] != Sense::kEqual) {
      slack_of[i] = ncols++;
      kind.push_back(ColumnKind::kSlack);
    }
  }
  for (int i = 0; i < m; ++i) {
    if (sense[i] != Sense::kLessEqual) {
      art_of[i] = ncols++;
      kind.push_back(ColumnKind::kArtificial);
    }
  }

  Eigen::MatrixXd full = Eigen::MatrixXd::Zero(m, ncols);
  full.leftCols(ns) = a;
  bool need_phase_one = false;
  double art_scale = 1.0;
  for (int i = 0; i < m; ++i) {
    if (slack_of[i] >= 0) {
      full(i, slack_of[i]) = sense[i] == Sense::kLessEqual ? 1.0 : -1.0;
    }
    if (art_of[i] >= 0) {
      full(i, art_of[i]) = 1.0;
      need_phase_one = true;
      art_scale = std::max(art_scale, b(i));
    }
  }
  Tableau tab(full, b);
  for (int i = 0; i < m; ++i) {
    tab.basis(i) = art_of[i] >= 0 ? art_of[i] : slack_of[i];
  }

  std::vector<double> cost(ncols, 0.0);
  for (int j = 0; j < n; ++j) {
    for (const auto& [k, mult] : subst[j].parts) cost[k] += p.objective[j] * mult;
  }
  for (int k = 0; k < ns; ++k) cost[k] *= col_scale[k];

  int iterations = 0;
  std::vector<bool> may_enter(ncols, true);
  std::vector<int> twin(ncols, -1);
  for (const auto& [plus, minus] : free_pairs) {
    twin[plus] = minus;
    twin[minus] = plus;
  }
  if (need_phase_one) {
    std::vector<double> phase_one(ncols, 0.0);
    for (int j = 0; j < ncols; ++j) {
      if (kind[j] == ColumnKind::kArtificial) phase_one[j] = 1.0;
    }
    tab.set_costs(phase_one);
    const LoopResult lr = run_simplex(tab, may_enter, twin, opts, iterations);
    result.iterations = iterations;
    if (lr == LoopResult::kIterationLimit) {
      result.status = SolveStatus::kIterationLimit;
      return result;
    }
    if (tab.objective() > kPhaseOneTol * art_scale) {
      result.status = SolveStatus::kInfeasible;
      return result;
    }
    // Drive remaining artificials out of the basis where possible.
    for (int r = 0; r < m; ++r) {
      if (kind[tab.basis(r)] != ColumnKind::kArtificial) continue;
      int q = -1;
      double best = 1e-7;
      for (int j = 0; j < ncols; ++j) {
        if (kind[j] == ColumnKind::kArtificial) continue;
        const double v = std::abs(tab.at(r, j));
        if (v > best) {
          best = v;
          q = j;
        }
      }
      if (q >= 0) tab.pivot(r, q);
    }
    for (int j = 0; j < ncols; ++j) {
      if (kind[j] == ColumnKind::kArtificial) may_enter[j] = false;
    }
  }

  tab.set_costs(cost);
  double cost_scale = 1.0;
  for (double v : cost) cost_scale = std::max(cost_scale, std::abs(v));
  std::vector<double> xs(ncols, 0.0);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  for (int round = 0;; ++round) {
    const LoopResult lr = run_simplex(tab, may_enter, twin, opts, iterations);
    result.iterations = iterations;
    if (lr == LoopResult::kIterationLimit) {
      result.status = SolveStatus::kIterationLimit;
      return result;
    }
    if (lr == LoopResult::kUnbounded) {
      result.status = SolveStatus::kUnbounded;
      return result;
    }
    if (m == 0) break;

    // Refactor the optimal basis and recheck it against the original rows.
    Eigen::MatrixXd basis_matrix(m, m);
    Eigen::VectorXd cb(m);
    std::vector<bool> is_basic(ncols, false);
    for (int r = 0; r < m; ++r) {
      basis_matrix.col(r) = full.col(tab.basis()[r]);
      cb(r) = cost[tab.basis()[r]];
      is_basic[tab.basis()[r]] = true;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14)) {
      throw Error(Errc::kNumericalBreakdown,
                  "optimal basis is singular (rcond " + std::to_string(rcond) +
                      ")");
    }
    const Eigen::VectorXd xb = lu.solve(b);
    y = lu.transpose().solve(cb);
    bool clean = xb.allFinite() && y.allFinite();
    const double xb_tol =
        kFinalCheckTol * (1.0 + (clean ? xb.cwiseAbs().maxCoeff() : 0.0));
    for (int r = 0; clean && r < m; ++r) {
      if (xb(r) < -xb_tol) clean = false;
    }
    for (int j = 0; clean && j < ncols; ++j) {
      if (is_basic[j] || !may_enter[j]) continue;
      if (twin[j] >= 0 && is_basic[twin[j]]) continue;
      if (cost[j] - y.dot(full.col(j)) < -1e-7 * cost_scale) clean = false;
    }
    if (!clean && round < 3 && tab.refactor()) continue;
    for (int r = 0; r < m; ++r) {
      const double v = xb(r);
      if (!std::isfinite(v)) {
        throw Error(Errc::kNumericalBreakdown, "non-finite basic value");
      }
      if (v < -xb_tol) {
        throw Error(Errc::kNumericalBreakdown,
                    "refactored basis is primal infeasible");
      }
      xs[tab.basis()[r]] = std::max(v, 0.0);
    }
    break;
  }
  for (int k = 0; k < ns; ++k) xs[k] *= col_scale[k];
  for (int i = 0; i < m; ++i) y(i) *= row_scale[i];

  result.primal.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double v = subst[j].offset;
    for (const auto& [k, mult] : subst[j].parts) v += mult * xs[k];
    result.primal[j] = std::clamp(v, p.lower[j], p.upper[j]);
  }
  result.duals.assign(m0, 0.0);
  for (int i = 0; i < m0; ++i) result.duals[i] = flip[i] * y(i);
  result.reduced_costs = p.objective;
  for (const auto& t : p.entries) {
    result.reduced_costs[t.col] -= result.duals[t.row] * t.value;
  }
  result.objective = p.evaluate_objective(result.primal);
  result.has_duals = true;
  result.status = SolveStatus::kOptimal;

  double scale = 1.0;
  for (double v : result.primal) scale = std::max(scale, std::abs(v));
  if (p.max_violation(result.primal) > kFinalCheckTol * scale) {
    throw Error(Errc::kNumericalBreakdown,
                "refactored solution violates the problem rows");
  }
  return result;
}

StandardFormProblem lp_relaxation(StandardFormProblem p) {
  for (int j = 0; j < p.num_cols(); ++j) {
    if (p.integrality[j] == Integrality::kBinary) {
      p.lower[j] = std::max(p.lower[j], 0.0);
      p.upper[j] = std::min(p.upper[j], 1.0);
    }
    p.integrality[j] = Integrality::kContinuous;
  }
  return p;
}

SolverCapability BuiltinSolver::capability() const {
  SolverCapability cap;
  cap.solves_lp = true;
  cap.solves_milp = true;
  cap.returns_duals = true;
  cap.options["algorithm"] = "dense two-phase simplex";
  cap.options["mip_gap"] = std::to_string(opts_.mip_gap);
  cap.options["node_limit"] = std::to_string(opts_.node_limit);
  cap.options["integrality_tol"] = std::to_string(opts_.integrality_tol);
  return cap;
}

SolveResult BuiltinSolver::solve_lp(const StandardFormProblem& p) const {
  return optigraph::solve_lp(p, opts_);
}

SolveResult BuiltinSolver::solve_milp(const StandardFormProblem& p) const {
  return optigraph::solve_milp(p, opts_);
}

}  // namespace optigraph
