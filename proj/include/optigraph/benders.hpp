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

// Graph-based Benders decomposition.
//
// The local subgraphs of a graph form the subproblems. Parent-level edges
// must join exactly two subgraphs and the subgraph adjacency must be a tree.
// A breadth-first search from the chosen root assigns stages; each edge is
// enforced in its downstream subgraph, where the upstream variables are
// replaced by copies z fixed to the upstream iterate. Cost-to-go variables
// theta are bounded by cuts of the form
//
//   theta >= Phi + pi' (x - x_bar).
//
// A theta column only enters its subproblem once its cut pool is nonempty.
// Until then the subproblem objective carries the floor value instead, so
// the first forward pass solves exactly the problems a sequential solve does.

#ifndef OPTIGRAPH_BENDERS_HPP_
#define OPTIGRAPH_BENDERS_HPP_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "optigraph/model.hpp"
#include "optigraph/solver.hpp"
#include "optigraph/subproblem.hpp"
#include "optigraph/transform.hpp"

namespace optigraph {

// Throws kNoSubgraphs, kLocalNodesAtRoot, kOverlapUnsupported,
// kHyperedgeSpan, kDisconnected or kCyclicStructure.
CondensedTopology validate_structure(const Graph& graph);

struct BendersTree {
  std::string root;
  std::map<std::string, std::string> parent;
  std::map<std::string, std::vector<std::string>> children;
  std::map<std::string, int> stage;  // root is stage 1
  int num_stages = 1;
  // Subgraph ids in BFS order.
  std::vector<std::string> order;
  // Parent variables appearing in the edges between p_g and g, in order of
  // first appearance.
  std::map<std::string, std::vector<VarRef>> complicating;

  std::vector<std::string> members(int s) const;
};

// Validates the structure first. Throws kRootNotFound.
BendersTree build_tree(const Graph& graph, const std::string& root);

enum class CutKind { kBenders, kStrengthened, kLagrangian };
std::string_view to_string(CutKind kind);

struct CutData {
  CutKind kind = CutKind::kBenders;
  // Subgraph whose theta the cut bounds, and the child that produced it.
  std::string target;
  std::string child;
  double intercept = 0.0;
  std::vector<double> slope;
  std::vector<double> anchor;
  int iteration = 0;

  double evaluate(const std::vector<double>& x) const;
};

struct BendersConfig {
  int max_iters = 100;
  double tol = 1e-6;
  bool multicut = false;
  bool strengthened = false;
  bool lagrangian = false;
  double lagrangian_t0 = 1.0;
  int lagrangian_iters = 50;
  bool regularize = false;
  double alpha = 0.5;
  bool add_slacks = false;
  double slack_penalty = 1e6;
  bool parallelize_second_stage = false;
  bool warm_start_cuts = false;
  // Total lower bound on the cost-to-go of a subgraph before it has cuts.
  double theta_floor = -1e9;
  // Defaults to a BuiltinSolver.
  std::shared_ptr<const Solver> solver;
};

struct IterationRecord {
  int k = 0;
  double lb = 0.0;
  double ub = 0.0;       // cost of this iteration's iterates
  double best_ub = 0.0;  // best so far
  double gap = 0.0;
  double seconds = 0.0;
  int cuts_added = 0;
  // Level-set row of the regularized root solve, when one was made.
  bool regularized = false;
  double level_activity = 0.0;
  double level_rhs = 0.0;
};

struct BendersState {
  int k = 0;
  std::vector<double> lb_history;
  std::vector<double> ub_history;
  std::vector<double> best_ub_history;
  double lb = -kInf;
  double best_ub = kInf;
  int best_iteration = 0;
  // Own-column values per subgraph at the best iteration.
  std::map<std::string, std::vector<double>> best_iterate;
  // Latest own-column values per subgraph.
  std::map<std::string, std::vector<double>> iterate;
  // Cuts keyed by the subgraph whose theta they bound.
  std::map<std::string, std::vector<CutData>> cut_pool;
  std::vector<IterationRecord> trace;
  // Some theta sat at the floor in the last root solve.
  bool theta_at_floor = false;
};

struct ForwardPassResult {
  double lb = 0.0;
  double ub = 0.0;
  // Subproblem objective (theta included) per subgraph.
  std::map<std::string, double> objectives;
  // True cost per subgraph (theta excluded, slack penalties included).
  std::map<std::string, double> costs;
  bool regularized = false;
  double level_activity = 0.0;
  double level_rhs = 0.0;
};

enum class BendersStatus { kConverged, kMaxIterations };
std::string_view to_string(BendersStatus status);

struct BendersResult {
  BendersStatus status = BendersStatus::kMaxIterations;
  double objective = kInf;
  double lower_bound = -kInf;
  double gap = kInf;
  int iterations = 0;
  std::map<VarRef, double> solution;
  std::vector<IterationRecord> trace;
  bool theta_at_floor = false;
  double seconds = 0.0;
};

// (UB - LB) / |LB|, or UB - LB when |LB| is below 1e-9.
double benders_gap(double lb, double ub);

class BendersAlgorithm {
 public:
  // Throws the validate_structure errors, kRootNotFound, kInvalidConfig and
  // kDualsUnavailable.
  BendersAlgorithm(const Graph& graph, const std::string& root,
                   BendersConfig config = {});

  const BendersTree& tree() const { return tree_; }
  const BendersState& state() const { return state_; }
  const BendersConfig& config() const { return config_; }
  const Subproblem& subproblem(const std::string& id) const;

  // Solves every stage once with the current cut pools and records bounds.
  // For LP subproblems the Benders cuts of this pass are harvested here.
  ForwardPassResult forward_pass();
  // Cuts from the last forward pass, leaves first; returns the number added.
  int backward_pass();
  // Initial cuts from the LP relaxation of the whole problem, iteration 0.
  void warm_start_cuts();
  BendersResult run();

  // Cut produced by non-root subgraph g with its copies fixed at `anchor`
  // (ordered as tree().complicating.at(g)), against the current pools.
  CutData benders_cut(const std::string& g,
                      const std::vector<double>& anchor) const;
  CutData strengthened_benders_cut(const std::string& g,
                                   const std::vector<double>& anchor) const;
  CutData lagrangian_cut(const std::string& g,
                         const std::vector<double>& anchor) const;

  // Optimal value of g's subproblem at `anchor` under the current pools.
  double subproblem_value(const std::string& g,
                          const std::vector<double>& anchor) const;
  // Subproblem of g with theta columns and cut rows for the current pools
  // and copies fixed at `anchor` (empty for the root).
  StandardFormProblem instrumented(const std::string& g,
                                   const std::vector<double>& anchor) const;
  // Anchor of child g read from its parent's latest iterate.
  std::vector<double> anchor_for(const std::string& g) const;

 private:
  struct Solved {
    SolveResult result;
    StandardFormProblem problem;
    double cost = 0.0;
    std::vector<double> anchor;
  };

  void add_theta(const std::string& g, StandardFormProblem& p) const;
  // Lower bound of one theta column of g. Multicut splits theta_floor evenly
  // over the children.
  double slot_floor(const std::string& g) const;
  Solved solve_subgraph(const std::string& g,
                        const std::vector<double>& anchor) const;
  CutData cut_from_lp(const std::string& g, const std::vector<double>& anchor,
                      const SolveResult& lp) const;
  double lagrangian_value(const std::string& g,
                          const std::vector<double>& anchor,
                          const std::vector<double>& mu,
                          std::vector<double>* copies) const;
  // Cut of the configured kind.
  CutData make_cut(const std::string& g,
                   const std::vector<double>& anchor) const;
  void add_cut(CutData cut);
  void check_theta_floor(const SolveResult& r, const StandardFormProblem& p);

  Graph graph_;
  BendersConfig config_;
  BendersTree tree_;
  BendersState state_;
  std::map<std::string, Subproblem> subproblems_;
  // Harvested Benders cuts of the last forward pass (LP subproblems).
  std::map<std::string, CutData> harvested_;
  std::map<std::string, std::vector<double>> last_anchor_;
};

}  // namespace optigraph

#endif  // OPTIGRAPH_BENDERS_HPP_
