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

#include "optigraph/benders.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <set>

namespace optigraph {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Subgraph id owning each node of every parent-level edge.
std::vector<std::string> edge_subgraphs(const Edge& e,
                                        const CondensedTopology& topo) {
  std::set<std::string> s;
  for (const auto& n : e.nodes) s.insert(topo.owner.at(n));
  return {s.begin(), s.end()};
}

}  // namespace

std::string_view to_string(CutKind kind) {
  switch (kind) {
    case CutKind::kBenders:
      return "benders";
    case CutKind::kStrengthened:
      return "strengthened";
    case CutKind::kLagrangian:
      return "lagrangian";
  }
  return "?";
}

std::string_view to_string(BendersStatus status) {
  return status == BendersStatus::kConverged ? "converged"
                                             : "max_iterations";
}

double CutData::evaluate(const std::vector<double>& x) const {
  double v = intercept;
  for (size_t j = 0; j < slope.size(); ++j) v += slope[j] * (x[j] - anchor[j]);
  return v;
}

double benders_gap(double lb, double ub) {
  if (!std::isfinite(lb) || !std::isfinite(ub)) return kInf;
  if (std::abs(lb) < 1e-9) return ub - lb;
  return (ub - lb) / std::abs(lb);
}

CondensedTopology validate_structure(const Graph& graph) {
  if (!graph.local_nodes().empty()) {
    throw Error(Errc::kLocalNodesAtRoot,
                "graph " + graph.id() + " has parent-level nodes");
  }
  if (graph.has_overlap() || graph.allow_overlap()) {
    throw Error(Errc::kOverlapUnsupported,
                "overlapping subgraphs cannot be decomposed");
  }
  CondensedTopology topo = condensed_topology(graph);
  if (!topo.orphan_edges.empty()) {
    throw Error(Errc::kHyperedgeSpan,
                "edge " + topo.orphan_edges.front() +
                    " joins more than two subgraphs");
  }
  if (!topo.connected()) {
    throw Error(Errc::kDisconnected, "subgraphs of " + graph.id() +
                                         " are not connected by edges");
  }
  if (!topo.acyclic()) {
    throw Error(Errc::kCyclicStructure,
                "subgraphs of " + graph.id() + " form a cycle");
  }
  return topo;
}

std::vector<std::string> BendersTree::members(int s) const {
  std::vector<std::string> out;
  for (const auto& g : order) {
    if (stage.at(g) == s) out.push_back(g);
  }
  return out;
}

BendersTree build_tree(const Graph& graph, const std::string& root) {
  const CondensedTopology topo = validate_structure(graph);
  if (std::find(topo.vertices.begin(), topo.vertices.end(), root) ==
      topo.vertices.end()) {
    throw Error(Errc::kRootNotFound,
                "no local subgraph " + root + " in " + graph.id());
  }
  BendersTree tree;
  tree.root = root;
  tree.stage[root] = 1;
  std::deque<std::string> queue{root};
  while (!queue.empty()) {
    const std::string g = queue.front();
    queue.pop_front();
    tree.order.push_back(g);
    tree.children[g];
    // Neighbors in subgraph insertion order.
    const auto near = topo.neighbors(g);
    for (const auto& v : topo.vertices) {
      if (tree.stage.count(v) ||
          std::find(near.begin(), near.end(), v) == near.end()) {
        continue;
      }
      tree.stage[v] = tree.stage[g] + 1;
      tree.parent[v] = g;
      tree.children[g].push_back(v);
      tree.num_stages = std::max(tree.num_stages, tree.stage[v]);
      queue.push_back(v);
    }
  }
  for (const auto& [g, p] : tree.parent) {
    std::vector<VarRef>& vars = tree.complicating[g];
    for (const Edge* e : graph.local_edges()) {
      const auto subs = edge_subgraphs(*e, topo);
      if (subs.size() != 2 ||
          !((subs[0] == g && subs[1] == p) || (subs[0] == p && subs[1] == g))) {
        continue;
      }
      for (const Constraint& c : e->constraints) {
        for (const auto& [ref, coef] : c.expr.terms()) {
          if (topo.owner.at(ref.node) == p &&
              std::find(vars.begin(), vars.end(), ref) == vars.end()) {
            vars.push_back(ref);
          }
        }
      }
    }
  }
  return tree;
}

BendersAlgorithm::BendersAlgorithm(const Graph& graph, const std::string& root,
                                   BendersConfig config)
    : graph_(graph), config_(std::move(config)) {
  if (config_.max_iters < 1 || !(config_.tol >= 0) ||
      !(config_.alpha > 0 && config_.alpha <= 1) ||
      !(config_.slack_penalty > 0) || config_.lagrangian_iters < 0 ||
      !std::isfinite(config_.theta_floor)) {
    throw Error(Errc::kInvalidConfig, "invalid decomposition settings");
  }
  if (!config_.solver) config_.solver = std::make_shared<BuiltinSolver>();
  if (!config_.solver->capability().returns_duals) {
    throw Error(Errc::kDualsUnavailable,
                "the configured solver does not return duals");
  }
  tree_ = build_tree(graph_, root);
  if (config_.regularize && tree_.num_stages != 2) {
    throw Error(Errc::kInvalidConfig,
                "regularization needs exactly two stages, got " +
                    std::to_string(tree_.num_stages));
  }
  const CondensedTopology topo = condensed_topology(graph_);
  double constant = 0.0;
  auto objectives = split_objective(graph_, topo, &constant);
  objectives[root].add_constant(constant);

  std::map<std::string, SubproblemSpec> specs;
  for (const Graph* s : graph_.local_subgraphs()) {
    SubproblemSpec& spec = specs[s->id()];
    spec.subgraph = s;
    spec.objective = objectives[s->id()];
    spec.add_slacks = config_.add_slacks;
    spec.slack_penalty = config_.slack_penalty;
  }
  for (const Edge* e : graph_.local_edges()) {
    const auto subs = edge_subgraphs(*e, topo);
    std::string home = subs[0];
    if (subs.size() == 2) {
      home = tree_.stage.at(subs[0]) > tree_.stage.at(subs[1]) ? subs[0]
                                                                 : subs[1];
    }
    for (const Constraint& c : e->constraints) {
      if (subs.size() == 1) {
        specs[home].internal_rows.push_back(&c);
      } else {
        specs[home].relocated_rows.push_back(&c);
      }
    }
  }
  for (const auto& [id, spec] : specs) {
    subproblems_.emplace(id, build_subproblem(graph_, spec));
  }
  for (const auto& [g, vars] : tree_.complicating) {
    if (subproblems_.at(g).copies != vars) {
      throw Error(Errc::kInvalidConfig, "copy order mismatch in " + g);
    }
  }
}

const Subproblem& BendersAlgorithm::subproblem(const std::string& id) const {
  auto it = subproblems_.find(id);
  if (it == subproblems_.end()) {
    throw Error(Errc::kRootNotFound, "no subproblem " + id);
  }
  return it->second;
}

void BendersAlgorithm::add_theta(const std::string& g,
                                 StandardFormProblem& p) const {
  const auto& kids = tree_.children.at(g);
  if (kids.empty()) return;
  static const std::vector<CutData> kNone;
  auto it = state_.cut_pool.find(g);
  const std::vector<CutData>& pool = it == state_.cut_pool.end() ? kNone
                                                                 : it->second;
  const std::string theta_node(kThetaNode);
  const double floor = slot_floor(g);
  auto add_rows = [&](int theta, const std::vector<const CutData*>& group,
                      const std::string& tag) {
    std::map<int, double> coefs;
    double rhs = 0.0;
    for (const CutData* cut : group) {
      const auto& vars = tree_.complicating.at(cut->child);
      rhs -= cut->intercept;
      for (size_t j = 0; j < vars.size(); ++j) {
        coefs[p.column(vars[j])] += cut->slope[j];
        rhs += cut->slope[j] * cut->anchor[j];
      }
    }
    std::vector<std::pair<int, double>> row{{theta, -1.0}};
    for (const auto& [col, v] : coefs) row.emplace_back(col, v);
    p.add_row(row, Sense::kLessEqual, rhs, tag);
  };
  auto add_column = [&](const std::string& name) {
    const int col =
        p.add_column(VarRef{theta_node, name}, -kInf, kInf,
                     Integrality::kContinuous, 1.0);
    p.add_row({{col, -1.0}}, Sense::kLessEqual, -floor, "floor:" + name);
    return col;
  };
  if (config_.multicut) {
    for (const auto& c : kids) {
      std::vector<const CutData*> mine;
      for (const auto& cut : pool) {
        if (cut.child == c) mine.push_back(&cut);
      }
      if (mine.empty()) {
        p.objective_constant += floor;
        continue;
      }
      const int theta = add_column(g + ">" + c);
      for (const CutData* cut : mine) {
        add_rows(theta, {cut}, "cut:" + c + ":" + std::to_string(cut->iteration));
      }
    }
    return;
  }
  if (pool.empty()) {
    p.objective_constant += config_.theta_floor;
    return;
  }
  const int theta = add_column(g);
  std::map<int, std::vector<const CutData*>> rounds;
  for (const auto& cut : pool) rounds[cut.iteration].push_back(&cut);
  for (const auto& [k, group] : rounds) {
    add_rows(theta, group, "cut:" + g + ":" + std::to_string(k));
  }
}

StandardFormProblem BendersAlgorithm::instrumented(
    const std::string& g, const std::vector<double>& anchor) const {
  const Subproblem& sp = subproblem(g);
  StandardFormProblem p = sp.fixed(anchor);
  add_theta(g, p);
  return p;
}

std::vector<double> BendersAlgorithm::anchor_for(const std::string& g) const {
  auto pit = tree_.parent.find(g);
  if (pit == tree_.parent.end()) return {};
  const Subproblem& parent = subproblem(pit->second);
  auto it = state_.iterate.find(pit->second);
  if (it == state_.iterate.end()) {
    throw Error(Errc::kInvalidConfig, "parent of " + g + " has no iterate yet");
  }
  std::vector<double> a;
  for (const VarRef& ref : tree_.complicating.at(g)) {
    a.push_back(it->second[parent.problem.column(ref)]);
  }
  return a;
}

BendersAlgorithm::Solved BendersAlgorithm::solve_subgraph(
    const std::string& g, const std::vector<double>& anchor) const {
  const Subproblem& sp = subproblem(g);
  Solved out;
  out.anchor = anchor;
  out.problem = instrumented(g, anchor);
  out.result = solve_subproblem(*config_.solver, sp, out.problem);
  require_optimal(out.result, "subproblem " + g);
  out.cost = sp.true_cost(out.result.primal);
  return out;
}

CutData BendersAlgorithm::cut_from_lp(const std::string& g,
                                      const std::vector<double>& anchor,
                                      const SolveResult& lp) const {
  if (!lp.has_duals) {
    throw Error(Errc::kDualsUnavailable, "no duals for subproblem " + g);
  }
  const Subproblem& sp = subproblem(g);
  CutData cut;
  cut.kind = CutKind::kBenders;
  cut.target = tree_.parent.at(g);
  cut.child = g;
  cut.intercept = lp.objective;
  cut.anchor = anchor;
  for (size_t j = 0; j < sp.copies.size(); ++j) {
    cut.slope.push_back(lp.duals[sp.first_fixing_row() + j]);
  }
  cut.iteration = state_.k;
  return cut;
}

CutData BendersAlgorithm::benders_cut(const std::string& g,
                                      const std::vector<double>& anchor) const {
  if (!tree_.parent.count(g)) {
    throw Error(Errc::kInvalidConfig, "the root subgraph produces no cuts");
  }
  const StandardFormProblem p = lp_relaxation(instrumented(g, anchor));
  const SolveResult lp = config_.solver->solve_lp(p);
  require_optimal(lp, "relaxation of subproblem " + g);
  return cut_from_lp(g, anchor, lp);
}

double BendersAlgorithm::lagrangian_value(const std::string& g,
                                          const std::vector<double>& anchor,
                                          const std::vector<double>& mu,
                                          std::vector<double>* copies) const {
  const Subproblem& sp = subproblem(g);
  StandardFormProblem p = sp.problem;
  add_theta(g, p);
  for (size_t j = 0; j < sp.copies.size(); ++j) {
    p.objective[sp.copy_columns[j]] -= mu[j];
    p.objective_constant += mu[j] * anchor[j];
  }
  const SolveResult r = solve_any(*config_.solver, p);
  if (r.status == SolveStatus::kUnbounded) return -kInf;
  require_optimal(r, "Lagrangian subproblem " + g);
  if (copies != nullptr) {
    copies->clear();
    for (int col : sp.copy_columns) copies->push_back(r.primal[col]);
  }
  return r.objective;
}

CutData BendersAlgorithm::strengthened_benders_cut(
    const std::string& g, const std::vector<double>& anchor) const {
  CutData cut = benders_cut(g, anchor);
  const double value = lagrangian_value(g, anchor, cut.slope, nullptr);
  if (!std::isfinite(value)) {
    throw Error(Errc::kUnboundedSubproblem,
                "Lagrangian subproblem " + g + " is unbounded at the LP duals");
  }
  cut.kind = CutKind::kStrengthened;
  cut.intercept = value;
  return cut;
}

CutData BendersAlgorithm::lagrangian_cut(const std::string& g,
                                         const std::vector<double>& anchor) const {
  CutData cut = benders_cut(g, anchor);
  std::vector<double> mu = cut.slope;
  std::vector<double> z;
  double best = lagrangian_value(g, anchor, mu, &z);
  if (!std::isfinite(best)) {
    throw Error(Errc::kUnboundedSubproblem,
                "Lagrangian subproblem " + g + " is unbounded at the LP duals");
  }
  std::vector<double> best_mu = mu;
  for (int it = 1; it <= config_.lagrangian_iters; ++it) {
    double norm = 0.0;
    for (size_t j = 0; j < mu.size(); ++j) {
      norm = std::max(norm, std::abs(anchor[j] - z[j]));
    }
    if (norm < 1e-9) break;
    const double step = config_.lagrangian_t0 / std::sqrt(static_cast<double>(it));
    for (size_t j = 0; j < mu.size(); ++j) mu[j] += step * (anchor[j] - z[j]);
    const double value = lagrangian_value(g, anchor, mu, &z);
    if (!std::isfinite(value)) break;
    if (value > best) {
      best = value;
      best_mu = mu;
    }
  }
  cut.kind = CutKind::kLagrangian;
  cut.intercept = best;
  cut.slope = best_mu;
  return cut;
}

double BendersAlgorithm::slot_floor(const std::string& g) const {
  const size_t kids = tree_.children.at(g).size();
  if (!config_.multicut || kids == 0) return config_.theta_floor;
  return config_.theta_floor / static_cast<double>(kids);
}

double BendersAlgorithm::subproblem_value(
    const std::string& g, const std::vector<double>& anchor) const {
  return solve_subgraph(g, anchor).result.objective;
}

CutData BendersAlgorithm::make_cut(const std::string& g,
                                   const std::vector<double>& anchor) const {
  if (config_.lagrangian) return lagrangian_cut(g, anchor);
  if (config_.strengthened) return strengthened_benders_cut(g, anchor);
  return benders_cut(g, anchor);
}

void BendersAlgorithm::add_cut(CutData cut) {
  const std::string target = cut.target;
  state_.cut_pool[target].push_back(std::move(cut));
}

void BendersAlgorithm::check_theta_floor(const SolveResult& r,
                                         const StandardFormProblem& p) {
  const double floor = slot_floor(tree_.root);
  const double tol = 1e-6 * std::max(1.0, std::abs(floor));
  const int slots = config_.multicut
                        ? static_cast<int>(tree_.children.at(tree_.root).size())
                        : (tree_.children.at(tree_.root).empty() ? 0 : 1);
  int present = 0;
  bool at_floor = false;
  for (int j = 0; j < p.num_cols(); ++j) {
    if (p.columns[j].node != kThetaNode) continue;
    ++present;
    if (r.primal[j] <= floor + tol) at_floor = true;
  }
  state_.theta_at_floor = at_floor || present < slots;
}

ForwardPassResult BendersAlgorithm::forward_pass() {
  ForwardPassResult fp;
  const std::string& root = tree_.root;
  const Subproblem& rsp = subproblem(root);
  const StandardFormProblem rp = instrumented(root, {});
  const SolveResult rr = solve_any(*config_.solver, rp);
  require_optimal(rr, "root subproblem " + root);
  check_theta_floor(rr, rp);
  fp.lb = rr.objective;
  fp.objectives[root] = rr.objective;
  std::vector<double> root_x = rr.primal;

  if (config_.regularize && std::isfinite(state_.best_ub)) {
    StandardFormProblem reg = rp;
    std::vector<std::pair<int, double>> level;
    for (int j = 0; j < rp.num_cols(); ++j) {
      if (rp.objective[j] != 0.0) level.emplace_back(j, rp.objective[j]);
      reg.objective[j] = 0.0;
    }
    reg.objective_constant = 0.0;
    fp.level_rhs = fp.lb + config_.alpha * (state_.best_ub - fp.lb);
    reg.add_row(level, Sense::kLessEqual, fp.level_rhs - rp.objective_constant,
                "level");
    const SolveResult lr = solve_any(*config_.solver, reg);
    if (lr.status != SolveStatus::kOptimal) {
      throw Error(Errc::kLevelSetInfeasible,
                  "level-set root problem has status " +
                      std::string(to_string(lr.status)));
    }
    root_x = lr.primal;
    fp.regularized = true;
    fp.level_activity = rp.evaluate_objective(root_x);
  }
  state_.iterate[root].assign(root_x.begin(), root_x.begin() + rsp.num_own);
  fp.costs[root] = rsp.true_cost(root_x);
  harvested_.clear();

  const bool harvest = !config_.lagrangian && !config_.strengthened;
  for (int s = 2; s <= tree_.num_stages; ++s) {
    const auto members = tree_.members(s);
    std::vector<Solved> solved(members.size());
    std::vector<std::vector<double>> anchors(members.size());
    for (size_t i = 0; i < members.size(); ++i) {
      anchors[i] = anchor_for(members[i]);
    }
    auto body = [&](size_t i) { solved[i] = solve_subgraph(members[i], anchors[i]); };
    if (s == 2 && tree_.num_stages == 2 && config_.parallelize_second_stage &&
        members.size() > 1) {
      detail::run_parallel(members.size(), body);
    } else {
      for (size_t i = 0; i < members.size(); ++i) body(i);
    }
    for (size_t i = 0; i < members.size(); ++i) {
      const std::string& g = members[i];
      const Subproblem& sp = subproblem(g);
      state_.iterate[g].assign(solved[i].result.primal.begin(),
                               solved[i].result.primal.begin() + sp.num_own);
      last_anchor_[g] = anchors[i];
      fp.objectives[g] = solved[i].result.objective;
      fp.costs[g] = solved[i].cost;
      if (harvest && !sp.integer_own) {
        harvested_[g] = cut_from_lp(g, anchors[i], solved[i].result);
      }
    }
  }
  fp.ub = 0.0;
  for (const auto& g : tree_.order) fp.ub += fp.costs[g];

  ++state_.k;
  state_.lb = std::max(state_.lb, fp.lb);
  state_.lb_history.push_back(state_.lb);
  state_.ub_history.push_back(fp.ub);
  if (fp.ub < state_.best_ub) {
    state_.best_ub = fp.ub;
    state_.best_iteration = state_.k;
    state_.best_iterate = state_.iterate;
  }
  state_.best_ub_history.push_back(state_.best_ub);
  return fp;
}

int BendersAlgorithm::backward_pass() {
  int added = 0;
  for (int s = tree_.num_stages; s >= 2; --s) {
    auto members = tree_.members(s);
    std::sort(members.begin(), members.end());
    std::vector<CutData> cuts(members.size());
    auto body = [&](size_t i) {
      const std::string& g = members[i];
      auto it = harvested_.find(g);
      cuts[i] = it != harvested_.end()
                    ? it->second
                    : make_cut(g, last_anchor_.at(g));
    };
    if (s == 2 && tree_.num_stages == 2 && config_.parallelize_second_stage &&
        members.size() > 1) {
      detail::run_parallel(members.size(), body);
    } else {
      for (size_t i = 0; i < members.size(); ++i) body(i);
    }
    for (auto& cut : cuts) {
      cut.iteration = state_.k;
      add_cut(std::move(cut));
      ++added;
    }
  }
  return added;
}

void BendersAlgorithm::warm_start_cuts() {
  // Stitch every subproblem into one problem; copies map onto the columns of
  // the variables they stand for.
  StandardFormProblem m;
  std::map<std::string, std::vector<int>> colmap;
  std::map<std::string, int> row0;
  for (const auto& g : tree_.order) {
    const Subproblem& sp = subproblem(g);
    std::vector<int>& cols = colmap[g];
    cols.assign(sp.problem.num_cols(), -1);
    for (int j = 0; j < sp.problem.num_cols(); ++j) {
      if (sp.problem.columns[j].node == kCopyNode) continue;
      VarRef ref = sp.problem.columns[j];
      if (ref.node == kSlackNode) ref.name = g + ":" + ref.name;
      cols[j] = m.add_column(ref, sp.problem.lower[j], sp.problem.upper[j],
                             sp.problem.integrality[j], sp.problem.objective[j]);
    }
    m.objective_constant += sp.problem.objective_constant;
  }
  for (const auto& g : tree_.order) {
    const Subproblem& sp = subproblem(g);
    std::vector<int>& cols = colmap[g];
    for (size_t j = 0; j < sp.copies.size(); ++j) {
      const std::string& p = tree_.parent.at(g);
      cols[sp.copy_columns[j]] =
          colmap[p][subproblem(p).problem.column(sp.copies[j])];
    }
    row0[g] = m.num_rows();
    std::vector<std::vector<std::pair<int, double>>> rows(sp.problem.num_rows());
    for (const auto& t : sp.problem.entries) {
      rows[t.row].emplace_back(cols[t.col], t.value);
    }
    for (int i = 0; i < sp.problem.num_rows(); ++i) {
      m.add_row(rows[i], sp.problem.row_sense[i], sp.problem.rhs[i],
                sp.problem.row_provenance[i]);
    }
  }
  const SolveResult r = config_.solver->solve_lp(lp_relaxation(m));
  if (r.status != SolveStatus::kOptimal) {
    throw Error(Errc::kRelaxationInfeasible,
                "LP relaxation of the whole problem has status " +
                    std::string(to_string(r.status)));
  }
  if (!r.has_duals) {
    throw Error(Errc::kDualsUnavailable, "no duals for the relaxation");
  }
  // Subtree cost of every subgraph, leaves first.
  std::map<std::string, double> subtree;
  for (auto it = tree_.order.rbegin(); it != tree_.order.rend(); ++it) {
    const Subproblem& sp = subproblem(*it);
    double cost = 0.0;
    for (int j = 0; j < sp.problem.num_cols(); ++j) {
      if (colmap[*it][j] >= 0 && sp.problem.columns[j].node != kCopyNode) {
        cost += sp.problem.objective[j] * r.primal[colmap[*it][j]];
      }
    }
    for (const auto& c : tree_.children.at(*it)) cost += subtree[c];
    subtree[*it] = cost;
  }
  std::vector<std::string> sorted(tree_.order.begin() + 1, tree_.order.end());
  std::sort(sorted.begin(), sorted.end());
  for (const auto& g : sorted) {
    const Subproblem& sp = subproblem(g);
    CutData cut;
    cut.kind = CutKind::kBenders;
    cut.target = tree_.parent.at(g);
    cut.child = g;
    cut.intercept = subtree[g];
    cut.iteration = 0;
    for (size_t j = 0; j < sp.copies.size(); ++j) {
      const int col = sp.copy_columns[j];
      double slope = 0.0;
      for (const auto& t : sp.problem.entries) {
        if (t.col == col) slope -= r.duals[row0[g] + t.row] * t.value;
      }
      cut.slope.push_back(slope);
      cut.anchor.push_back(r.primal[colmap[g][col]]);
    }
    add_cut(std::move(cut));
  }
}

BendersResult BendersAlgorithm::run() {
  const auto start = Clock::now();
  if (config_.warm_start_cuts) warm_start_cuts();
  BendersResult out;
  while (state_.k < config_.max_iters) {
    const ForwardPassResult fp = forward_pass();
    IterationRecord rec;
    rec.k = state_.k;
    rec.lb = state_.lb;
    rec.ub = fp.ub;
    rec.best_ub = state_.best_ub;
    rec.gap = benders_gap(state_.lb, state_.best_ub);
    rec.regularized = fp.regularized;
    rec.level_activity = fp.level_activity;
    rec.level_rhs = fp.level_rhs;
    const bool done = rec.gap <= config_.tol;
    if (!done && state_.k < config_.max_iters) rec.cuts_added = backward_pass();
    rec.seconds = seconds_since(start);
    state_.trace.push_back(rec);
    if (done) {
      out.status = BendersStatus::kConverged;
      break;
    }
  }
  out.objective = state_.best_ub;
  out.lower_bound = state_.lb;
  out.gap = benders_gap(state_.lb, state_.best_ub);
  out.iterations = state_.k;
  out.trace = state_.trace;
  out.theta_at_floor = state_.theta_at_floor;
  for (const auto& [g, x] : state_.best_iterate) {
    const Subproblem& sp = subproblem(g);
    for (int j = 0; j < sp.num_own; ++j) {
      out.solution[sp.problem.columns[j]] = x[j];
    }
  }
  out.seconds = seconds_since(start);
  return out;
}

}  // namespace optigraph
