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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "instances.hpp"
#include "optigraph/benders.hpp"
#include "optigraph/fixtures.hpp"
#include "optigraph/sequential.hpp"
#include "optigraph/solver.hpp"
#include "optigraph/transform.hpp"
#include "oracles.hpp"

namespace optigraph {
namespace {

using Clock = std::chrono::steady_clock;

// Pinned tolerances and limits.
constexpr double kStorageRelTol = 1e-6;
constexpr int kStorageMaxIters = 25;
constexpr double kStorageMaxSeconds = 5.0;
constexpr double kChain3Gap = 1e-7;
constexpr double kChain3MaxSeconds = 2.0;
constexpr int kRandomLps = 200;
constexpr double kLpObjectiveTol = 1e-7;
constexpr double kKktTol = 1e-7;
constexpr int kRandomMilps = 50;
constexpr double kMilpTol = 1e-9;
constexpr int kTransformInstances = 100;
constexpr double kTransformRelTol = 1e-8;
constexpr int kCutSamples = 200;
constexpr double kCutTol = 1e-6;
constexpr double kTangentTol = 1e-7;
constexpr double kDominanceTol = 1e-7;
constexpr double kBoundTol = 1e-9;
constexpr double kLevelTol = 1e-6;
constexpr double kSandwichTol = 1e-9;
constexpr double kRootRelTol = 1e-6;

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

double monolithic(const Graph& g) {
  const SolveResult r = solve_milp(flatten(g));
  if (r.status != SolveStatus::kOptimal) {
    throw Error(Errc::kInvalidConfig, "monolithic solve of " + g.id() + " failed");
  }
  return r.objective;
}

BendersConfig with_slacks() {
  BendersConfig c;
  c.add_slacks = true;
  return c;
}

// Bound-history soundness of a finished run.
void check_bounds(const BendersState& s, const std::string& name, Check& c) {
  for (size_t k = 1; k < s.lb_history.size(); ++k) {
    c.require(s.lb_history[k] >= s.lb_history[k - 1], name + " LB decreased");
    c.require(s.best_ub_history[k] <= s.best_ub_history[k - 1],
              name + " best UB increased");
  }
  for (size_t k = 0; k < s.lb_history.size(); ++k) {
    if (!std::isfinite(s.best_ub_history[k])) continue;
    c.require(s.lb_history[k] <=
                  s.best_ub_history[k] + kBoundTol * std::max(1.0, std::abs(s.lb_history[k])),
              name + " LB above UB");
  }
}

void criterion1(Check& c) {
  const double mono = monolithic(storage_fixture());
  const auto t = Clock::now();
  BendersAlgorithm alg(storage_two_block(), "planning", with_slacks());
  const BendersResult r = alg.run();
  const double secs = seconds_since(t);
  c.require(r.status == BendersStatus::kConverged, "not converged");
  c.require(rel_diff(r.objective, mono) <= kStorageRelTol, "objective mismatch");
  c.require(r.iterations <= kStorageMaxIters, "too many iterations");
  c.require(secs < kStorageMaxSeconds, "too slow");
  c.detail << "monolithic=" << mono << " gbd=" << r.objective
           << " iterations=" << r.iterations << " seconds=" << secs;
}

void criterion2(Check& c) {
  const double exact = testing::integer_enumeration(flatten(chain3_milp())).objective;
  const auto t = Clock::now();
  BendersConfig cfg;
  cfg.multicut = true;
  cfg.strengthened = true;
  cfg.tol = kChain3Gap;
  BendersAlgorithm alg(chain3_milp(), "g2", cfg);
  const BendersResult r = alg.run();
  const double secs = seconds_since(t);
  c.require(r.status == BendersStatus::kConverged, "not converged");
  c.require(r.gap <= kChain3Gap, "gap");
  c.require(rel_diff(r.objective, exact) <= kChain3Gap, "objective mismatch");
  c.require(secs < kChain3MaxSeconds, "too slow");
  c.detail << "enumeration=" << exact << " gbd=" << r.objective << " gap=" << r.gap
           << " seconds=" << secs;
}

void criterion3(Check& c) {
  std::mt19937_64 rng(20261);
  int optimal = 0;
  double worst_obj = 0.0;
  double worst_kkt = 0.0;
  for (int trial = 0; trial < kRandomLps; ++trial) {
    const StandardFormProblem p = testing::random_problem(rng, {});
    const auto oracle = testing::vertex_enumeration(p);
    const SolveResult r = solve_lp(p);
    c.require((r.status == SolveStatus::kOptimal) == oracle.feasible,
              "status mismatch on trial " + std::to_string(trial));
    if (!oracle.feasible || r.status != SolveStatus::kOptimal) continue;
    ++optimal;
    worst_obj = std::max(worst_obj, std::abs(r.objective - oracle.objective));
    const auto kkt = testing::check_kkt(p, r.primal, r.duals, r.reduced_costs);
    const double scale = 1.0 + std::abs(r.objective);
    worst_kkt = std::max({worst_kkt, kkt.primal_violation, kkt.duality_gap / scale,
                          kkt.dual_sign_violation, kkt.complementarity / scale});
  }
  c.require(worst_obj <= kLpObjectiveTol, "objective vs enumeration");
  c.require(worst_kkt <= kKktTol, "strong duality or complementarity");
  c.detail << "optimal=" << optimal << "/" << kRandomLps << " max_obj_err=" << worst_obj
           << " max_kkt_err=" << worst_kkt;
}

void criterion4(Check& c) {
  std::mt19937_64 rng(20262);
  testing::RandomLpSpec spec;
  spec.binaries = 10;
  spec.min_cols = 1;
  spec.max_cols = 3;
  spec.min_rows = 3;
  int feasible = 0;
  double worst = 0.0;
  for (int trial = 0; trial < kRandomMilps; ++trial) {
    const StandardFormProblem p = testing::random_problem(rng, spec);
    const auto oracle = testing::integer_enumeration(p);
    const SolveResult r = solve_milp(p);
    c.require((r.status == SolveStatus::kOptimal) == oracle.feasible,
              "status mismatch on trial " + std::to_string(trial));
    if (!oracle.feasible || r.status != SolveStatus::kOptimal) continue;
    ++feasible;
    worst = std::max(worst, std::abs(r.objective - oracle.objective));
  }
  c.require(worst <= kMilpTol, "objective vs enumeration");
  c.detail << "feasible=" << feasible << "/" << kRandomMilps << " max_err=" << worst;
}

void criterion5(Check& c) {
  std::mt19937_64 rng(20263);
  int checked = 0;
  int trials = 0;
  double worst = 0.0;
  while (checked < kTransformInstances && trials < 10 * kTransformInstances) {
    ++trials;
    testing::RandomCase rc = testing::random_case(rng);
    const SolveResult base = solve_lp(flatten(rc.flat));
    if (base.status != SolveStatus::kOptimal) continue;
    ++checked;
    const double ref = base.objective;
    Graph parted = apply_partition(rc.flat, rc.partition);
    std::vector<double> values = {monolithic(parted), monolithic(aggregate(parted).graph),
                                  monolithic(aggregate_to_depth(parted, 0).graph),
                                  monolithic(aggregate_to_depth(parted, 1).graph)};
    std::string edge;
    for (const Edge* e : parted.local_edges()) {
      if (e->nodes == std::vector<std::string>{"v0", "v2"}) edge = e->id;
    }
    reroute_link(parted, edge, "V", std::string("A"));
    values.push_back(monolithic(parted));
    for (double v : values) worst = std::max(worst, rel_diff(v, ref));
  }
  c.require(checked == kTransformInstances, "not enough feasible instances");
  c.require(worst <= kTransformRelTol, "optimum changed");

  Graph tri = testing::triangle();
  const double before = monolithic(tri);
  const bool cyclic = !condensed_topology(tri).acyclic();
  reroute_link(tri, tri.local_edges()[2]->id, "G2");
  const CondensedTopology t = condensed_topology(tri);
  c.require(cyclic && t.acyclic() && t.connected(), "triangle not tree-valid");
  c.require(rel_diff(monolithic(tri), before) <= kTransformRelTol, "triangle optimum");
  c.detail << "instances=" << checked << " max_rel_err=" << worst
           << " triangle_tree=" << (t.acyclic() && t.connected());
}

// Builds cuts of every kind at a few anchors and checks them against the
// re-solved child value at random points.
int cut_validity(const BendersAlgorithm& alg, const std::string& g, std::mt19937_64& rng,
                 Check& c) {
  std::vector<CutData> cuts;
  for (int i = 0; i < 3; ++i) {
    const auto anchor = testing::random_anchor(alg, g, rng);
    cuts.push_back(alg.benders_cut(g, anchor));
    cuts.push_back(alg.strengthened_benders_cut(g, anchor));
    cuts.push_back(alg.lagrangian_cut(g, anchor));
    const double phi_b = cuts[cuts.size() - 3].evaluate(anchor);
    const double phi_sb = cuts[cuts.size() - 2].evaluate(anchor);
    const double phi_l = cuts[cuts.size() - 1].evaluate(anchor);
    const double tol = kDominanceTol * std::max(1.0, std::abs(phi_sb));
    c.require(phi_b <= phi_sb + tol && phi_sb <= phi_l + tol, "dominance at " + g);
  }
  int checks = 0;
  for (int s = 0; s < kCutSamples; ++s) {
    const auto point = testing::random_anchor(alg, g, rng);
    const double value = alg.subproblem_value(g, point);
    for (const CutData& cut : cuts) {
      c.require(cut.evaluate(point) <= value + kCutTol * std::max(1.0, std::abs(value)),
                std::string(to_string(cut.kind)) + " cut of " + g + " overestimates");
      ++checks;
    }
  }
  return checks;
}

void criterion6(Check& c) {
  std::mt19937_64 rng(20264);
  int checks = 0;
  for (const auto& [g, root] : std::vector<std::pair<Graph, std::string>>{
           {chain3_milp(), "g2"}, {chain3_milp(), "g1"}, {mini_pcm(), "pcm1"},
           {mini_pcm(), "pcm2"}}) {
    BendersAlgorithm alg(g, root, with_slacks());
    alg.forward_pass();
    alg.backward_pass();
    alg.forward_pass();
    for (const auto& child : alg.tree().order) {
      if (child != alg.tree().root) checks += cut_validity(alg, child, rng, c);
    }
  }
  int tangents = 0;
  for (const auto& [g, root] : std::vector<std::pair<Graph, std::string>>{
           {testing::chain3_lp(), "g2"}, {mini_pcm(true), "pcm2"}}) {
    BendersAlgorithm alg(g, root, with_slacks());
    alg.forward_pass();
    for (const auto& child : alg.tree().order) {
      if (child == alg.tree().root) continue;
      for (int s = 0; s < 20; ++s) {
        const auto a = testing::random_anchor(alg, child, rng);
        const double value = alg.subproblem_value(child, a);
        c.require(std::abs(alg.benders_cut(child, a).evaluate(a) - value) <=
                      kTangentTol * std::max(1.0, std::abs(value)),
                  "Benders cut of " + child + " not tangent");
        ++tangents;
      }
    }
  }
  c.detail << "validity_checks=" << checks << " tangency_checks=" << tangents;
}

void criterion7(Check& c) {
  const std::vector<std::pair<Graph, std::string>> runs = {
      {storage_two_block(), "planning"}, {chain3_milp(), "g2"},
      {mini_cem(), "planning"},          {mini_pcm(true), "pcm1"},
      {mini_pcm(), "pcm2"}};
  int count = 0;
  for (const auto& [g, root] : runs) {
    for (bool multicut : {false, true}) {
      BendersConfig cfg = with_slacks();
      cfg.max_iters = 40;
      cfg.multicut = multicut;
      BendersAlgorithm alg(g, root, cfg);
      alg.run();
      check_bounds(alg.state(), g.id(), c);
      ++count;
    }
  }
  BendersConfig plain = with_slacks();
  BendersConfig reg = plain;
  reg.regularize = true;
  reg.alpha = 0.5;
  BendersAlgorithm a(mini_cem(), "planning", plain);
  BendersAlgorithm b(mini_cem(), "planning", reg);
  const BendersResult ra = a.run();
  const BendersResult rb = b.run();
  check_bounds(a.state(), "mini_cem", c);
  check_bounds(b.state(), "mini_cem regularized", c);
  c.require(ra.status == BendersStatus::kConverged && rb.status == BendersStatus::kConverged,
            "mini_cem not converged");
  c.require(rel_diff(rb.objective, ra.objective) <= reg.tol, "regularized optimum differs");
  int level_rows = 0;
  for (const auto& rec : rb.trace) {
    if (!rec.regularized) continue;
    ++level_rows;
    c.require(rec.level_activity <=
                  rec.level_rhs + kLevelTol * std::max(1.0, std::abs(rec.level_rhs)),
              "level-set row violated at k=" + std::to_string(rec.k));
  }
  c.require(level_rows == rb.iterations - 1, "missing regularized iterations");
  c.detail << "runs=" << count + 2 << " plain=" << ra.objective << " (k=" << ra.iterations
           << ") regularized=" << rb.objective << " (k=" << rb.iterations
           << ") level_rows=" << level_rows;
}

void criterion8(Check& c) {
  SequentialOptions so;
  so.add_slacks = true;
  const std::vector<std::pair<Graph, std::string>> cases = {
      {storage_two_block(), "planning"}, {chain3_milp(), "g2"},
      {mini_cem(), "planning"},          {mini_pcm(), "pcm1"}};
  for (const auto& [g, root] : cases) {
    const double mono = monolithic(g);
    const double lb = relaxed_parallel_bound(g, so).objective;
    const SequentialReport seq = sequential_solve(g, bfs_order(g, root), so);
    const double tol = kSandwichTol * std::max(1.0, std::abs(mono));
    c.require(lb <= mono + tol, g.id() + " bound above optimum");
    c.require(mono <= seq.objective + tol, g.id() + " sequential below optimum");
    BendersAlgorithm alg(g, root, with_slacks());
    const ForwardPassResult fp = alg.forward_pass();
    c.require(fp.ub == seq.objective, g.id() + " forward pass differs");
    c.detail << g.id() << ": " << lb << " <= " << mono << " <= " << seq.objective << "; ";
  }
}

void criterion9(Check& c) {
  const Graph g = mini_pcm(true);
  const double mono = monolithic(g);
  std::vector<double> values;
  for (const Graph* s : g.local_subgraphs()) {
    BendersAlgorithm alg(g, s->id(), with_slacks());
    const BendersResult r = alg.run();
    c.require(r.status == BendersStatus::kConverged, s->id() + " not converged");
    values.push_back(r.objective);
    c.detail << s->id() << "=" << r.objective << " (k=" << r.iterations << ") ";
  }
  for (double v : values) {
    c.require(rel_diff(v, values.front()) <= kRootRelTol, "roots disagree");
    c.require(rel_diff(v, mono) <= kRootRelTol, "root differs from monolithic");
  }
  c.detail << "monolithic=" << mono;
}

void criterion10(Check& c) {
  BendersConfig serial = with_slacks();
  BendersConfig parallel = serial;
  parallel.parallelize_second_stage = true;
  BendersAlgorithm s(mini_cem(), "planning", serial);
  BendersAlgorithm p(mini_cem(), "planning", parallel);
  const BendersResult rs = s.run();
  const BendersResult rp = p.run();
  c.require(s.state().lb_history == p.state().lb_history, "LB history differs");
  c.require(s.state().ub_history == p.state().ub_history, "UB history differs");
  c.require(s.state().best_ub_history == p.state().best_ub_history,
            "best UB history differs");
  c.require(rs.solution == rp.solution, "solution differs");
  c.detail << "iterations=" << rs.iterations << "/" << rp.iterations;
}

}  // namespace
}  // namespace optigraph

int main() {
  using optigraph::Check;
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"storage gBD matches monolithic", optigraph::criterion1},
      {"chain3_milp multicut strengthened gBD", optigraph::criterion2},
      {"random LPs vs vertex enumeration and KKT", optigraph::criterion3},
      {"random MILPs vs enumeration", optigraph::criterion4},
      {"transform equivalence and triangle reroute", optigraph::criterion5},
      {"cut validity, tangency and dominance", optigraph::criterion6},
      {"bound monotonicity and level-set regularization", optigraph::criterion7},
      {"sequential sandwich and forward pass", optigraph::criterion8},
      {"root-choice invariance on mini_pcm_lp", optigraph::criterion9},
      {"parallel determinism on mini_cem", optigraph::criterion10},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto t = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail << "exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
    failed += !c.pass;
    std::cout << (c.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " ("
              << criteria[i].first << ") [" << secs << " s] " << c.detail.str() << "\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
