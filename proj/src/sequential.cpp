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

#include "optigraph/sequential.hpp"

#include <chrono>
#include <set>

#include "optigraph/benders.hpp"
#include "optigraph/subproblem.hpp"
#include "optigraph/transform.hpp"
#include "parallel.hpp"

namespace optigraph {
namespace {

using Clock = std::chrono::steady_clock;

CondensedTopology checked_topology(const Graph& graph) {
  if (!graph.local_nodes().empty()) {
    throw Error(Errc::kLocalNodesAtRoot,
                "graph " + graph.id() + " has parent-level nodes");
  }
  if (graph.has_overlap() || graph.allow_overlap()) {
    throw Error(Errc::kOverlapUnsupported,
                "overlapping subgraphs cannot be decomposed");
  }
  return condensed_topology(graph);
}

std::map<std::string, SubproblemSpec> base_specs(
    const Graph& graph, const CondensedTopology& topo,
    const SequentialOptions& options, const std::string& first) {
  double constant = 0.0;
  auto objectives = split_objective(graph, topo, &constant);
  objectives[first].add_constant(constant);
  std::map<std::string, SubproblemSpec> specs;
  for (const Graph* s : graph.local_subgraphs()) {
    SubproblemSpec& spec = specs[s->id()];
    spec.subgraph = s;
    spec.objective = objectives[s->id()];
    spec.add_slacks = options.add_slacks;
    spec.slack_penalty = options.slack_penalty;
  }
  return specs;
}

std::set<std::string> edge_owners(const Edge& e, const CondensedTopology& topo) {
  std::set<std::string> s;
  for (const auto& n : e.nodes) s.insert(topo.owner.at(n));
  return s;
}

std::shared_ptr<const Solver> solver_of(const SequentialOptions& options) {
  return options.solver ? options.solver : std::make_shared<BuiltinSolver>();
}

void record(SequentialReport& report, const std::string& g,
            const Subproblem& sp, const SolveResult& r) {
  report.costs[g] = sp.true_cost(r.primal);
  report.objective += report.costs[g];
  for (int j = 0; j < sp.num_own; ++j) {
    report.solution[sp.problem.columns[j]] = r.primal[j];
  }
}

}  // namespace

SequentialReport sequential_solve(const Graph& graph,
                                  const std::vector<std::string>& order,
                                  const SequentialOptions& options) {
  const auto start = Clock::now();
  const CondensedTopology topo = checked_topology(graph);
  std::map<std::string, int> position;
  for (size_t i = 0; i < order.size(); ++i) {
    if (!position.emplace(order[i], static_cast<int>(i)).second) {
      throw Error(Errc::kInvalidOrder, "subgraph " + order[i] + " appears twice");
    }
  }
  for (const auto& v : topo.vertices) {
    if (!position.count(v)) {
      throw Error(Errc::kInvalidOrder, "order misses subgraph " + v);
    }
  }
  if (position.size() != topo.vertices.size()) {
    throw Error(Errc::kInvalidOrder, "order names an unknown subgraph");
  }

  auto specs = base_specs(graph, topo, options, order.front());
  for (const Edge* e : graph.local_edges()) {
    const auto owners = edge_owners(*e, topo);
    std::string latest = *owners.begin();
    for (const auto& g : owners) {
      if (position.at(g) > position.at(latest)) latest = g;
    }
    for (const Constraint& c : e->constraints) {
      if (owners.size() == 1) {
        specs[latest].internal_rows.push_back(&c);
      } else {
        specs[latest].relocated_rows.push_back(&c);
      }
    }
  }

  const auto solver = solver_of(options);
  SequentialReport report;
  report.order = order;
  for (const auto& g : order) {
    const Subproblem sp = build_subproblem(graph, specs.at(g));
    std::vector<double> fixed;
    for (const VarRef& ref : sp.copies) fixed.push_back(report.solution.at(ref));
    const SolveResult r = solve_subproblem(*solver, sp, sp.fixed(fixed));
    require_optimal(r, "subproblem " + g);
    record(report, g, sp, r);
  }
  report.seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

SequentialReport relaxed_parallel_bound(const Graph& graph,
                                        const SequentialOptions& options) {
  const auto start = Clock::now();
  const CondensedTopology topo = checked_topology(graph);
  auto specs = base_specs(graph, topo, options, topo.vertices.front());
  for (const Edge* e : graph.local_edges()) {
    const auto owners = edge_owners(*e, topo);
    if (owners.size() != 1) continue;
    for (const Constraint& c : e->constraints) {
      specs[*owners.begin()].internal_rows.push_back(&c);
    }
  }
  const auto solver = solver_of(options);
  const std::vector<std::string>& ids = topo.vertices;
  std::vector<Subproblem> sps(ids.size());
  std::vector<SolveResult> results(ids.size());
  auto body = [&](size_t i) {
    sps[i] = build_subproblem(graph, specs.at(ids[i]));
    results[i] = solve_subproblem(*solver, sps[i], sps[i].problem);
  };
  if (options.parallel && ids.size() > 1) {
    detail::run_parallel(ids.size(), body);
  } else {
    for (size_t i = 0; i < ids.size(); ++i) body(i);
  }
  SequentialReport report;
  report.order = ids;
  for (size_t i = 0; i < ids.size(); ++i) {
    require_optimal(results[i], "subproblem " + ids[i]);
    record(report, ids[i], sps[i], results[i]);
  }
  report.seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

std::vector<std::string> bfs_order(const Graph& graph, const std::string& root) {
  return build_tree(graph, root).order;
}

}  // namespace optigraph
