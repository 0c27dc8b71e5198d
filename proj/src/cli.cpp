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

#include "optigraph/cli.hpp"

#include <chrono>
#include <iomanip>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "optigraph/benders.hpp"
#include "optigraph/fixtures.hpp"
#include "optigraph/io.hpp"
#include "optigraph/sequential.hpp"

namespace optigraph {
namespace {

using Clock = std::chrono::steady_clock;

struct Options {
  std::string instance;
  std::string fixture;
  std::string mode = "monolithic";
  std::string root;
  std::string partition;
  int max_iters = 100;
  double tol = 1e-6;
  bool multicut = false;
  bool strengthened = false;
  bool lagrangian = false;
  bool regularize = false;
  double alpha = 0.5;
  bool slacks = false;
  double slack_penalty = 1e6;
  bool parallel = false;
  bool warm_start = false;
  std::vector<std::string> order;
  std::string output;
  std::string save_instance;
};

int exit_code(Errc code) {
  switch (code) {
    case Errc::kSubproblemInfeasible:
    case Errc::kRelaxationInfeasible:
      return kExitInfeasible;
    case Errc::kNumericalBreakdown:
    case Errc::kUnboundedSubproblem:
    case Errc::kLevelSetInfeasible:
      return kExitFailure;
    case Errc::kNodeLimit:
      return kExitLimit;
    default:
      return kExitUsage;
  }
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

nlohmann::json config_echo(const Options& o) {
  nlohmann::json j;
  j["mode"] = o.mode;
  if (!o.instance.empty()) j["instance"] = o.instance;
  if (!o.fixture.empty()) j["fixture"] = o.fixture;
  if (!o.partition.empty()) j["partition"] = o.partition;
  if (!o.root.empty()) j["root"] = o.root;
  if (!o.order.empty()) j["order"] = o.order;
  j["max_iters"] = o.max_iters;
  j["tol"] = o.tol;
  j["multicut"] = o.multicut;
  j["strengthened"] = o.strengthened;
  j["lagrangian"] = o.lagrangian;
  j["regularize"] = o.regularize;
  j["alpha"] = o.alpha;
  j["slacks"] = o.slacks;
  j["slack_penalty"] = o.slack_penalty;
  j["parallel"] = o.parallel;
  j["warm_start_cuts"] = o.warm_start;
  return j;
}

double max_violation(const Graph& g, const std::map<VarRef, double>& solution) {
  const StandardFormProblem p = flatten(g);
  std::vector<double> x(p.num_cols(), 0.0);
  for (int j = 0; j < p.num_cols(); ++j) {
    auto it = solution.find(p.columns[j]);
    if (it != solution.end()) x[j] = it->second;
  }
  return p.max_violation(x);
}

std::string default_root(const Graph& g) {
  const auto subs = g.local_subgraphs();
  if (subs.empty()) {
    throw Error(Errc::kNoSubgraphs, "graph " + g.id() + " has no subgraphs");
  }
  return subs.front()->id();
}

int run_monolithic(const Graph& g, RunReport& report) {
  const SolveResult r = solve_milp(flatten(g));
  report.status = std::string(to_string(r.status));
  switch (r.status) {
    case SolveStatus::kOptimal:
      break;
    case SolveStatus::kInfeasible:
      return kExitInfeasible;
    case SolveStatus::kUnbounded:
      return kExitFailure;
    default:
      return kExitLimit;
  }
  report.objective = r.objective;
  report.lower_bound = r.objective;
  const StandardFormProblem p = flatten(g);
  for (int j = 0; j < p.num_cols(); ++j) report.solution[p.columns[j]] = r.primal[j];
  return kExitOk;
}

int run_benders(const Graph& g, const Options& o, RunReport& report) {
  BendersConfig cfg;
  cfg.max_iters = o.max_iters;
  cfg.tol = o.tol;
  cfg.multicut = o.multicut;
  cfg.strengthened = o.strengthened;
  cfg.lagrangian = o.lagrangian;
  cfg.regularize = o.regularize;
  cfg.alpha = o.alpha;
  cfg.add_slacks = o.slacks;
  cfg.slack_penalty = o.slack_penalty;
  cfg.parallelize_second_stage = o.parallel;
  cfg.warm_start_cuts = o.warm_start;
  BendersAlgorithm alg(g, o.root.empty() ? default_root(g) : o.root, cfg);
  const BendersResult r = alg.run();
  report.status = std::string(to_string(r.status));
  report.objective = r.objective;
  report.lower_bound = r.lower_bound;
  report.gap = r.gap;
  report.theta_at_floor = r.theta_at_floor;
  report.solution = r.solution;
  for (const auto& rec : r.trace) {
    report.iterations.push_back({rec.k, rec.lb, rec.ub, rec.best_ub, rec.gap,
                                 rec.seconds, rec.cuts_added});
  }
  return r.status == BendersStatus::kConverged ? kExitOk : kExitLimit;
}

int run_sequential(const Graph& g, const Options& o, RunReport& report,
                   bool bound) {
  SequentialOptions so;
  so.add_slacks = o.slacks;
  so.slack_penalty = o.slack_penalty;
  so.parallel = o.parallel;
  SequentialReport r;
  if (bound) {
    r = relaxed_parallel_bound(g, so);
    report.lower_bound = r.objective;
  } else {
    const auto order =
        o.order.empty() ? bfs_order(g, o.root.empty() ? default_root(g) : o.root)
                        : o.order;
    r = sequential_solve(g, order, so);
  }
  report.status = "optimal";
  report.objective = r.objective;
  // The bound point ignores cross-subgraph links, so it is not reported.
  if (!bound) report.solution = r.solution;
  return kExitOk;
}

void summarize(const RunReport& r, std::ostream& out) {
  out << std::setprecision(10);
  for (const auto& it : r.iterations) {
    out << "k=" << it.k << " lb=" << it.lb << " ub=" << it.ub
        << " best_ub=" << it.best_ub << " gap=" << it.gap << "\n";
  }
  out << "mode=" << r.mode << " status=" << r.status
      << " objective=" << r.objective;
  if (r.mode == "benders") {
    out << " lower_bound=" << r.lower_bound << " iterations=" << r.iterations.size();
    if (r.theta_at_floor) out << " theta_at_floor=true";
  }
  out << " max_violation=" << r.max_violation << "\n";
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  Options o;
  CLI::App app{"Model, decompose and solve graph-structured optimization problems."};
  app.name("optigraph_cli");
  auto* inst = app.add_option("--instance", o.instance, "Instance JSON file");
  auto* fix = app.add_option("--fixture", o.fixture, "Built-in instance")
                  ->check(CLI::IsMember(fixture_names()));
  inst->excludes(fix);
  fix->excludes(inst);
  app.add_option("--mode", o.mode, "monolithic, benders, sequential or bound")
      ->check(CLI::IsMember({"monolithic", "benders", "sequential", "bound"}));
  app.add_option("--root", o.root, "Root subgraph for benders and the default order");
  app.add_option("--partition", o.partition, "Membership file applied before solving");
  app.add_option("--max-iters", o.max_iters, "Iteration limit")->check(CLI::PositiveNumber);
  app.add_option("--tol", o.tol, "Relative gap tolerance")->check(CLI::NonNegativeNumber);
  app.add_flag("--multicut", o.multicut, "One cost-to-go variable per child");
  app.add_flag("--strengthened", o.strengthened, "Strengthened Benders cuts");
  app.add_flag("--lagrangian", o.lagrangian, "Lagrangian cuts");
  app.add_flag("--regularize", o.regularize, "Level-set regularized root iterates");
  app.add_option("--alpha", o.alpha, "Level-set parameter in (0, 1]");
  app.add_flag("--slacks", o.slacks, "Penalized slacks on relocated rows");
  app.add_option("--slack-penalty", o.slack_penalty, "Slack cost");
  app.add_flag("--parallel", o.parallel, "Parallel second stage or bound solves");
  app.add_flag("--warm-start-cuts", o.warm_start, "Initial cuts from the LP relaxation");
  app.add_option("--order", o.order, "Sequential order, comma separated")->delimiter(',');
  app.add_option("--output", o.output, "Run report JSON file");
  app.add_option("--save-instance", o.save_instance,
                 "Write the loaded (and partitioned) instance as JSON");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "optigraph_cli: " << e.what() << "\n";
    return kExitUsage;
  }

  RunReport report;
  report.mode = o.mode;
  report.config = config_echo(o);
  int code = kExitUsage;
  std::optional<Graph> graph;
  try {
    if (o.instance.empty() && o.fixture.empty()) {
      throw Error(Errc::kInvalidConfig, "one of --instance or --fixture is required");
    }
    const auto t_load = Clock::now();
    Graph g = o.instance.empty() ? generate_fixture(o.fixture) : load_instance(o.instance);
    if (!o.partition.empty()) g = apply_partition(g, load_partition(g, o.partition));
    report.seconds["load"] = seconds_since(t_load);
    graph = std::move(g);
    if (!o.save_instance.empty()) save_instance(*graph, o.save_instance);

    const auto t_solve = Clock::now();
    if (o.mode == "monolithic") {
      code = run_monolithic(*graph, report);
    } else if (o.mode == "benders") {
      code = run_benders(*graph, o, report);
    } else {
      code = run_sequential(*graph, o, report, o.mode == "bound");
    }
    report.seconds["solve"] = seconds_since(t_solve);
    if (!report.solution.empty()) {
      report.max_violation = max_violation(*graph, report.solution);
    }
    summarize(report, out);
  } catch (const Error& e) {
    code = exit_code(e.code());
    report.status = code == kExitInfeasible ? "infeasible" : "error";
    report.message = e.what();
    err << "optigraph_cli: " << e.what() << "\n";
  } catch (const std::exception& e) {
    code = kExitFailure;
    report.status = "error";
    report.message = e.what();
    err << "optigraph_cli: " << e.what() << "\n";
  }
  if (!o.output.empty()) {
    try {
      save_report(report, o.output);
    } catch (const Error& e) {
      err << "optigraph_cli: " << e.what() << "\n";
      if (code == kExitOk) code = kExitUsage;
    }
  }
  return code;
}

int cli_main(int argc, const char* const* argv) {
  return cli_main(argc, argv, std::cout, std::cerr);
}

}  // namespace optigraph
