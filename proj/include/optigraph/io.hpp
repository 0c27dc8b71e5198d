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

// Instance files, membership files and run reports.
//
// An instance file is a JSON object:
//
//   {
//     "schema_version": "1.0",
//     "graph": {
//       "id": "g",
//       "objective_mode": "sum_of_node_objectives" | "explicit",
//       "objective": {"terms": {"node.var": c, ...}, "constant": c0},
//       "allow_overlap": false,
//       "nodes": [{
//         "id": "n1",
//         "variables": [{"name": "x", "lb": 0, "ub": "inf",
//                        "integrality": "continuous", "obj": 2.0}],
//         "objective_constant": 0,
//         "constraints": [{"terms": {"x": 1}, "sense": "ge", "rhs": 1.3}]
//       }],
//       "subgraphs": [ ...graphs... ]
//     },
//     "link_constraints": [{"owner": "g", "terms": {"n1.x": 1, "n2.y": 1},
//                           "sense": "ge", "rhs": 1}]
//   }
//
// "objective" is only read in explicit mode. Infinite bounds are the strings
// "inf" and "-inf". Senses are "le", "eq" and "ge". An optional top-level
// "objective_sense": "max" negates every objective on load.
//
// A membership file has one "node_id block_index" pair per line with 1-based
// block indices. Blank lines and lines starting with '#' are skipped.

#ifndef OPTIGRAPH_IO_HPP_
#define OPTIGRAPH_IO_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "optigraph/model.hpp"
#include "optigraph/transform.hpp"

namespace optigraph {

inline constexpr std::string_view kSchemaVersion = "1.0";

// Canonical JSON: sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const nlohmann::json& j);

nlohmann::json instance_to_json(const Graph& graph);
// Throws kParseError, kSchemaVersionMismatch, kUnknownVariable and the
// model construction errors.
Graph instance_from_json(const nlohmann::json& j);

// Throws kIoError as well as the instance_from_json errors.
Graph load_instance(const std::string& path);
void save_instance(const Graph& graph, const std::string& path);

// Throws kIoError and kParseError.
std::map<std::string, int> load_membership(const std::string& path);
// load_membership followed by validate_partition.
Partition load_partition(const Graph& graph, const std::string& path);

struct ReportIteration {
  int k = 0;
  double lb = 0.0;
  double ub = 0.0;
  double best_ub = 0.0;
  double gap = 0.0;
  double seconds = 0.0;
  int cuts_added = 0;
};

struct RunReport {
  std::string mode;
  std::string status;
  double objective = 0.0;
  // Benders lower bound, or the bound of mode "bound".
  double lower_bound = 0.0;
  double gap = 0.0;
  std::vector<ReportIteration> iterations;
  std::map<VarRef, double> solution;  // empty in mode "bound"
  // Largest row or bound violation of `solution` on the loaded instance.
  double max_violation = 0.0;
  bool theta_at_floor = false;
  std::map<std::string, double> seconds;  // per phase
  nlohmann::json config = nlohmann::json::object();
  std::string message;
};

// Non-finite numbers are written as "inf", "-inf" or "nan".
nlohmann::json report_to_json(const RunReport& report);
void save_report(const RunReport& report, const std::string& path);

}  // namespace optigraph

#endif  // OPTIGRAPH_IO_HPP_
