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

#include "optigraph/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace optigraph {
namespace {

using nlohmann::json;

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double read_number(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw Error(Errc::kParseError, what + " is not a number: " + j.dump());
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(Errc::kParseError, where + " lacks \"" + key + "\"");
  }
  return obj.at(key);
}

Sense read_sense(const json& j, const std::string& where) {
  const std::string s = j.is_string() ? j.get<std::string>() : "";
  if (s == "le" || s == "<=") return Sense::kLessEqual;
  if (s == "eq" || s == "==") return Sense::kEqual;
  if (s == "ge" || s == ">=") return Sense::kGreaterEqual;
  throw Error(Errc::kParseError, where + " has unknown sense " + j.dump());
}

Integrality read_integrality(const json& j, const std::string& where) {
  const std::string s = j.is_string() ? j.get<std::string>() : "";
  if (s == "continuous") return Integrality::kContinuous;
  if (s == "binary") return Integrality::kBinary;
  if (s == "integer") return Integrality::kInteger;
  throw Error(Errc::kParseError, where + " has unknown integrality " + j.dump());
}

json terms_json(const LinearExpr& e, bool qualified) {
  json t = json::object();
  for (const auto& [ref, c] : e.terms()) t[qualified ? ref.qualified() : ref.name] = c;
  return t;
}

json graph_json(const Graph& g) {
  json j;
  j["id"] = g.id();
  if (g.objective_mode() == ObjectiveMode::kExplicit) {
    j["objective_mode"] = "explicit";
    j["objective"] = {{"terms", terms_json(g.explicit_objective(), true)},
                      {"constant", g.explicit_objective().constant()}};
  } else {
    j["objective_mode"] = "sum_of_node_objectives";
  }
  if (g.allow_overlap()) j["allow_overlap"] = true;
  json nodes = json::array();
  for (const Node* n : g.local_nodes()) {
    json node;
    node["id"] = n->id();
    json vars = json::array();
    for (const Variable& v : n->variables()) {
      vars.push_back({{"name", v.name},
                      {"lb", number(v.lower)},
                      {"ub", number(v.upper)},
                      {"integrality", std::string(to_string(v.integrality))},
                      {"obj", n->objective().coefficient(n->operator[](v.name))}});
    }
    node["variables"] = std::move(vars);
    node["objective_constant"] = n->objective().constant();
    json rows = json::array();
    for (const Constraint& c : n->constraints()) {
      rows.push_back({{"terms", terms_json(c.expr, false)},
                      {"sense", std::string(to_string(c.sense))},
                      {"rhs", c.rhs}});
    }
    node["constraints"] = std::move(rows);
    nodes.push_back(std::move(node));
  }
  j["nodes"] = std::move(nodes);
  json subs = json::array();
  for (const Graph* s : g.local_subgraphs()) subs.push_back(graph_json(*s));
  j["subgraphs"] = std::move(subs);
  return j;
}

void collect_links(const Graph& g, json& out) {
  for (const Edge* e : g.local_edges()) {
    for (const Constraint& c : e->constraints) {
      out.push_back({{"owner", g.id()},
                     {"terms", terms_json(c.expr, true)},
                     {"sense", std::string(to_string(c.sense))},
                     {"rhs", c.rhs}});
    }
  }
  for (const Graph* s : g.local_subgraphs()) collect_links(*s, out);
}

LinearExpr read_node_terms(const json& terms, const Node& node,
                           const std::string& where) {
  LinearExpr e;
  for (const auto& [name, c] : terms.items()) {
    if (node.find_variable(name) == nullptr) {
      throw Error(Errc::kUnknownVariable,
                  where + " references unknown variable " + node.id() + "." + name);
    }
    e.add(node[name], read_number(c, where));
  }
  return e;
}

LinearExpr read_qualified_terms(const json& terms, const Graph& root,
                                const std::string& where) {
  LinearExpr e;
  for (const auto& [name, c] : terms.items()) {
    const VarRef ref = VarRef::parse(name);
    const Node* node = root.find_node(ref.node);
    if (node == nullptr || node->find_variable(ref.name) == nullptr) {
      throw Error(Errc::kUnknownVariable, where + " references unknown variable " + name);
    }
    e.add(ref, read_number(c, where));
  }
  return e;
}

Graph read_graph(const json& j, double sign) {
  const std::string id = field(j, "id", "graph").get<std::string>();
  const std::string where = "graph " + id;
  Graph g(id);
  if (j.value("allow_overlap", false)) g.set_allow_overlap(true);
  if (j.contains("nodes")) {
    for (const json& nj : j.at("nodes")) {
      const std::string nid = field(nj, "id", where + " node").get<std::string>();
      const std::string nwhere = "node " + nid;
      Node& node = g.add_node(nid);
      LinearExpr obj;
      for (const json& vj : nj.value("variables", json::array())) {
        const std::string name = field(vj, "name", nwhere + " variable").get<std::string>();
        const double lb = vj.contains("lb") ? read_number(vj.at("lb"), nwhere) : -kInf;
        const double ub = vj.contains("ub") ? read_number(vj.at("ub"), nwhere) : kInf;
        const Integrality kind =
            vj.contains("integrality") ? read_integrality(vj.at("integrality"), nwhere)
                                       : Integrality::kContinuous;
        const VarRef ref = node.add_variable(name, lb, ub, kind);
        if (vj.contains("obj")) obj.add(ref, sign * read_number(vj.at("obj"), nwhere));
      }
      obj.add_constant(sign * nj.value("objective_constant", 0.0));
      node.set_objective(std::move(obj));
      for (const json& cj : nj.value("constraints", json::array())) {
        node.add_constraint(read_node_terms(field(cj, "terms", nwhere), node, nwhere),
                            read_sense(field(cj, "sense", nwhere), nwhere),
                            read_number(field(cj, "rhs", nwhere), nwhere));
      }
    }
  }
  if (j.contains("subgraphs")) {
    for (const json& sj : j.at("subgraphs")) g.add_subgraph(read_graph(sj, sign));
  }
  return g;
}

// Explicit objectives are read once the whole tree exists, since their terms
// may reference nodes anywhere below the graph.
void read_objectives(const json& j, Graph& g, double sign) {
  const std::string mode = j.value("objective_mode", "sum_of_node_objectives");
  if (mode == "explicit") {
    const json& oj = field(j, "objective", "graph " + g.id());
    LinearExpr e = read_qualified_terms(field(oj, "terms", "objective"), g,
                                        "objective of " + g.id());
    e.add_constant(oj.value("constant", 0.0));
    e *= sign;
    g.set_objective(std::move(e));
  } else if (mode != "sum_of_node_objectives") {
    throw Error(Errc::kParseError, "unknown objective_mode " + mode);
  }
  if (!j.contains("subgraphs")) return;
  const auto subs = g.mutable_local_subgraphs();
  const json& sj = j.at("subgraphs");
  for (size_t i = 0; i < subs.size() && i < sj.size(); ++i) {
    read_objectives(sj[i], *subs[i], sign);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIoError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::kIoError, "cannot write " + path);
  out << text;
  if (!out) throw Error(Errc::kIoError, "write to " + path + " failed");
}

}  // namespace

std::string canonical_dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json instance_to_json(const Graph& graph) {
  json j;
  j["schema_version"] = std::string(kSchemaVersion);
  j["graph"] = graph_json(graph);
  json links = json::array();
  collect_links(graph, links);
  j["link_constraints"] = std::move(links);
  return j;
}

Graph instance_from_json(const nlohmann::json& j) {
  try {
    const json& version = field(j, "schema_version", "instance");
    if (!version.is_string() || version.get<std::string>() != kSchemaVersion) {
      throw Error(Errc::kSchemaVersionMismatch,
                  "instance schema " + version.dump() + ", expected " +
                      std::string(kSchemaVersion));
    }
    double sign = 1.0;
    if (j.contains("objective_sense")) {
      const std::string s = j.at("objective_sense").get<std::string>();
      if (s == "max") {
        sign = -1.0;
      } else if (s != "min") {
        throw Error(Errc::kParseError, "unknown objective_sense " + s);
      }
    }
    const json& gj = field(j, "graph", "instance");
    Graph g = read_graph(gj, sign);
    read_objectives(gj, g, sign);
    for (const json& lj : j.value("link_constraints", json::array())) {
      const std::string owner = field(lj, "owner", "link constraint").get<std::string>();
      Graph* target = owner == g.id() ? &g : g.find_subgraph(owner);
      if (target == nullptr) {
        throw Error(Errc::kParseError, "link constraint owner " + owner + " not found");
      }
      const std::string where = "link constraint of " + owner;
      target->add_link_constraint(
          read_qualified_terms(field(lj, "terms", where), g, where),
          read_sense(field(lj, "sense", where), where),
          read_number(field(lj, "rhs", where), where));
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kParseError, e.what());
  }
}

Graph load_instance(const std::string& path) {
  const std::string text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kParseError, path + ": " + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const Graph& graph, const std::string& path) {
  write_file(path, canonical_dump(instance_to_json(graph)));
}

std::map<std::string, int> load_membership(const std::string& path) {
  std::istringstream in(read_file(path));
  std::map<std::string, int> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string node;
    if (!(ls >> node) || node[0] == '#') continue;
    int block = 0;
    std::string rest;
    if (!(ls >> block) || (ls >> rest)) {
      throw Error(Errc::kParseError,
                  path + ":" + std::to_string(line_no) + ": expected 'node_id block_index'");
    }
    if (!out.emplace(node, block).second) {
      throw Error(Errc::kParseError,
                  path + ":" + std::to_string(line_no) + ": node " + node + " listed twice");
    }
  }
  return out;
}

Partition load_partition(const Graph& graph, const std::string& path) {
  return validate_partition(graph, load_membership(path));
}

nlohmann::json report_to_json(const RunReport& report) {
  json j;
  j["schema_version"] = std::string(kSchemaVersion);
  j["mode"] = report.mode;
  j["status"] = report.status;
  j["objective"] = number(report.objective);
  j["lower_bound"] = number(report.lower_bound);
  j["gap"] = number(report.gap);
  json iters = json::array();
  for (const auto& it : report.iterations) {
    iters.push_back({{"k", it.k},
                     {"lb", number(it.lb)},
                     {"ub", number(it.ub)},
                     {"best_ub", number(it.best_ub)},
                     {"gap", number(it.gap)},
                     {"seconds", it.seconds},
                     {"cuts_added", it.cuts_added}});
  }
  j["bounds_per_iteration"] = std::move(iters);
  json sol = json::object();
  for (const auto& [ref, v] : report.solution) sol[ref.qualified()] = number(v);
  j["solution"] = std::move(sol);
  j["max_violation"] = number(report.max_violation);
  j["theta_at_floor"] = report.theta_at_floor;
  json secs = json::object();
  for (const auto& [phase, s] : report.seconds) secs[phase] = s;
  j["seconds"] = std::move(secs);
  j["config"] = report.config;
  j["message"] = report.message;
  return j;
}

void save_report(const RunReport& report, const std::string& path) {
  write_file(path, canonical_dump(report_to_json(report)));
}

}  // namespace optigraph
