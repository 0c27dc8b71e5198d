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

#include "optigraph/transform.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace optigraph {

namespace {

std::vector<std::string> node_ids(const Graph& graph) {
  std::vector<std::string> ids;
  for (const Node* n : graph.all_nodes()) ids.push_back(n->id());
  return ids;
}

void check_blocks(const std::vector<std::string>& universe,
                  const Partition& partition, const std::string& where) {
  std::set<std::string> expected(universe.begin(), universe.end());
  std::set<std::string> seen;
  for (size_t k = 0; k < partition.blocks.size(); ++k) {
    const auto& block = partition.blocks[k];
    if (block.empty()) {
      throw Error(Errc::kEmptyBlock, "block " + std::to_string(k + 1) +
                                         " of " + where + " is empty");
    }
    for (const auto& id : block) {
      if (expected.count(id) == 0) {
        throw Error(Errc::kNotCovering,
                    "node " + id + " is not part of " + where);
      }
      if (!seen.insert(id).second) {
        throw Error(Errc::kNotDisjoint,
                    "node " + id + " appears in more than one block");
      }
    }
  }
  for (const auto& id : expected) {
    if (seen.count(id) == 0) {
      throw Error(Errc::kNotCovering, "node " + id + " of " + where +
                                          " is not assigned to a block");
    }
  }
  if (!partition.names.empty() &&
      partition.names.size() != partition.blocks.size()) {
    throw Error(Errc::kPartitionInvalid, "one name per block is required");
  }
  for (const auto& name : partition.names) check_identifier(name, "subgraph");
  if (!partition.sub_partitions.empty()) {
    if (partition.sub_partitions.size() != partition.blocks.size()) {
      throw Error(Errc::kPartitionInvalid,
                  "sub-partitions must be given for every block or none");
    }
    for (size_t k = 0; k < partition.blocks.size(); ++k) {
      const Partition& sub = partition.sub_partitions[k];
      if (!sub.blocks.empty()) {
        check_blocks(partition.blocks[k], sub,
                     "block " + std::to_string(k + 1) + " of " + where);
      }
    }
  }
}

std::string block_name(const std::string& parent, const Partition& p,
                       size_t k) {
  return p.names.empty() ? parent + "_b" + std::to_string(k + 1) : p.names[k];
}

void partition_in_place(Graph& graph, const Partition& partition) {
  if (!graph.local_subgraphs().empty()) {
    throw Error(Errc::kPartitionInvalid,
                "graph " + graph.id() +
                    " already has subgraphs; only a flat local layer can be "
                    "partitioned");
  }
  std::map<std::string, size_t> block_of;
  for (size_t k = 0; k < partition.blocks.size(); ++k) {
    for (const auto& id : partition.blocks[k]) block_of[id] = k;
  }
  std::vector<Node> nodes = graph.release_local_nodes();
  std::vector<Edge> edges = graph.release_local_edges();
  std::vector<Graph> subs;
  for (size_t k = 0; k < partition.blocks.size(); ++k) {
    subs.emplace_back(block_name(graph.id(), partition, k));
  }
  for (Node& n : nodes) {
    const size_t k = block_of.at(n.id());
    subs[k].add_node(std::move(n));
  }
  std::vector<Edge> parent_edges;
  for (Edge& e : edges) {
    std::set<size_t> blocks;
    for (const auto& id : e.nodes) blocks.insert(block_of.at(id));
    if (blocks.size() == 1) {
      subs[*blocks.begin()].adopt_edge(std::move(e));
    } else {
      parent_edges.push_back(std::move(e));
    }
  }
  for (size_t k = 0; k < subs.size(); ++k) {
    if (!partition.sub_partitions.empty() &&
        !partition.sub_partitions[k].blocks.empty()) {
      partition_in_place(subs[k], partition.sub_partitions[k]);
    }
    graph.add_subgraph(std::move(subs[k]));
  }
  for (Edge& e : parent_edges) graph.adopt_edge(std::move(e));
}

LinearExpr map_expr(const LinearExpr& expr,
                    const std::map<VarRef, VarRef>& refs) {
  LinearExpr out;
  for (const auto& [var, coef] : expr.terms()) {
    auto it = refs.find(var);
    out.add(it == refs.end() ? var : it->second, coef);
  }
  out.add_constant(expr.constant());
  return out;
}

// Adds `expr sense rhs` where it belongs inside `graph`: a node constraint
// when one node is involved, a subgraph link when all nodes share one local
// subgraph, otherwise a link owned by `graph`.
void place_constraint(Graph& graph, LinearExpr expr, Sense sense, double rhs) {
  const std::set<std::string> nodes = expr.nodes();
  if (nodes.size() == 1) {
    Node* node = graph.find_node(*nodes.begin());
    if (node == nullptr) {
      throw Error(Errc::kNotOwned, "node " + *nodes.begin() +
                                       " is not in graph " + graph.id());
    }
    node->add_constraint(std::move(expr), sense, rhs);
    return;
  }
  for (Graph* sub : graph.mutable_local_subgraphs()) {
    const bool inside = std::all_of(nodes.begin(), nodes.end(), [&](const auto& id) {
      return sub->find_node(id) != nullptr;
    });
    if (inside) {
      place_constraint(*sub, std::move(expr), sense, rhs);
      return;
    }
  }
  graph.add_link_constraint(std::move(expr), sense, rhs);
}

// Single node holding the whole of `graph`, named `id`.
Node collapse(const Graph& graph, const std::string& id,
              std::map<VarRef, VarRef>& refs, bool use_effective_objective) {
  Node node(id);
  for (const Node* n : graph.all_nodes()) {
    for (const Variable& v : n->variables()) {
      const VarRef old{n->id(), v.name};
      refs[old] = node.add_variable(n->id() + "." + v.name, v.lower, v.upper,
                                    v.integrality);
    }
  }
  for (const Node* n : graph.all_nodes()) {
    for (const Constraint& c : n->constraints()) {
      node.add_constraint(map_expr(c.expr, refs), c.sense, c.rhs);
    }
  }
  for (const Edge* e : graph.all_edges()) {
    for (const Constraint& c : e->constraints) {
      node.add_constraint(map_expr(c.expr, refs), c.sense, c.rhs);
    }
  }
  LinearExpr objective;
  if (use_effective_objective) {
    objective = graph.effective_objective();
  } else {
    for (const Node* n : graph.all_nodes()) objective += n->objective();
  }
  node.set_objective(map_expr(objective, refs));
  return node;
}

Graph rebuild(const Graph& g, int level, std::map<VarRef, VarRef>& refs) {
  Graph out(g.id());
  out.set_allow_overlap(g.allow_overlap());
  for (const Node* n : g.local_nodes()) {
    out.add_node(*n);
    for (const Variable& v : n->variables()) {
      refs[{n->id(), v.name}] = VarRef{n->id(), v.name};
    }
  }
  for (const Graph* sub : g.local_subgraphs()) {
    if (level == 0) {
      out.add_node(collapse(*sub, sub->id(), refs, false));
    } else {
      out.add_subgraph(rebuild(*sub, level - 1, refs));
    }
  }
  for (const Edge* e : g.local_edges()) {
    for (const Constraint& c : e->constraints) {
      LinearExpr expr = map_expr(c.expr, refs);
      const std::set<std::string> nodes = expr.nodes();
      if (nodes.size() == 1) {
        out.find_node(*nodes.begin())->add_constraint(std::move(expr), c.sense,
                                                      c.rhs);
      } else {
        out.add_link_constraint(std::move(expr), c.sense, c.rhs);
      }
    }
  }
  if (g.objective_mode() == ObjectiveMode::kExplicit) {
    out.set_objective(map_expr(g.explicit_objective(), refs));
  }
  return out;
}

std::string unique_name(const Node& node, const std::string& base) {
  if (node.find_variable(base) == nullptr) return base;
  for (int k = 2;; ++k) {
    std::string name = base + "~" + std::to_string(k);
    if (node.find_variable(name) == nullptr) return name;
  }
}

}  // namespace

Partition validate_partition(const Graph& graph,
                             const std::map<std::string, int>& membership) {
  const auto ids = node_ids(graph);
  int count = 0;
  for (const auto& [id, block] : membership) {
    if (block < 1) {
      throw Error(Errc::kPartitionInvalid, "block index of node " + id +
                                               " must be >= 1");
    }
    count = std::max(count, block);
  }
  Partition p;
  p.blocks.resize(count);
  std::set<std::string> known(ids.begin(), ids.end());
  for (const auto& [id, block] : membership) {
    if (known.count(id) == 0) {
      throw Error(Errc::kNotCovering, "membership names unknown node " + id);
    }
  }
  for (const auto& id : ids) {
    auto it = membership.find(id);
    if (it == membership.end()) {
      throw Error(Errc::kNotCovering, "node " + id + " has no block");
    }
    p.blocks[it->second - 1].push_back(id);
  }
  check_blocks(ids, p, "graph " + graph.id());
  return p;
}

Partition validate_partition(const Graph& graph,
                             const std::vector<int>& membership) {
  const auto ids = node_ids(graph);
  if (membership.size() != ids.size()) {
    throw Error(Errc::kNotCovering,
                "membership vector has " + std::to_string(membership.size()) +
                    " entries for " + std::to_string(ids.size()) + " nodes");
  }
  std::map<std::string, int> by_id;
  for (size_t i = 0; i < ids.size(); ++i) by_id[ids[i]] = membership[i];
  return validate_partition(graph, by_id);
}

void check_partition(const Graph& graph, const Partition& partition) {
  check_blocks(node_ids(graph), partition, "graph " + graph.id());
}

Graph apply_partition(Graph& graph, const Partition& partition,
                      PartitionMode mode) {
  if (mode == PartitionMode::kAssembleNew) {
    return apply_partition(static_cast<const Graph&>(graph), partition);
  }
  check_partition(graph, partition);
  partition_in_place(graph, partition);
  return graph;
}

Graph apply_partition(const Graph& graph, const Partition& partition) {
  check_partition(graph, partition);
  Graph result = graph;
  partition_in_place(result, partition);
  return result;
}

AggregateResult aggregate(const Graph& graph) {
  if (graph.num_variables() == 0) {
    throw Error(Errc::kEmptyModel, "graph " + graph.id() + " has no variables");
  }
  AggregateResult result{Graph(graph.id()), {}};
  result.graph.add_node(
      collapse(graph, graph.id() + "_agg", result.reference_map, true));
  return result;
}

AggregateResult aggregate_to_depth(const Graph& graph, int level) {
  const int depth = graph.depth();
  if (level < 0 || level >= depth) {
    throw Error(Errc::kLevelOutOfRange,
                "level " + std::to_string(level) + " is outside [0, " +
                    std::to_string(depth) + ") for graph " + graph.id());
  }
  AggregateResult result{Graph(graph.id()), {}};
  result.graph = rebuild(graph, level, result.reference_map);
  return result;
}

RerouteResult reroute_link(Graph& graph, const std::string& edge_id,
                           const std::string& via,
                           const std::optional<std::string>& source) {
  const CondensedTopology topo = condensed_topology(graph);
  const Edge* edge = nullptr;
  for (const Edge* e : graph.local_edges()) {
    if (e->id == edge_id) edge = e;
  }
  if (edge == nullptr) {
    throw Error(Errc::kNotParentEdge,
                "edge " + edge_id + " is not a local edge of " + graph.id());
  }
  std::set<std::string> incident;
  for (const auto& nid : edge->nodes) {
    auto it = topo.owner.find(nid);
    if (it == topo.owner.end()) {
      throw Error(Errc::kNotParentEdge, "edge " + edge_id +
                                            " touches parent-level node " + nid);
    }
    incident.insert(it->second);
  }
  if (incident.size() < 2) {
    throw Error(Errc::kNotParentEdge,
                "edge " + edge_id + " lies inside a single subgraph");
  }
  Graph* via_graph = nullptr;
  for (Graph* sub : graph.mutable_local_subgraphs()) {
    if (sub->id() == via) via_graph = sub;
  }
  if (via_graph == nullptr || via_graph->all_nodes().empty()) {
    throw Error(Errc::kSubgraphNotAdjacent,
                via + " is not a nonempty subgraph of " + graph.id());
  }
  // Adjacency through the other parent-level edges.
  auto adjacent = [&](const std::string& a, const std::string& b) {
    for (const Edge* e : graph.local_edges()) {
      if (e->id == edge_id) continue;
      bool has_a = false;
      bool has_b = false;
      for (const auto& nid : e->nodes) {
        auto it = topo.owner.find(nid);
        if (it == topo.owner.end()) continue;
        has_a = has_a || it->second == a;
        has_b = has_b || it->second == b;
      }
      if (has_a && has_b) return true;
    }
    return false;
  };

  const std::vector<Constraint> rows = edge->constraints;
  const std::string host_id = via_graph->all_nodes().front()->id();
  Node& host = *graph.find_node(host_id);
  RerouteResult result;

  if (incident.size() == 2) {
    std::string a;
    if (source) {
      if (incident.count(*source) == 0 || *source == via) {
        throw Error(Errc::kNotParentEdge,
                    *source + " is not a valid source side of " + edge_id);
      }
      a = *source;
    } else {
      for (const auto& sid : topo.vertices) {
        if (incident.count(sid) != 0 && sid != via) {
          a = sid;
          break;
        }
      }
    }
    if (a == via) {
      throw Error(Errc::kSubgraphNotAdjacent, "cannot reroute through A itself");
    }
    const bool via_is_b = incident.count(via) != 0;
    if (!via_is_b && !adjacent(a, via)) {
      throw Error(Errc::kSubgraphNotAdjacent,
                  via + " is not adjacent to " + a);
    }
    std::set<VarRef> a_side;
    for (const Constraint& c : rows) {
      for (const auto& [var, coef] : c.expr.terms()) {
        if (topo.owner.at(var.node) == a) a_side.insert(var);
      }
    }
    std::map<VarRef, VarRef> copies;
    for (const VarRef& x : a_side) {
      const Variable& v = graph.variable(x);
      const VarRef z = host.add_variable(unique_name(host, x.qualified()),
                                         v.lower, v.upper, v.integrality);
      copies[x] = z;
      result.new_variables.push_back(z);
    }
    graph.remove_local_edge(edge_id);
    for (const auto& [x, z] : copies) {
      graph.add_link_constraint(LinearExpr{{z, 1.0}, {x, -1.0}}, Sense::kEqual,
                                0.0);
      ++result.new_rows;
    }
    for (const Constraint& c : rows) {
      place_constraint(graph, map_expr(c.expr, copies), c.sense, c.rhs);
    }
    return result;
  }

  for (const auto& w : incident) {
    if (w != via && !adjacent(w, via)) {
      throw Error(Errc::kSubgraphNotAdjacent,
                  via + " is not adjacent to " + w);
    }
  }
  graph.remove_local_edge(edge_id);
  for (const Constraint& c : rows) {
    const double sign = c.sense == Sense::kGreaterEqual ? -1.0 : 1.0;
    const Sense sense = c.sense == Sense::kEqual ? Sense::kEqual
                                                 : Sense::kLessEqual;
    std::map<std::string, LinearExpr> parts;
    LinearExpr budget_row;
    for (const auto& [var, coef] : c.expr.terms()) {
      const std::string& w = topo.owner.at(var.node);
      if (w == via) {
        budget_row.add(var, sign * coef);
      } else {
        parts[w].add(var, sign * coef);
      }
    }
    for (const auto& [w, expr] : parts) {
      double lo = 0.0;
      double hi = 0.0;
      for (const auto& [var, coef] : expr.terms()) {
        const Variable& v = graph.variable(var);
        const double a = coef * v.lower;
        const double b = coef * v.upper;
        lo += coef > 0 ? a : b;
        hi += coef > 0 ? b : a;
      }
      if (std::isnan(lo)) lo = -kInf;
      if (std::isnan(hi)) hi = kInf;
      const VarRef q = host.add_variable(
          unique_name(host, "q[" + c.id + "," + w + "]"), lo, hi);
      result.new_variables.push_back(q);
      LinearExpr link = expr;
      link.add(q, -1.0);
      graph.add_link_constraint(std::move(link), sense, 0.0);
      ++result.new_rows;
      budget_row.add(q, 1.0);
    }
    place_constraint(graph, std::move(budget_row), sense, sign * c.rhs);
    ++result.new_rows;
  }
  return result;
}

CondensedTopology condensed_topology(const Graph& graph) {
  const auto subs = graph.local_subgraphs();
  if (subs.empty()) {
    throw Error(Errc::kNoSubgraphs, "graph " + graph.id() + " has no subgraphs");
  }
  CondensedTopology topo;
  for (const Graph* s : subs) {
    topo.vertices.push_back(s->id());
    for (const Node* n : s->all_nodes()) topo.owner.emplace(n->id(), s->id());
  }
  for (const Edge* e : graph.local_edges()) {
    std::set<std::string> touched;
    bool orphan = false;
    for (const auto& nid : e->nodes) {
      auto it = topo.owner.find(nid);
      if (it == topo.owner.end()) {
        orphan = true;
      } else {
        touched.insert(it->second);
      }
    }
    if (orphan || touched.size() > 2) {
      topo.orphan_edges.push_back(e->id);
    } else if (touched.size() == 2) {
      ++topo.adjacency[{*touched.begin(), *touched.rbegin()}];
    } else {
      topo.internal_edges.push_back(e->id);
    }
  }
  return topo;
}

std::vector<std::string> CondensedTopology::neighbors(
    const std::string& vertex) const {
  std::vector<std::string> out;
  for (const auto& [pair, count] : adjacency) {
    if (pair.first == vertex) out.push_back(pair.second);
    if (pair.second == vertex) out.push_back(pair.first);
  }
  return out;
}

bool CondensedTopology::connected() const {
  if (vertices.empty()) return true;
  std::set<std::string> seen{vertices.front()};
  std::vector<std::string> stack{vertices.front()};
  while (!stack.empty()) {
    const std::string v = stack.back();
    stack.pop_back();
    for (const auto& w : neighbors(v)) {
      if (seen.insert(w).second) stack.push_back(w);
    }
  }
  return seen.size() == vertices.size();
}

bool CondensedTopology::acyclic() const {
  std::map<std::string, std::string> parent;
  for (const auto& v : vertices) parent[v] = v;
  std::function<std::string(const std::string&)> find =
      [&](const std::string& v) -> std::string {
    std::string root = v;
    while (parent[root] != root) root = parent[root];
    return root;
  };
  for (const auto& [pair, count] : adjacency) {
    const std::string a = find(pair.first);
    const std::string b = find(pair.second);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

std::string CondensedTopology::to_dot() const {
  std::ostringstream out;
  out << "graph condensed {\n";
  for (const auto& v : vertices) out << "  \"" << v << "\";\n";
  for (const auto& [pair, count] : adjacency) {
    out << "  \"" << pair.first << "\" -- \"" << pair.second
        << "\" [label=" << count << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace optigraph
