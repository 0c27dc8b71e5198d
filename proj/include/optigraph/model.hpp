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

// Hierarchical hypergraph model of an optimization problem.
//
// A Graph owns nodes (each carrying variables, local constraints and a local
// objective), hyperedges (each carrying linking constraints over two or more
// nodes) and nested subgraphs. Edges are owned by the graph they were added
// to, and every node an edge touches must be reachable from that graph.
//
// All objectives are stored in minimization form; maximization objectives are
// negated when they are set.

#ifndef OPTIGRAPH_MODEL_HPP_
#define OPTIGRAPH_MODEL_HPP_

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "optigraph/error.hpp"

namespace optigraph {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Integrality { kContinuous, kBinary, kInteger };
enum class Sense { kLessEqual, kEqual, kGreaterEqual };
enum class ObjectiveSense { kMinimize, kMaximize };

std::string_view to_string(Integrality kind);
std::string_view to_string(Sense sense);

// Identifies a variable by its owning node and its name on that node. The
// qualified form is "node.name"; node ids never contain '.', so the first dot
// separates the two parts.
struct VarRef {
  std::string node;
  std::string name;

  auto operator<=>(const VarRef&) const = default;
  bool operator==(const VarRef&) const = default;

  std::string qualified() const { return node + "." + name; }
  static VarRef parse(std::string_view qualified);
};

struct Variable {
  std::string name;
  double lower = -kInf;
  double upper = kInf;
  Integrality integrality = Integrality::kContinuous;
};

// Sparse affine expression with terms kept in (node, name) order. Terms whose
// coefficient cancels to zero are dropped.
class LinearExpr {
 public:
  LinearExpr() = default;
  LinearExpr(std::initializer_list<std::pair<VarRef, double>> terms,
             double constant = 0.0);

  LinearExpr& add(const VarRef& var, double coefficient);
  LinearExpr& add_constant(double value);
  LinearExpr& operator+=(const LinearExpr& other);
  LinearExpr& operator*=(double factor);

  const std::map<VarRef, double>& terms() const { return terms_; }
  double constant() const { return constant_; }
  double coefficient(const VarRef& var) const;
  bool empty() const { return terms_.empty(); }

  // Distinct node ids referenced by the terms, sorted.
  std::set<std::string> nodes() const;

  double evaluate(const std::map<VarRef, double>& values) const;

 private:
  std::map<VarRef, double> terms_;
  double constant_ = 0.0;
};

LinearExpr operator+(LinearExpr lhs, const LinearExpr& rhs);
LinearExpr operator*(double factor, LinearExpr expr);

// A row `expr sense rhs`. The expression constant is folded into rhs when the
// constraint is created, so expr.constant() is always zero.
struct Constraint {
  std::string id;
  LinearExpr expr;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
  std::string owner;
};

class Node {
 public:
  explicit Node(std::string id);

  const std::string& id() const { return id_; }

  VarRef add_variable(std::string name, double lower = -kInf,
                      double upper = kInf,
                      Integrality integrality = Integrality::kContinuous);
  const Constraint& add_constraint(LinearExpr expr, Sense sense, double rhs);
  void set_objective(LinearExpr objective,
                     ObjectiveSense sense = ObjectiveSense::kMinimize);

  const std::vector<Variable>& variables() const { return variables_; }
  const Variable* find_variable(std::string_view name) const;
  // Reference to a variable of this node; throws kUnknownVariable.
  VarRef operator[](std::string_view name) const;

  const std::vector<Constraint>& constraints() const { return constraints_; }
  const LinearExpr& objective() const { return objective_; }

 private:
  void check_local(const LinearExpr& expr) const;

  std::string id_;
  std::vector<Variable> variables_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<Constraint> constraints_;
  LinearExpr objective_;
};

struct Edge {
  std::string id;
  std::vector<std::string> nodes;  // sorted, at least two
  std::vector<Constraint> constraints;
};

enum class ObjectiveMode { kSumOfNodeObjectives, kExplicit };

enum class EnumerateKind {
  kLocalNodes,
  kAllNodes,
  kLocalEdges,
  kAllEdges,
  kLocalSubgraphs,
  kAllSubgraphs,
};

class Graph {
 public:
  explicit Graph(std::string id = "graph");
  Graph(const Graph& other);
  Graph& operator=(const Graph& other);
  Graph(Graph&&) noexcept = default;
  Graph& operator=(Graph&&) noexcept = default;
  ~Graph() = default;

  const std::string& id() const { return id_; }

  // Adds an empty node. An empty id is replaced by "<graph>_n<k>".
  Node& add_node(std::string id = {});
  // Adds a fully built node (used by the structural transforms and loaders).
  Node& add_node(Node node);

  // Adds a linking constraint over variables of at least two nodes reachable
  // from this graph. Constraints over the same node set share one edge.
  const Edge& add_link_constraint(LinearExpr expr, Sense sense, double rhs);

  // Nests `child` under this graph. Throws kCycleInNesting when `child` is
  // this graph or one of its ancestors and kIdCollision on node or graph id
  // clashes (shared node ids are legal only when overlap is allowed).
  void add_subgraph(Graph&& child);

  void set_to_node_objectives();
  void set_objective(LinearExpr objective,
                     ObjectiveSense sense = ObjectiveSense::kMinimize);
  ObjectiveMode objective_mode() const { return objective_mode_; }
  const LinearExpr& explicit_objective() const { return explicit_objective_; }
  // Objective as a single expression over all_nodes().
  LinearExpr effective_objective() const;

  void set_allow_overlap(bool allow) { allow_overlap_ = allow; }
  bool allow_overlap() const { return allow_overlap_; }
  // True when some node id appears in more than one place in the tree.
  bool has_overlap() const;

  std::vector<const Node*> local_nodes() const;
  std::vector<const Node*> all_nodes() const;
  std::vector<const Edge*> local_edges() const;
  std::vector<const Edge*> all_edges() const;
  std::vector<const Graph*> local_subgraphs() const;
  std::vector<const Graph*> all_subgraphs() const;
  std::vector<Graph*> mutable_local_subgraphs();

  // Ids in deterministic insertion order; all_* recurses depth first.
  std::vector<std::string> enumerate(EnumerateKind kind) const;

  Node* find_node(std::string_view node_id);
  const Node* find_node(std::string_view node_id) const;
  const Graph* find_subgraph(std::string_view graph_id) const;
  Graph* find_subgraph(std::string_view graph_id);
  const Edge* find_edge(std::string_view edge_id) const;
  // Throws kUnknownNode / kUnknownVariable.
  const Variable& variable(const VarRef& ref) const;

  // 0 for a graph without subgraphs, otherwise 1 + deepest subgraph depth.
  int depth() const;
  std::size_t num_variables() const;

  // Low-level structural access for transforms. Moved-out nodes, edges and
  // subgraphs keep their ids.
  std::vector<Node> release_local_nodes();
  std::vector<Edge> release_local_edges();
  std::vector<Graph> release_subgraphs();
  void adopt_edge(Edge edge);
  bool remove_local_edge(std::string_view edge_id);

 private:
  bool contains_graph(const Graph* target) const;
  void collect_node_ids(std::multiset<std::string>& out) const;
  void collect_graph_ids(std::multiset<std::string>& out) const;
  Edge& edge_for(const std::vector<std::string>& nodes);

  std::string id_;
  std::vector<std::unique_ptr<Node>> nodes_;
  std::vector<std::unique_ptr<Edge>> edges_;
  std::vector<std::unique_ptr<Graph>> subgraphs_;
  ObjectiveMode objective_mode_ = ObjectiveMode::kSumOfNodeObjectives;
  LinearExpr explicit_objective_;
  bool allow_overlap_ = false;
  int next_node_ = 1;
  int next_edge_ = 1;
};

// Rejects ids that are empty or contain '.' or whitespace.
void check_identifier(std::string_view id, std::string_view what);

}  // namespace optigraph

#endif  // OPTIGRAPH_MODEL_HPP_
