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

#include "optigraph/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>

namespace optigraph {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::kDuplicateName: return "DuplicateName";
    case Errc::kInvalidBounds: return "InvalidBounds";
    case Errc::kForeignVariable: return "ForeignVariable";
    case Errc::kNotOwned: return "NotOwned";
    case Errc::kSingleNode: return "SingleNode";
    case Errc::kCycleInNesting: return "CycleInNesting";
    case Errc::kIdCollision: return "IdCollision";
    case Errc::kEmptyModel: return "EmptyModel";
    case Errc::kUnknownNode: return "UnknownNode";
    case Errc::kUnknownVariable: return "UnknownVariable";
    case Errc::kInvalidName: return "InvalidName";
    case Errc::kNonFiniteValue: return "NonFiniteValue";
    case Errc::kEmptyExpression: return "EmptyExpression";
    case Errc::kNotCovering: return "NotCovering";
    case Errc::kNotDisjoint: return "NotDisjoint";
    case Errc::kEmptyBlock: return "EmptyBlock";
    case Errc::kPartitionInvalid: return "PartitionInvalid";
    case Errc::kLevelOutOfRange: return "LevelOutOfRange";
    case Errc::kNotParentEdge: return "NotParentEdge";
    case Errc::kSubgraphNotAdjacent: return "SubgraphNotAdjacent";
    case Errc::kNoSubgraphs: return "NoSubgraphs";
    case Errc::kNumericalBreakdown: return "NumericalBreakdown";
    case Errc::kNodeLimit: return "NodeLimit";
    case Errc::kHyperedgeSpan: return "HyperedgeSpan";
    case Errc::kDisconnected: return "Disconnected";
    case Errc::kCyclicStructure: return "CyclicStructure";
    case Errc::kLocalNodesAtRoot: return "LocalNodesAtRoot";
    case Errc::kOverlapUnsupported: return "OverlapUnsupported";
    case Errc::kRootNotFound: return "RootNotFound";
    case Errc::kSubproblemInfeasible: return "SubproblemInfeasible";
    case Errc::kUnboundedSubproblem: return "UnboundedSubproblem";
    case Errc::kDualsUnavailable: return "DualsUnavailable";
    case Errc::kLevelSetInfeasible: return "LevelSetInfeasible";
    case Errc::kRelaxationInfeasible: return "RelaxationInfeasible";
    case Errc::kInvalidConfig: return "InvalidConfig";
    case Errc::kInvalidOrder: return "InvalidOrder";
    case Errc::kParseError: return "ParseError";
    case Errc::kSchemaVersionMismatch: return "SchemaVersionMismatch";
    case Errc::kIoError: return "IoError";
  }
  return "Unknown";
}

std::string_view to_string(Integrality kind) {
  switch (kind) {
    case Integrality::kContinuous: return "continuous";
    case Integrality::kBinary: return "binary";
    case Integrality::kInteger: return "integer";
  }
  return "continuous";
}

std::string_view to_string(Sense sense) {
  switch (sense) {
    case Sense::kLessEqual: return "le";
    case Sense::kEqual: return "eq";
    case Sense::kGreaterEqual: return "ge";
  }
  return "le";
}

void check_identifier(std::string_view id, std::string_view what) {
  const bool bad =
      id.empty() || std::any_of(id.begin(), id.end(), [](char c) {
        return c == '.' || std::isspace(static_cast<unsigned char>(c));
      });
  if (bad) {
    throw Error(Errc::kInvalidName,
                std::string(what) + " id '" + std::string(id) +
                    "' must be non-empty without '.' or whitespace");
  }
}

VarRef VarRef::parse(std::string_view qualified) {
  const auto dot = qualified.find('.');
  if (dot == std::string_view::npos || dot == 0 ||
      dot + 1 == qualified.size()) {
    throw Error(Errc::kParseError, "expected 'node.var', got '" +
                                       std::string(qualified) + "'");
  }
  return VarRef{std::string(qualified.substr(0, dot)),
                std::string(qualified.substr(dot + 1))};
}

// ---------------------------------------------------------------------------
// LinearExpr

LinearExpr::LinearExpr(std::initializer_list<std::pair<VarRef, double>> terms,
                       double constant)
    : constant_(constant) {
  for (const auto& [var, coef] : terms) add(var, coef);
}

LinearExpr& LinearExpr::add(const VarRef& var, double coefficient) {
  if (!std::isfinite(coefficient)) {
    throw Error(Errc::kNonFiniteValue,
                "coefficient of " + var.qualified() + " is not finite");
  }
  if (coefficient == 0.0) return *this;
  auto [it, inserted] = terms_.try_emplace(var, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0.0) terms_.erase(it);
  }
  return *this;
}

LinearExpr& LinearExpr::add_constant(double value) {
  constant_ += value;
  return *this;
}

LinearExpr& LinearExpr::operator+=(const LinearExpr& other) {
  for (const auto& [var, coef] : other.terms_) add(var, coef);
  constant_ += other.constant_;
  return *this;
}

LinearExpr& LinearExpr::operator*=(double factor) {
  if (factor == 0.0) {
    terms_.clear();
    constant_ = 0.0;
    return *this;
  }
  for (auto& [var, coef] : terms_) coef *= factor;
  constant_ *= factor;
  return *this;
}

double LinearExpr::coefficient(const VarRef& var) const {
  auto it = terms_.find(var);
  return it == terms_.end() ? 0.0 : it->second;
}

std::set<std::string> LinearExpr::nodes() const {
  std::set<std::string> out;
  for (const auto& [var, coef] : terms_) out.insert(var.node);
  return out;
}

double LinearExpr::evaluate(const std::map<VarRef, double>& values) const {
  double total = constant_;
  for (const auto& [var, coef] : terms_) {
    auto it = values.find(var);
    if (it == values.end()) {
      throw Error(Errc::kUnknownVariable, "no value for " + var.qualified());
    }
    total += coef * it->second;
  }
  return total;
}

LinearExpr operator+(LinearExpr lhs, const LinearExpr& rhs) {
  lhs += rhs;
  return lhs;
}

LinearExpr operator*(double factor, LinearExpr expr) {
  expr *= factor;
  return expr;
}

// ---------------------------------------------------------------------------
// Node

Node::Node(std::string id) : id_(std::move(id)) {
  check_identifier(id_, "node");
}

VarRef Node::add_variable(std::string name, double lower, double upper,
                          Integrality integrality) {
  if (name.empty() || std::any_of(name.begin(), name.end(), [](char c) {
        return std::isspace(static_cast<unsigned char>(c));
      })) {
    throw Error(Errc::kInvalidName, "variable name '" + name + "' on node " +
                                        id_ + " is empty or has whitespace");
  }
  if (index_.count(name) != 0) {
    throw Error(Errc::kDuplicateName,
                "variable '" + name + "' already exists on node " + id_);
  }
  if (std::isnan(lower) || std::isnan(upper)) {
    throw Error(Errc::kInvalidBounds, "NaN bound on " + id_ + "." + name);
  }
  if (integrality == Integrality::kBinary) {
    lower = std::max(lower, 0.0);
    upper = std::min(upper, 1.0);
  }
  if (lower > upper || lower == kInf || upper == -kInf) {
    throw Error(Errc::kInvalidBounds, "bounds of " + id_ + "." + name +
                                          " are empty: [" +
                                          std::to_string(lower) + ", " +
                                          std::to_string(upper) + "]");
  }
  index_.emplace(name, variables_.size());
  variables_.push_back(Variable{name, lower, upper, integrality});
  return VarRef{id_, std::move(name)};
}

const Variable* Node::find_variable(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &variables_[it->second];
}

VarRef Node::operator[](std::string_view name) const {
  if (find_variable(name) == nullptr) {
    throw Error(Errc::kUnknownVariable,
                "node " + id_ + " has no variable '" + std::string(name) + "'");
  }
  return VarRef{id_, std::string(name)};
}

void Node::check_local(const LinearExpr& expr) const {
  for (const auto& [var, coef] : expr.terms()) {
    if (var.node != id_) {
      throw Error(Errc::kForeignVariable,
                  var.qualified() + " does not belong to node " + id_ +
                      "; use a link constraint");
    }
    if (find_variable(var.name) == nullptr) {
      throw Error(Errc::kUnknownVariable, "unknown variable " + var.qualified());
    }
  }
}

const Constraint& Node::add_constraint(LinearExpr expr, Sense sense,
                                       double rhs) {
  check_local(expr);
  if (expr.empty()) {
    throw Error(Errc::kEmptyExpression, "constraint on node " + id_ +
                                            " has no variables");
  }
  if (!std::isfinite(rhs)) {
    throw Error(Errc::kNonFiniteValue, "constraint rhs on node " + id_);
  }
  Constraint c;
  c.id = id_ + "#" + std::to_string(constraints_.size() + 1);
  c.rhs = rhs - expr.constant();
  expr.add_constant(-expr.constant());
  c.expr = std::move(expr);
  c.sense = sense;
  c.owner = id_;
  constraints_.push_back(std::move(c));
  return constraints_.back();
}

void Node::set_objective(LinearExpr objective, ObjectiveSense sense) {
  check_local(objective);
  if (sense == ObjectiveSense::kMaximize) objective *= -1.0;
  objective_ = std::move(objective);
}

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(std::string id) : id_(std::move(id)) {
  check_identifier(id_, "graph");
}

Graph::Graph(const Graph& other)
    : id_(other.id_),
      objective_mode_(other.objective_mode_),
      explicit_objective_(other.explicit_objective_),
      allow_overlap_(other.allow_overlap_),
      next_node_(other.next_node_),
      next_edge_(other.next_edge_) {
  nodes_.reserve(other.nodes_.size());
  for (const auto& n : other.nodes_) nodes_.push_back(std::make_unique<Node>(*n));
  edges_.reserve(other.edges_.size());
  for (const auto& e : other.edges_) edges_.push_back(std::make_unique<Edge>(*e));
  subgraphs_.reserve(other.subgraphs_.size());
  for (const auto& g : other.subgraphs_) {
    subgraphs_.push_back(std::make_unique<Graph>(*g));
  }
}

Graph& Graph::operator=(const Graph& other) {
  if (this != &other) {
    Graph copy(other);
    *this = std::move(copy);
  }
  return *this;
}

Node& Graph::add_node(std::string id) {
  if (id.empty()) {
    do {
      id = id_ + "_n" + std::to_string(next_node_++);
    } while (find_node(id) != nullptr);
  }
  return add_node(Node(std::move(id)));
}

Node& Graph::add_node(Node node) {
  if (find_node(node.id()) != nullptr) {
    throw Error(Errc::kIdCollision,
                "node id '" + node.id() + "' already used in graph " + id_);
  }
  nodes_.push_back(std::make_unique<Node>(std::move(node)));
  return *nodes_.back();
}

Edge& Graph::edge_for(const std::vector<std::string>& nodes) {
  for (auto& e : edges_) {
    if (e->nodes == nodes) return *e;
  }
  auto edge = std::make_unique<Edge>();
  do {
    edge->id = id_ + ":e" + std::to_string(next_edge_++);
  } while (find_edge(edge->id) != nullptr);
  edge->nodes = nodes;
  edges_.push_back(std::move(edge));
  return *edges_.back();
}

const Edge& Graph::add_link_constraint(LinearExpr expr, Sense sense,
                                       double rhs) {
  if (!std::isfinite(rhs)) {
    throw Error(Errc::kNonFiniteValue, "link constraint rhs in graph " + id_);
  }
  const std::set<std::string> node_set = expr.nodes();
  for (const auto& [var, coef] : expr.terms()) {
    const Node* node = find_node(var.node);
    if (node == nullptr) {
      throw Error(Errc::kNotOwned, "node " + var.node +
                                       " is not contained in graph " + id_);
    }
    if (node->find_variable(var.name) == nullptr) {
      throw Error(Errc::kUnknownVariable, "unknown variable " + var.qualified());
    }
  }
  if (node_set.size() < 2) {
    throw Error(Errc::kSingleNode,
                "link constraint in graph " + id_ +
                    " must reference at least two nodes; use a node constraint");
  }
  Edge& edge = edge_for(std::vector<std::string>(node_set.begin(), node_set.end()));
  Constraint c;
  c.id = edge.id + "#" + std::to_string(edge.constraints.size() + 1);
  c.rhs = rhs - expr.constant();
  expr.add_constant(-expr.constant());
  c.expr = std::move(expr);
  c.sense = sense;
  c.owner = edge.id;
  edge.constraints.push_back(std::move(c));
  return edge;
}

bool Graph::contains_graph(const Graph* target) const {
  if (this == target) return true;
  return std::any_of(subgraphs_.begin(), subgraphs_.end(),
                     [&](const auto& g) { return g->contains_graph(target); });
}

void Graph::collect_node_ids(std::multiset<std::string>& out) const {
  for (const auto& n : nodes_) out.insert(n->id());
  for (const auto& g : subgraphs_) g->collect_node_ids(out);
}

void Graph::collect_graph_ids(std::multiset<std::string>& out) const {
  out.insert(id_);
  for (const auto& g : subgraphs_) g->collect_graph_ids(out);
}

void Graph::add_subgraph(Graph&& child) {
  if (child.contains_graph(this)) {
    throw Error(Errc::kCycleInNesting, "graph " + child.id_ +
                                           " cannot be nested inside itself");
  }
  std::multiset<std::string> graph_ids;
  collect_graph_ids(graph_ids);
  std::multiset<std::string> child_graph_ids;
  child.collect_graph_ids(child_graph_ids);
  for (const auto& gid : child_graph_ids) {
    if (graph_ids.count(gid) != 0) {
      throw Error(Errc::kIdCollision, "graph id '" + gid + "' already used");
    }
  }
  if (!allow_overlap_) {
    std::multiset<std::string> node_ids;
    collect_node_ids(node_ids);
    std::multiset<std::string> child_node_ids;
    child.collect_node_ids(child_node_ids);
    for (const auto& nid : child_node_ids) {
      if (node_ids.count(nid) != 0) {
        throw Error(Errc::kIdCollision,
                    "node id '" + nid + "' already used under graph " + id_ +
                        " (enable overlap to share nodes)");
      }
    }
  }
  subgraphs_.push_back(std::make_unique<Graph>(std::move(child)));
}

void Graph::set_to_node_objectives() {
  objective_mode_ = ObjectiveMode::kSumOfNodeObjectives;
  explicit_objective_ = LinearExpr();
}

void Graph::set_objective(LinearExpr objective, ObjectiveSense sense) {
  for (const auto& [var, coef] : objective.terms()) variable(var);
  if (sense == ObjectiveSense::kMaximize) objective *= -1.0;
  explicit_objective_ = std::move(objective);
  objective_mode_ = ObjectiveMode::kExplicit;
}

LinearExpr Graph::effective_objective() const {
  if (objective_mode_ == ObjectiveMode::kExplicit) return explicit_objective_;
  LinearExpr total;
  for (const Node* n : all_nodes()) total += n->objective();
  return total;
}

bool Graph::has_overlap() const {
  std::multiset<std::string> ids;
  collect_node_ids(ids);
  for (auto it = ids.begin(); it != ids.end(); it = ids.upper_bound(*it)) {
    if (ids.count(*it) > 1) return true;
  }
  return false;
}

std::vector<const Node*> Graph::local_nodes() const {
  std::vector<const Node*> out;
  out.reserve(nodes_.size());
  for (const auto& n : nodes_) out.push_back(n.get());
  return out;
}

std::vector<const Node*> Graph::all_nodes() const {
  std::vector<const Node*> out;
  std::set<std::string_view> seen;
  std::function<void(const Graph&)> visit = [&](const Graph& g) {
    for (const auto& n : g.nodes_) {
      if (seen.insert(n->id()).second) out.push_back(n.get());
    }
    for (const auto& sub : g.subgraphs_) visit(*sub);
  };
  visit(*this);
  return out;
}

std::vector<const Edge*> Graph::local_edges() const {
  std::vector<const Edge*> out;
  for (const auto& e : edges_) out.push_back(e.get());
  return out;
}

std::vector<const Edge*> Graph::all_edges() const {
  std::vector<const Edge*> out;
  std::function<void(const Graph&)> visit = [&](const Graph& g) {
    for (const auto& e : g.edges_) out.push_back(e.get());
    for (const auto& sub : g.subgraphs_) visit(*sub);
  };
  visit(*this);
  return out;
}

std::vector<const Graph*> Graph::local_subgraphs() const {
  std::vector<const Graph*> out;
  for (const auto& g : subgraphs_) out.push_back(g.get());
  return out;
}

std::vector<Graph*> Graph::mutable_local_subgraphs() {
  std::vector<Graph*> out;
  for (auto& g : subgraphs_) out.push_back(g.get());
  return out;
}

std::vector<const Graph*> Graph::all_subgraphs() const {
  std::vector<const Graph*> out;
  std::function<void(const Graph&)> visit = [&](const Graph& g) {
    for (const auto& sub : g.subgraphs_) {
      out.push_back(sub.get());
      visit(*sub);
    }
  };
  visit(*this);
  return out;
}

std::vector<std::string> Graph::enumerate(EnumerateKind kind) const {
  std::vector<std::string> ids;
  switch (kind) {
    case EnumerateKind::kLocalNodes:
      for (const Node* n : local_nodes()) ids.push_back(n->id());
      break;
    case EnumerateKind::kAllNodes:
      for (const Node* n : all_nodes()) ids.push_back(n->id());
      break;
    case EnumerateKind::kLocalEdges:
      for (const Edge* e : local_edges()) ids.push_back(e->id);
      break;
    case EnumerateKind::kAllEdges:
      for (const Edge* e : all_edges()) ids.push_back(e->id);
      break;
    case EnumerateKind::kLocalSubgraphs:
      for (const Graph* g : local_subgraphs()) ids.push_back(g->id());
      break;
    case EnumerateKind::kAllSubgraphs:
      for (const Graph* g : all_subgraphs()) ids.push_back(g->id());
      break;
  }
  return ids;
}

Node* Graph::find_node(std::string_view node_id) {
  return const_cast<Node*>(std::as_const(*this).find_node(node_id));
}

const Node* Graph::find_node(std::string_view node_id) const {
  for (const auto& n : nodes_) {
    if (n->id() == node_id) return n.get();
  }
  for (const auto& g : subgraphs_) {
    if (const Node* n = g->find_node(node_id)) return n;
  }
  return nullptr;
}

const Graph* Graph::find_subgraph(std::string_view graph_id) const {
  for (const auto& g : subgraphs_) {
    if (g->id() == graph_id) return g.get();
    if (const Graph* found = g->find_subgraph(graph_id)) return found;
  }
  return nullptr;
}

Graph* Graph::find_subgraph(std::string_view graph_id) {
  return const_cast<Graph*>(std::as_const(*this).find_subgraph(graph_id));
}

const Edge* Graph::find_edge(std::string_view edge_id) const {
  for (const Edge* e : all_edges()) {
    if (e->id == edge_id) return e;
  }
  return nullptr;
}

const Variable& Graph::variable(const VarRef& ref) const {
  const Node* node = find_node(ref.node);
  if (node == nullptr) {
    throw Error(Errc::kUnknownNode, "unknown node '" + ref.node + "'");
  }
  const Variable* var = node->find_variable(ref.name);
  if (var == nullptr) {
    throw Error(Errc::kUnknownVariable, "unknown variable " + ref.qualified());
  }
  return *var;
}

int Graph::depth() const {
  int deepest = -1;
  for (const auto& g : subgraphs_) deepest = std::max(deepest, g->depth());
  return deepest + 1;
}

std::size_t Graph::num_variables() const {
  std::size_t count = 0;
  for (const Node* n : all_nodes()) count += n->variables().size();
  return count;
}

std::vector<Node> Graph::release_local_nodes() {
  std::vector<Node> out;
  out.reserve(nodes_.size());
  for (auto& n : nodes_) out.push_back(std::move(*n));
  nodes_.clear();
  return out;
}

std::vector<Edge> Graph::release_local_edges() {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (auto& e : edges_) out.push_back(std::move(*e));
  edges_.clear();
  return out;
}

std::vector<Graph> Graph::release_subgraphs() {
  std::vector<Graph> out;
  out.reserve(subgraphs_.size());
  for (auto& g : subgraphs_) out.push_back(std::move(*g));
  subgraphs_.clear();
  return out;
}

void Graph::adopt_edge(Edge edge) {
  for (const auto& nid : edge.nodes) {
    if (find_node(nid) == nullptr) {
      throw Error(Errc::kNotOwned,
                  "edge " + edge.id + " touches node " + nid +
                      " outside graph " + id_);
    }
  }
  for (auto& e : edges_) {
    if (e->nodes == edge.nodes) {
      for (auto& c : edge.constraints) {
        c.id = e->id + "#" + std::to_string(e->constraints.size() + 1);
        c.owner = e->id;
        e->constraints.push_back(std::move(c));
      }
      return;
    }
  }
  edges_.push_back(std::make_unique<Edge>(std::move(edge)));
}

bool Graph::remove_local_edge(std::string_view edge_id) {
  auto it = std::find_if(edges_.begin(), edges_.end(),
                         [&](const auto& e) { return e->id == edge_id; });
  if (it == edges_.end()) return false;
  edges_.erase(it);
  return true;
}

}  // namespace optigraph
