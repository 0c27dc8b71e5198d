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

// Structural transforms: partitioning into subgraphs, aggregation of
// subgraphs into nodes, rerouting of parent-level links and the condensed
// subgraph topology.

#ifndef OPTIGRAPH_TRANSFORM_HPP_
#define OPTIGRAPH_TRANSFORM_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "optigraph/model.hpp"

namespace optigraph {

// Disjoint blocks of node ids covering a graph. names[k] (optional) is the id
// of the subgraph induced by block k; the default is "<graph>_b<k+1>".
// sub_partitions is empty or has one entry per block; an entry with no blocks
// leaves that block flat.
struct Partition {
  std::vector<std::vector<std::string>> blocks;
  std::vector<std::string> names;
  std::vector<Partition> sub_partitions;
};

// membership maps node id -> 1-based block index.
Partition validate_partition(const Graph& graph,
                             const std::map<std::string, int>& membership);
// membership[i] is the block of all_nodes(graph)[i].
Partition validate_partition(const Graph& graph,
                             const std::vector<int>& membership);
// Checks coverage, disjointness and nonempty blocks of an explicit partition
// (recursively for sub-partitions).
void check_partition(const Graph& graph, const Partition& partition);

enum class PartitionMode { kInPlace, kAssembleNew };

// One induced subgraph per block. An edge moves into a block's subgraph only
// when all of its nodes lie in the block. Requires a graph without
// subgraphs; throws kPartitionInvalid otherwise. In kInPlace mode `graph` is
// rewritten and a copy of the result is returned.
Graph apply_partition(Graph& graph, const Partition& partition,
                      PartitionMode mode);
Graph apply_partition(const Graph& graph, const Partition& partition);

struct AggregateResult {
  Graph graph;
  std::map<VarRef, VarRef> reference_map;  // old ref -> new ref
};

// Collapses the whole graph into one node "<graph>_agg". Aggregated variables
// are named "<old node>.<old name>". Throws kEmptyModel.
AggregateResult aggregate(const Graph& graph);

// Every subgraph whose parent sits at `level` (the root is level 0) becomes a
// node named after the subgraph. Throws kLevelOutOfRange unless
// 0 <= level < depth(graph).
AggregateResult aggregate_to_depth(const Graph& graph, int level);

struct RerouteResult {
  std::vector<VarRef> new_variables;
  int new_rows = 0;
};

// Moves the local edge `edge_id` of `graph` so it no longer touches the
// subgraph it is routed away from.
//
// Edge between two subgraphs A and B: copies z of the A-side variables are put
// on the first node of `via`, rows z = x_A are added and the edge rows are
// rewritten over (z, x_B). `source` picks A; by default it is the first
// incident subgraph other than `via`. `via` may equal B.
//
// Edge spanning three or more subgraphs: each non-`via` subgraph w gets a
// budget variable q_w on the first node of `via`, rows Q_w x_w - q_w <= 0
// (== for equality rows) and `via` holds sum_w q_w + (via terms) <= d.
//
// Throws kNotParentEdge and kSubgraphNotAdjacent (via must already be linked
// to every subgraph it takes over).
RerouteResult reroute_link(Graph& graph, const std::string& edge_id,
                           const std::string& via,
                           const std::optional<std::string>& source = {});

struct CondensedTopology {
  std::vector<std::string> vertices;
  // Unordered pairs (first < second) -> number of parent-level edges.
  std::map<std::pair<std::string, std::string>, int> adjacency;
  // Parent-level edges spanning more than two subgraphs or touching a
  // parent-level local node.
  std::vector<std::string> orphan_edges;
  // Parent-level edges whose nodes all lie in a single subgraph.
  std::vector<std::string> internal_edges;
  // node id -> local subgraph id (parent-level local nodes are absent).
  std::map<std::string, std::string> owner;

  std::vector<std::string> neighbors(const std::string& vertex) const;
  bool connected() const;
  // Tree test on the adjacency with multiplicities ignored.
  bool acyclic() const;
  std::string to_dot() const;
};

// Throws kNoSubgraphs.
CondensedTopology condensed_topology(const Graph& graph);

}  // namespace optigraph

#endif  // OPTIGRAPH_TRANSFORM_HPP_
