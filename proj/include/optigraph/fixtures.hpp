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

// Built-in instances.
//
//   storage      flat graph: planning node + 20 operation nodes (LP).
//   chain3_milp  three one-node subgraphs g1, g2, g3 with binary x (MILP).
//   mini_cem     planning subgraph + 3 operations subgraphs; the emissions
//                cap over all operations is lifted onto planning (LP).
//   mini_pcm     12-period unit commitment with storage, 3 subgraphs of
//                4 periods (MILP).
//   mini_pcm_lp  mini_pcm with the on/off variables relaxed (LP).

#ifndef OPTIGRAPH_FIXTURES_HPP_
#define OPTIGRAPH_FIXTURES_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "optigraph/model.hpp"
#include "optigraph/transform.hpp"

namespace optigraph {

std::vector<std::string> fixture_names();

// Throws kInvalidConfig for an unknown name.
Graph generate_fixture(std::string_view name);

Graph storage_fixture();
// {planning} and {all operation nodes}, named "planning" / "operations".
Partition storage_two_block_partition();
// storage_fixture() with storage_two_block_partition() applied.
Graph storage_two_block();

Graph chain3_milp();
// lift = false keeps the emissions cap as a hyperedge over the operations.
Graph mini_cem(bool lift = true);
Graph mini_pcm(bool relaxed = false);

}  // namespace optigraph

#endif  // OPTIGRAPH_FIXTURES_HPP_
