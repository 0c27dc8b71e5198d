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

#ifndef OPTIGRAPH_ERROR_HPP_
#define OPTIGRAPH_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace optigraph {

// Every failure raised by the library carries one of these codes so callers
// (and the CLI) can branch on the kind of failure without parsing messages.
enum class Errc {
  // model
  kDuplicateName,
  kInvalidBounds,
  kForeignVariable,
  kNotOwned,
  kSingleNode,
  kCycleInNesting,
  kIdCollision,
  kEmptyModel,
  kUnknownNode,
  kUnknownVariable,
  kInvalidName,
  kNonFiniteValue,
  kEmptyExpression,
  // transform
  kNotCovering,
  kNotDisjoint,
  kEmptyBlock,
  kPartitionInvalid,
  kLevelOutOfRange,
  kNotParentEdge,
  kSubgraphNotAdjacent,
  kNoSubgraphs,
  // solver
  kNumericalBreakdown,
  kNodeLimit,
  // decomposition
  kHyperedgeSpan,
  kDisconnected,
  kCyclicStructure,
  kLocalNodesAtRoot,
  kOverlapUnsupported,
  kRootNotFound,
  kSubproblemInfeasible,
  kUnboundedSubproblem,
  kDualsUnavailable,
  kLevelSetInfeasible,
  kRelaxationInfeasible,
  kInvalidConfig,
  kInvalidOrder,
  // io
  kParseError,
  kSchemaVersionMismatch,
  kIoError,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace optigraph

#endif  // OPTIGRAPH_ERROR_HPP_
