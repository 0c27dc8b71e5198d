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

#ifndef OPTIGRAPH_TESTS_TEST_UTIL_HPP_
#define OPTIGRAPH_TESTS_TEST_UTIL_HPP_

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>

#include "optigraph/model.hpp"
#include "optigraph/solver.hpp"
#include "optigraph/standard_form.hpp"
#include "instances.hpp"

#define EXPECT_ERRC(stmt, errc)                \
  do {                                         \
    try {                                      \
      stmt;                                    \
      ADD_FAILURE() << "no exception: " #stmt; \
    } catch (const ::optigraph::Error& e) {    \
      EXPECT_EQ(e.code(), errc) << e.what();   \
    }                                          \
  } while (0)

namespace optigraph::testing {

inline double monolithic(const Graph& g) {
  const SolveResult r = solve_milp(flatten(g));
  EXPECT_EQ(r.status, SolveStatus::kOptimal);
  return r.objective;
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace optigraph::testing

#endif  // OPTIGRAPH_TESTS_TEST_UTIL_HPP_
