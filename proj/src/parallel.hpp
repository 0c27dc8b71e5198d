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

#ifndef OPTIGRAPH_SRC_PARALLEL_HPP_
#define OPTIGRAPH_SRC_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace optigraph::detail {

// Calls body(i) for i in [0, n) on a small thread pool. Each call must write
// only its own slot. The first exception by index is rethrown.
template <typename F>
void run_parallel(size_t n, F&& body) {
  const size_t workers = std::min<size_t>(
      n, std::max(2u, std::thread::hardware_concurrency()));
  std::atomic<size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace optigraph::detail

#endif  // OPTIGRAPH_SRC_PARALLEL_HPP_
