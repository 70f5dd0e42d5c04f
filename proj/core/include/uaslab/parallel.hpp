// Copyright 2026 The uaslab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UASLAB_PARALLEL_HPP_
#define UASLAB_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace uaslab {

// Runs fn(0), ..., fn(count-1) on up to `jobs` threads. Callers key results
// by index so the file output never depends on scheduling order; the first
// exception thrown by any worker is rethrown after all workers join.
void parallel_for(std::size_t count, std::size_t jobs,
                  const std::function<void(std::size_t)>& fn);

}  // namespace uaslab

#endif  // UASLAB_PARALLEL_HPP_
