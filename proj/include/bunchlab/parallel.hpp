// Copyright 2026 The bunchlab Authors
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

#ifndef BUNCHLAB_PARALLEL_HPP
#define BUNCHLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace bunchlab {

/// Worker count from BUNCHLAB_THREADS (0 or unset = hardware concurrency).
unsigned worker_count();

/// Runs body(0..count-1). Iterations are independent; callers write results
/// into per-index slots so output does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace bunchlab

#endif  // BUNCHLAB_PARALLEL_HPP
