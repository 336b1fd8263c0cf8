// Copyright 2026 The Noise Lab Authors
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

#ifndef NOISE_LAB_PARALLEL_H
#define NOISE_LAB_PARALLEL_H

#include <cstddef>
#include <functional>

namespace noise_lab {

/// Worker count used by the library. 0 means "all hardware threads".
void set_num_threads(size_t n);
size_t num_threads();

/// Runs f(chunk) for chunk in [0, num_chunks). Chunks are distributed over the
/// workers; callers own one output slot per chunk and combine them in chunk
/// order, so results never depend on the thread count.
void parallel_chunks(size_t num_chunks, const std::function<void(size_t)> &f);

}  // namespace noise_lab

#endif
