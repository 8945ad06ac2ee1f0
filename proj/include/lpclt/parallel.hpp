// Copyright 2026 The lpclt Authors.
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


#pragma once

#include <cstddef>
#include <functional>

namespace lpclt {

struct Parallelism {
  // 0 selects std::thread::hardware_concurrency().
  unsigned threads = 1;
};

unsigned resolve_threads(unsigned requested);

// Runs body(begin, end) over contiguous chunks of [0, count). The first
// exception thrown by any chunk is rethrown on the calling thread.
void parallel_for(std::size_t count, Parallelism par,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace lpclt
