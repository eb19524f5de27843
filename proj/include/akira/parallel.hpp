// Copyright 2026 The akira-kit Authors
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

namespace akira {

/// Worker count from AKIRA_KIT_THREADS, else the number of logical cores.
int default_thread_count();

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index must
/// write only its own output slot; results are then independent of scheduling.
/// The first exception thrown by any task is rethrown on the caller.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace akira
