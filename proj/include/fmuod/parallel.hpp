// Copyright 2026 The fmuod Authors
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

#pragma once

#include <cstddef>
#include <functional>

namespace fmuod {

/// Worker cap from FMUOD_THREADS (unset, empty or invalid means hardware concurrency).
std::size_t worker_count();

/// Runs fn(0..count-1) across worker threads. Callers write results into slots indexed by
/// the argument, so output never depends on scheduling. Nested calls run serially.
/// The first exception thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace fmuod
