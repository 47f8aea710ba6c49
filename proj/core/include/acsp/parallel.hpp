// Copyright 2026 The ACSP Authors. All Rights Reserved.
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

#ifndef ACSP_PARALLEL_HPP_
#define ACSP_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace acsp {

/// Worker cap: ACSP_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t WorkerCount();

/// Runs body(i) for i in [0, n). Each index is visited exactly once; callers
/// write results into disjoint slots so the outcome does not depend on
/// scheduling. The first exception thrown by any body is rethrown.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace acsp

#endif  // ACSP_PARALLEL_HPP_
