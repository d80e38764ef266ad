// Copyright 2026 The maxent-qst Authors
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

#ifndef MQST_PARALLEL_HPP
#define MQST_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace mqst {

/// Worker count: MAXENT_QST_THREADS if set to a positive integer, otherwise
/// std::thread::hardware_concurrency() (at least 1).
unsigned worker_count();

/// Calls body(k) for k in [0, count) on up to `workers` threads (0 means
/// worker_count()). Indices are handed out in contiguous blocks.
///
/// If any call throws, the exception from the smallest failing index is
/// rethrown after all workers finish, so failures are reproducible.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned workers = 0);

}  // namespace mqst

#endif  // MQST_PARALLEL_HPP
