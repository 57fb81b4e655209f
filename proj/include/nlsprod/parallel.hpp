// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace nlsprod {

/// Worker cap: NLS_THREADS when set (>= 1), hardware concurrency otherwise.
unsigned worker_cap();

/// Run fn(0..n-1) on up to worker_cap() threads. Iterations must be
/// independent; results written per-index stay deterministic regardless of
/// the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace nlsprod
