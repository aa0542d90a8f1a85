#pragma once

#include <cstddef>
#include <functional>

namespace hent {

/// Worker count: HE_ENTANGLE_THREADS when set to a positive integer,
/// otherwise std::thread::hardware_concurrency() (at least 1).
unsigned thread_count();

/// Calls body(i) for i in [0, n) on up to thread_count() threads. Indices
/// are handed out in contiguous blocks; body must only write state owned by
/// index i, so results do not depend on the schedule. The first exception
/// thrown by any body is rethrown after all threads join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hent
