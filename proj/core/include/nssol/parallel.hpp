#ifndef NSSOL_PARALLEL_HPP
#define NSSOL_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace nssol {

/// Worker count for grid kernels: `requested` if non-zero, otherwise the
/// NSSOL_THREADS environment variable (0 or unset = hardware concurrency).
std::size_t thread_count(std::size_t requested = 0);

/// Runs body(i) for i in [0, count) over a static partition. Each index is
/// visited exactly once; if any call throws, the exception from the lowest
/// failing index is rethrown after all workers have joined.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, std::size_t threads = 0);

}  // namespace nssol

#endif  // NSSOL_PARALLEL_HPP
