#ifndef BCSHAPE_PARALLEL_HPP
#define BCSHAPE_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace bcshape {

/// Worker count from BCSHAPE_WORKERS, else hardware concurrency (min 1).
int worker_count();

/// Runs fn(i) for i in [0, n) on the worker pool. Results must be written
/// by index; completion order is unspecified but index ownership makes the
/// output deterministic. The first exception (lowest index) is rethrown
/// after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace bcshape

#endif
