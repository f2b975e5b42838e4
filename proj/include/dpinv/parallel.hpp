#pragma once

#include <cstddef>
#include <exception>

namespace dpinv {

// Number of OpenMP workers used by the parallel kernels. The
// DP_INVARIANCE_THREADS environment variable caps it; results never depend
// on this value.
int worker_count();

// Runs body(i) for i in [0, count). Iterations must be independent. An
// exception escaping any iteration is rethrown on the calling thread after the
// loop finishes.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  const auto n = static_cast<long long>(count);
  std::exception_ptr failure;
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 16) num_threads(worker_count())
#endif
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#if defined(_OPENMP)
#pragma omp critical(dpinv_parallel_for_failure)
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace dpinv
