#include "dpinv/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace dpinv {

int worker_count() {
#if defined(_OPENMP)
  int workers = omp_get_max_threads();
#else
  int workers = 1;
#endif
  if (const char* env = std::getenv("DP_INVARIANCE_THREADS")) {
    int cap = 0;
    const auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), cap);
    if (ec == std::errc{} && cap > 0 && cap < workers) workers = cap;
  }
  return workers < 1 ? 1 : workers;
}

}  // namespace dpinv
