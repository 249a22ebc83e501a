#pragma once

// Execution-mode switch for the batch kernels (grid sweeps, geodesic fans).
// Every kernel writes each result into its own preallocated slot, so the
// OpenMP path produces bit-identical output to the serial reference; tests
// rely on that equivalence.

#include <cstddef>
#include <exception>
#include <mutex>
#include <utility>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace revolve {

enum class ExecMode { serial, openmp };

inline int max_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Caps the OpenMP thread count; values < 1 are ignored.
inline void set_thread_cap(int n) {
#if defined(_OPENMP)
  if (n >= 1) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

// Runs body(i) for i in [0, n). In openmp mode iterations are distributed
// across threads; the first exception thrown by any iteration is rethrown
// on the calling thread once the loop has drained.
template <class F>
void for_each_index(std::size_t n, ExecMode mode, F&& body) {
#if defined(_OPENMP)
  if (mode == ExecMode::openmp && n > 1) {
    std::exception_ptr first_error;
    std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
    if (first_error) std::rethrow_exception(first_error);
    return;
  }
#else
  (void)mode;
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace revolve
