#pragma once

// Index-parallel loops over independent work items. Every kernel in the
// library takes an Exec argument so the serial path stays available as the
// reference the OpenMP path is tested against.

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace umb {

enum class Exec { Serial, Parallel };

// Thread cap from UMB_THREADS (unset or invalid: OpenMP default).
int thread_cap();

// Runs f(i) for i in [0, n). Work items must write only to their own slot.
// If items throw, the exception of the lowest failing index is rethrown after
// the loop, so error reporting does not depend on scheduling.
template <class F>
void for_each_index(std::size_t n, F&& f, Exec exec = Exec::Parallel) {
  if (exec == Exec::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
#ifdef _OPENMP
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(thread_cap())
  for (long i = 0; i < count; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
#else
  for (std::size_t i = 0; i < n; ++i) {
    try {
      f(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
#endif
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace umb
