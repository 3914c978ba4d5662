#include "umb/parallel.hpp"

#include <cstdlib>
#include <string>

namespace umb {

int thread_cap() {
  int fallback = 1;
#ifdef _OPENMP
  fallback = omp_get_max_threads();
#endif
  const char* env = std::getenv("UMB_THREADS");
  if (env == nullptr) return fallback;
  try {
    const int cap = std::stoi(env);
    return cap > 0 ? cap : fallback;
  } catch (...) {
    return fallback;
  }
}

}  // namespace umb
