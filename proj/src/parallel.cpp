#include "centrank/parallel.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace centrank {

std::size_t thread_count() {
#ifdef _OPENMP
  return static_cast<std::size_t>(omp_get_max_threads());
#else
  return 1;
#endif
}

void set_thread_count(std::size_t threads) {
#ifdef _OPENMP
  omp_set_num_threads(static_cast<int>(std::max<std::size_t>(threads, 1)));
#else
  (void)threads;
#endif
}

}  // namespace centrank
