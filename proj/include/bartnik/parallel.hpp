#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bartnik {

/// Execution mode for the grid kernels. Every parallel kernel has a serial
/// twin with identical results (pure element-wise maps and min/max
/// reductions only, so thread count never changes the output bytes).
enum class Exec { Serial, Parallel };

void set_default_exec(Exec mode);
Exec default_exec();

int max_threads();

template <class Body>
inline void parallel_for(std::size_t n, const Body& body,
                         Exec mode = default_exec()) {
#ifdef _OPENMP
  if (mode == Exec::Parallel) {
    const long long nn = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < nn; ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)mode;
#endif
  for (std::size_t i = 0; i < n; ++i) {
    body(i);
  }
}

}  // namespace bartnik
