#include "bartnik/parallel.hpp"

#include <atomic>

namespace bartnik {

namespace {
std::atomic<Exec> g_default_exec{Exec::Parallel};
}

void set_default_exec(Exec mode) { g_default_exec.store(mode); }

Exec default_exec() { return g_default_exec.load(); }

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace bartnik
