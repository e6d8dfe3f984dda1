#pragma once

#include <cstdlib>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace ctl {

// Honors the CTL_SIM_THREADS cap before any parallel region runs; no-op in
// serial builds or when the variable is unset or malformed.
inline void configure_threads_from_env() {
#if defined(_OPENMP)
  if (const char* cap = std::getenv("CTL_SIM_THREADS")) {
    const int n = std::atoi(cap);
    if (n > 0) omp_set_num_threads(n);
  }
#endif
}

}  // namespace ctl
