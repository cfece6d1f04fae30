// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0

#include "nlslab/kernels.hpp"

#include <atomic>

namespace nlslab::kernels {

namespace {
std::atomic<bool> g_parallel{true};
}

bool parallel_enabled() noexcept { return g_parallel.load(std::memory_order_relaxed); }

void set_parallel(bool on) noexcept { g_parallel.store(on, std::memory_order_relaxed); }

void set_threads(int n) noexcept
{
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int thread_count() noexcept
{
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace nlslab::kernels
