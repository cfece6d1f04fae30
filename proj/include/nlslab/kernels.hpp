// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0
//
// Data-parallel building blocks shared by all field operations: pointwise
// loops and reductions over flat arrays. Every kernel has a serial path and
// an OpenMP path, selected at runtime through set_parallel(). Reductions are
// accumulated per fixed-size block and combined in block order, so the result
// is bit-identical regardless of the policy or thread count.
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nlslab::kernels {

inline constexpr std::int64_t kBlock = 4096;

// Below this size the OpenMP fork/join overhead dominates; stay serial.
inline constexpr std::int64_t kParallelCutoff = 8192;

bool parallel_enabled() noexcept;
void set_parallel(bool on) noexcept;
void set_threads(int n) noexcept;
int thread_count() noexcept;

template <class Body>
inline void parallel_for(std::int64_t n, Body&& body)
{
#ifdef _OPENMP
  if (parallel_enabled() && n >= kParallelCutoff) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
#endif
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

// Chunked variant: hands each worker a contiguous [begin,end) range, for
// kernels that want to run their own inner loop (FFT row batches, etc.).
template <class Body>
inline void parallel_for_ranges(std::int64_t n, Body&& body)
{
#ifdef _OPENMP
  if (parallel_enabled() && n > 1) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
#endif
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

// Sum of term(i) over [0,n). Per-block partial sums are computed serially and
// combined in index order: the value does not depend on the thread count.
template <class Term>
inline double block_sum(std::int64_t n, Term&& term)
{
  const std::int64_t nblocks = (n + kBlock - 1) / kBlock;
  if (nblocks <= 1) {
    double s = 0.0;
    for (std::int64_t i = 0; i < n; ++i) s += term(i);
    return s;
  }
  std::vector<double> partial(static_cast<std::size_t>(nblocks), 0.0);
  parallel_for_ranges(nblocks, [&](std::int64_t b) {
    const std::int64_t lo = b * kBlock;
    const std::int64_t hi = std::min(n, lo + kBlock);
    double s = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) s += term(i);
    partial[static_cast<std::size_t>(b)] = s;
  });
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

template <class Term>
inline double block_max(std::int64_t n, Term&& term)
{
  const std::int64_t nblocks = (n + kBlock - 1) / kBlock;
  if (nblocks <= 1) {
    double m = 0.0;
    for (std::int64_t i = 0; i < n; ++i) m = std::max(m, term(i));
    return m;
  }
  std::vector<double> partial(static_cast<std::size_t>(nblocks), 0.0);
  parallel_for_ranges(nblocks, [&](std::int64_t b) {
    const std::int64_t lo = b * kBlock;
    const std::int64_t hi = std::min(n, lo + kBlock);
    double m = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) m = std::max(m, term(i));
    partial[static_cast<std::size_t>(b)] = m;
  });
  double m = 0.0;
  for (double p : partial) m = std::max(m, p);
  return m;
}

}  // namespace nlslab::kernels
