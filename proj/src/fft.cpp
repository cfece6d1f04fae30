// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0

#include "nlslab/fft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "nlslab/kernels.hpp"

namespace nlslab::fft {

namespace {

std::unique_ptr<Plan> build_plan(int n)
{
  auto p = std::make_unique<Plan>();
  p->n = n;
  p->bitrev.resize(static_cast<std::size_t>(n));
  int lg = 0;
  while ((1 << lg) < n) ++lg;
  for (int i = 0; i < n; ++i) {
    std::uint32_t r = 0;
    for (int b = 0; b < lg; ++b)
      if (i & (1 << b)) r |= 1u << (lg - 1 - b);
    p->bitrev[static_cast<std::size_t>(i)] = r;
  }
  p->stage_off.assign(static_cast<std::size_t>(lg) + 1, 0);
  std::size_t off = 0;
  for (int s = 1; s <= lg; ++s) {
    p->stage_off[static_cast<std::size_t>(s)] = off;
    off += static_cast<std::size_t>(1) << (s - 1);
  }
  p->twiddle.resize(off);
  for (int s = 1; s <= lg; ++s) {
    const int len = 1 << s;
    const double ang = -2.0 * std::numbers::pi / len;
    cplx* tw = p->twiddle.data() + p->stage_off[static_cast<std::size_t>(s)];
    for (int j = 0; j < len / 2; ++j) tw[j] = std::polar(1.0, ang * j);
  }
  return p;
}

std::mutex g_plan_mutex;
std::map<int, std::unique_ptr<Plan>>& plan_registry()
{
  static std::map<int, std::unique_ptr<Plan>> reg;
  return reg;
}

inline void permute(cplx* a, const Plan& p)
{
  const int n = p.n;
  for (int i = 0; i < n; ++i) {
    const std::uint32_t r = p.bitrev[static_cast<std::size_t>(i)];
    if (static_cast<std::uint32_t>(i) < r) std::swap(a[i], a[r]);
  }
}

}  // namespace

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

const Plan& plan_for(int n)
{
  if (!is_pow2(n)) throw std::invalid_argument("fft: size must be a power of two");
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto& reg = plan_registry();
  auto it = reg.find(n);
  if (it == reg.end()) it = reg.emplace(n, build_plan(n)).first;
  return *it->second;
}

void transform(cplx* a, const Plan& p, bool inverse)
{
  const int n = p.n;
  permute(a, p);
  int s = 1;
  for (int len = 2; len <= n; len <<= 1, ++s) {
    const int half = len / 2;
    const cplx* tw = p.twiddle.data() + p.stage_off[static_cast<std::size_t>(s)];
    for (int i = 0; i < n; i += len) {
      for (int j = 0; j < half; ++j) {
        const cplx w = inverse ? std::conj(tw[j]) : tw[j];
        const cplx u = a[i + j];
        const cplx v = a[i + j + half] * w;
        a[i + j] = u + v;
        a[i + j + half] = u - v;
      }
    }
  }
}

void transform_mt(cplx* a, const Plan& p, bool inverse)
{
  const int n = p.n;
  if (n < (1 << 15) || !kernels::parallel_enabled()) {
    transform(a, p, inverse);
    return;
  }
  permute(a, p);
  int s = 1;
  for (int len = 2; len <= n; len <<= 1, ++s) {
    const int half = len / 2;
    const cplx* tw = p.twiddle.data() + p.stage_off[static_cast<std::size_t>(s)];
    const std::int64_t nbf = static_cast<std::int64_t>(n) / 2;
    kernels::parallel_for(nbf, [&](std::int64_t b) {
      const int blk = static_cast<int>(b / half);
      const int j = static_cast<int>(b % half);
      const int i = blk * len;
      const cplx w = inverse ? std::conj(tw[j]) : tw[j];
      const cplx u = a[i + j];
      const cplx v = a[i + j + half] * w;
      a[i + j] = u + v;
      a[i + j + half] = u - v;
    });
  }
}

void forward_1d(cplx* data, int n) { transform_mt(data, plan_for(n), false); }

void inverse_1d(cplx* data, int n)
{
  transform_mt(data, plan_for(n), true);
  const double inv = 1.0 / n;
  kernels::parallel_for(n, [&](std::int64_t i) { data[i] *= inv; });
}

namespace {

void pass_2d(cplx* data, int n, bool inverse, bool columns)
{
  const Plan& p = plan_for(n);
#ifdef _OPENMP
  const bool par = kernels::parallel_enabled();
#pragma omp parallel if (par)
  {
    std::vector<cplx> scratch(columns ? static_cast<std::size_t>(n) : 0);
#pragma omp for schedule(static)
    for (int r = 0; r < n; ++r) {
      if (!columns) {
        transform(data + static_cast<std::size_t>(r) * n, p, inverse);
      } else {
        for (int i = 0; i < n; ++i) scratch[static_cast<std::size_t>(i)] = data[static_cast<std::size_t>(i) * n + r];
        transform(scratch.data(), p, inverse);
        for (int i = 0; i < n; ++i) data[static_cast<std::size_t>(i) * n + r] = scratch[static_cast<std::size_t>(i)];
      }
    }
  }
#else
  std::vector<cplx> scratch(columns ? static_cast<std::size_t>(n) : 0);
  for (int r = 0; r < n; ++r) {
    if (!columns) {
      transform(data + static_cast<std::size_t>(r) * n, p, inverse);
    } else {
      for (int i = 0; i < n; ++i) scratch[static_cast<std::size_t>(i)] = data[static_cast<std::size_t>(i) * n + r];
      transform(scratch.data(), p, inverse);
      for (int i = 0; i < n; ++i) data[static_cast<std::size_t>(i) * n + r] = scratch[static_cast<std::size_t>(i)];
    }
  }
#endif
}

}  // namespace

void forward_2d(cplx* data, int n)
{
  pass_2d(data, n, false, false);
  pass_2d(data, n, false, true);
}

void inverse_2d(cplx* data, int n)
{
  pass_2d(data, n, true, false);
  pass_2d(data, n, true, true);
  const double inv = 1.0 / (static_cast<double>(n) * n);
  kernels::parallel_for(static_cast<std::int64_t>(n) * n, [&](std::int64_t i) { data[i] *= inv; });
}

}  // namespace nlslab::fft
