// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0
//
// Serial vs OpenMP timings for the hot kernels: 2D FFT, pointwise phase
// rotation, blocked reductions, one full split step, and one hydro RHS-heavy
// RK4 step. Usage: nlslab_bench [threads]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "nlslab/fft.hpp"
#include "nlslab/grenier.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/kernels.hpp"
#include "nlslab/model.hpp"
#include "nlslab/solver.hpp"
#include "nlslab/spectral.hpp"

using namespace nlslab;

namespace {

double time_of(const std::function<void()>& fn, int reps)
{
  fn();  // warm up
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count() / reps;
}

void row(const char* name, const std::function<void()>& fn, int reps)
{
  kernels::set_parallel(false);
  const double serial = time_of(fn, reps);
  kernels::set_parallel(true);
  const double parallel = time_of(fn, reps);
  std::printf("%-28s %10.3f ms %10.3f ms %8.2fx\n", name, serial * 1e3, parallel * 1e3,
              serial / parallel);
}

cplx gauss_a0(const Vec2& x) { return cplx{std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1])), 0.0}; }

}  // namespace

int main(int argc, char** argv)
{
  if (argc > 1) kernels::set_threads(std::atoi(argv[1]));
  std::printf("threads available: %d\n", kernels::thread_count());
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  const GridSpec g = make_grid(2, 256, 8.0);
  WaveField f = sample(g, gauss_a0);

  {
    std::vector<cplx> buf = f.values;
    row("fft2d 256^2 (fwd+inv)", [&] {
      fft::forward_2d(buf.data(), 256);
      fft::inverse_2d(buf.data(), 256);
    }, 50);
  }
  {
    WaveField u = f;
    row("phase rotation 256^2", [&] {
      cplx* v = u.values.data();
      kernels::parallel_for(u.grid.size(), [=](std::int64_t i) {
        v[i] *= std::polar(1.0, 0.1 * std::norm(v[i]));
      });
    }, 100);
  }
  {
    row("L2 reduction 256^2", [&] { (void)spectral::l2(f); }, 200);
  }
  {
    const PhysParams p = make_params(3e-3, 1.5, 2, 1);
    EvolutionSpec spec;
    spec.formulation = Formulation::conformal_psi;
    spec.params = p;
    spec.nl = builtin_nonlinearity(BuiltinNl::cubic);
    spec.t_start = p.t0;
    spec.t_end = p.t0 + 1.0;
    spec.dt = 1e-3;
    WaveField psi = f;
    psi.tag = Formulation::conformal_psi;
    double t = p.t0;
    row("split step 256^2", [&] {
      strang_step(psi, spec, t, 1e-3);
      t += 1e-3;
    }, 100);
  }
  {
    const GridSpec gh = make_grid(2, 128, 8.0);
    const PhysParams p = params_from_hbar(0.1, 1.5, 2, 1);
    const Nonlinearity nl = builtin_nonlinearity(BuiltinNl::cubic);
    grenier::HydroOptions opt;
    opt.dt = 1e-3;
    row("hydro RK4 step 128^2", [&] {
      (void)grenier::integrate_exact(gauss_a0, p, nl, gh, p.t0 + 5e-3, opt);
    }, 10);
  }
  {
    const GridSpec src = make_grid(2, 512, 8.0);
    const GridSpec tgt = make_grid(2, 256, 8.0);
    RealField r = sample_real(src, [](const Vec2& x) {
      return std::exp(-(x[0] * x[0] + x[1] * x[1]));
    });
    row("chirp-z resample 512->256", [&] { (void)spectral::resample_scaled(r, tgt, 0.5); }, 10);
  }
  return 0;
}
