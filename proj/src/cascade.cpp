// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0

#include "nlslab/cascade.hpp"

#include <cmath>
#include <stdexcept>

#include "nlslab/kernels.hpp"
#include "nlslab/spectral.hpp"

namespace nlslab::cascade {

namespace {

double ipow(double x, int p)
{
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

void check_time(double t)
{
  if (!(t >= 0.0) || t >= 1.0) throw std::invalid_argument("cascade: requires 0 <= t < 1");
}

int resolve_n_use(const CascadeStack& st, int n_use)
{
  if (n_use < 0) return st.N;
  if (n_use > st.N) throw std::invalid_argument("cascade: n_use exceeds stack depth");
  return n_use;
}

}  // namespace

CascadeStack build_stack(const std::function<cplx(const Vec2&)>& a0, const PhysParams& p,
                         int N, const GridSpec& ref_grid)
{
  const double ns = static_cast<double>(p.n_dim) * p.sigma;
  if (!(ns > p.alpha && p.alpha > 1.0))
    throw std::invalid_argument("cascade: requires n sigma > alpha > 1");
  if (N < 1) throw std::invalid_argument("cascade: N must be >= 1");

  CascadeStack st;
  st.params = p;
  st.ref_grid = ref_grid;
  st.N = N;

  WaveField a0f = sample(ref_grid, a0);
  st.a0_sq_sigma = make_real(ref_grid);
  for (std::size_t i = 0; i < a0f.values.size(); ++i)
    st.a0_sq_sigma.values[i] = ipow(std::norm(a0f.values[i]), p.sigma);

  std::vector<std::vector<RealField>> grads;
  for (int j = 1; j <= N; ++j) {
    RealField g = make_real(ref_grid);
    if (j == 1) {
      for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] = -st.a0_sq_sigma.values[i];
    } else {
      for (int pp = 1; pp <= j - 1; ++pp) {
        const int q = j - pp;
        const double w = 1.0 / ((pp * ns - 1.0) * (q * ns - 1.0));
        const auto& gp = grads[static_cast<std::size_t>(pp - 1)];
        const auto& gq = grads[static_cast<std::size_t>(q - 1)];
        for (int d = 0; d < ref_grid.dim; ++d) {
          const double* a = gp[static_cast<std::size_t>(d)].values.data();
          const double* b = gq[static_cast<std::size_t>(d)].values.data();
          double* dst = g.values.data();
          kernels::parallel_for(ref_grid.size(),
                                [=](std::int64_t i) { dst[i] += -0.5 * w * a[i] * b[i]; });
        }
      }
      spectral::dealias_inplace(g);
    }
    const double sup = sup_abs(g);
    if (boundary_max_abs(g) > 1e-8 * sup)
      throw std::runtime_error("cascade: g_" + std::to_string(j) +
                               " does not decay at the reference-grid boundary");
    st.sup_g.push_back(sup);
    grads.push_back(spectral::gradient(g));
    st.profiles.push_back(std::move(g));
  }
  return st;
}

double term_coef(const CascadeStack& st, int j, double t, double eps)
{
  check_time(t);
  const double ns = static_cast<double>(st.params.n_dim) * st.params.sigma;
  const double jns = j * ns;
  return std::pow(eps, j * st.params.alpha - 1.0) * std::pow(1.0 - t, 1.0 - jns) / (jns - 1.0);
}

double term_sup(const CascadeStack& st, int j, double t, double eps)
{
  if (j < 1 || j > st.N) throw std::invalid_argument("cascade: j out of range");
  return std::abs(term_coef(st, j, t, eps)) * st.sup_g[static_cast<std::size_t>(j - 1)];
}

RealField phase_g_N(const CascadeStack& st, double t, double eps, const GridSpec& phys, int n_use)
{
  check_time(t);
  const int N = resolve_n_use(st, n_use);
  RealField out = make_real(phys);
  const double om = 1.0 - t;
  for (int j = 1; j <= N; ++j) {
    const RealField rs = spectral::resample_scaled(st.profiles[static_cast<std::size_t>(j - 1)],
                                                   phys, om);
    const double c = term_coef(st, j, t, eps);
    const double* src = rs.values.data();
    double* dst = out.values.data();
    kernels::parallel_for(phys.size(), [=](std::int64_t i) { dst[i] += c * src[i]; });
  }
  return out;
}

WaveField v_N(const CascadeStack& st, const std::function<cplx(const Vec2&)>& a0, double t,
              double eps, const GridSpec& phys, int n_use)
{
  check_time(t);
  const RealField g = phase_g_N(st, t, eps, phys, n_use);
  const double om = 1.0 - t;
  const double amp = std::pow(om, -0.5 * phys.dim);
  const double chirp = 0.5 / (eps * (t - 1.0));
  WaveField out = make_wave(phys, Formulation::physical_u);
  out.time_stamp = t;
  for (std::int64_t i = 0; i < phys.size(); ++i) {
    const Vec2 x = node_position(phys, i);
    const Vec2 xi{x[0] / om, x[1] / om};
    const double xsq = x[0] * x[0] + x[1] * x[1];
    const double theta = chirp * xsq + g.values[static_cast<std::size_t>(i)];
    out.values[static_cast<std::size_t>(i)] = amp * a0(xi) * std::polar(1.0, theta);
  }
  return out;
}

double residual_norm(const CascadeStack& st, const std::function<cplx(const Vec2&)>& a0,
                     double t, double eps, const GridSpec& phys, int n_use,
                     bool include_nonlinear)
{
  check_time(t);
  const double delta = std::max(1e-6 * (1.0 - t), 1e-12);
  if (1.0 - t < 10.0 * delta)
    throw std::invalid_argument("residual_norm: t too close to 1 for stable differencing");

  const WaveField vp = v_N(st, a0, t + delta, eps, phys, n_use);
  const WaveField vm = v_N(st, a0, t - delta, eps, phys, n_use);
  const WaveField vc = v_N(st, a0, t, eps, phys, n_use);
  const WaveField lap = spectral::laplacian(vc);

  const double ea = std::pow(eps, st.params.alpha);
  const int sigma = st.params.sigma;
  const double cell = std::pow(phys.spacing(), phys.dim);
  const cplx* pp = vp.values.data();
  const cplx* pm = vm.values.data();
  const cplx* pc = vc.values.data();
  const cplx* pl = lap.values.data();
  const double inv2d = 1.0 / (2.0 * delta);
  const double sum = kernels::block_sum(phys.size(), [=](std::int64_t i) {
    const cplx dudt = (pp[i] - pm[i]) * inv2d;
    cplx r = cplx{0.0, eps} * dudt + 0.5 * eps * eps * pl[i];
    if (include_nonlinear) r -= ea * ipow(std::norm(pc[i]), sigma) * pc[i];
    return std::norm(r);
  });
  return std::sqrt(cell * sum);
}

WaveField residual_closed_form_n1(const CascadeStack& st,
                                  const std::function<cplx(const Vec2&)>& a0, double t,
                                  double eps, const GridSpec& phys)
{
  check_time(t);
  if (st.N < 2) throw std::invalid_argument("residual_closed_form_n1: stack must hold g_2");

  const double ns = static_cast<double>(st.params.n_dim) * st.params.sigma;
  const double om = 1.0 - t;
  const double z = std::pow(eps, st.params.alpha) / std::pow(om, ns);
  const double w1 = 1.0 / (ns - 1.0);
  const double eom = eps / om;

  // xi-space derivative fields on the reference grid.
  WaveField a0_ref = sample(st.ref_grid, a0);
  const auto grad_a0 = spectral::gradient(a0_ref);
  const WaveField lap_a0 = spectral::laplacian(a0_ref);
  const auto grad_g1 = spectral::gradient(st.profiles[0]);
  const RealField lap_g1 = spectral::laplacian(st.profiles[0]);
  WaveField gdot = make_wave(st.ref_grid);  // grad g_1 . grad a0
  for (int d = 0; d < st.ref_grid.dim; ++d)
    for (std::size_t i = 0; i < gdot.values.size(); ++i)
      gdot.values[i] += grad_g1[static_cast<std::size_t>(d)].values[i] *
                        grad_a0[static_cast<std::size_t>(d)].values[i];

  const RealField g2 = spectral::resample_scaled(st.profiles[1], phys, om);
  const RealField lg1 = spectral::resample_scaled(lap_g1, phys, om);
  const WaveField gda = spectral::resample_scaled(gdot, phys, om);
  const WaveField la0 = spectral::resample_scaled(lap_a0, phys, om);
  const RealField g_phase = phase_g_N(st, t, eps, phys, 1);

  const double ampl = std::pow(om, -0.5 * phys.dim);
  const double chirp = 0.5 / (eps * (t - 1.0));
  WaveField r = make_wave(phys, Formulation::auxiliary);
  r.time_stamp = t;
  for (std::int64_t i = 0; i < phys.size(); ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    const Vec2 x = node_position(phys, i);
    const Vec2 xi{x[0] / om, x[1] / om};
    const double xsq = x[0] * x[0] + x[1] * x[1];
    const cplx geo = ampl * std::polar(1.0, chirp * xsq + g_phase.values[u]);
    const cplx va = a0(xi) * geo;
    const cplx phase_part = (z * z * g2.values[u] + cplx{0.0, 1.0} * eom * w1 * z * 0.5 * lg1.values[u]) * va;
    const cplx amp_part = (cplx{0.0, 1.0} * eom * w1 * z * gda.values[u] +
                           0.5 * eom * eom * la0.values[u]) * geo;
    r.values[u] = phase_part + amp_part;
  }
  return r;
}

RealField conformal_phase_coeff(const CascadeStack& st, int j)
{
  if (j < 1 || j > st.N) throw std::invalid_argument("cascade: j out of range");
  const double ns = static_cast<double>(st.params.n_dim) * st.params.sigma;
  RealField out = st.profiles[static_cast<std::size_t>(j - 1)];
  const double w = 1.0 / (j * ns - 1.0);
  for (double& v : out.values) v *= w;
  return out;
}

double residual_budget(const CascadeStack& st, const std::function<cplx(const Vec2&)>& a0,
                       double t, double eps)
{
  check_time(t);
  if (st.N < 2) throw std::invalid_argument("residual_budget: stack must hold g_2");
  const double ns = static_cast<double>(st.params.n_dim) * st.params.sigma;
  const double alpha = st.params.alpha;
  const double om = 1.0 - t;

  WaveField a0_ref = sample(st.ref_grid, a0);
  const auto grad_a0 = spectral::gradient(a0_ref);
  const WaveField lap_a0 = spectral::laplacian(a0_ref);
  const auto grad_g1 = spectral::gradient(st.profiles[0]);
  const RealField lap_g1 = spectral::laplacian(st.profiles[0]);

  // ||g_2 a0||, ||(1/2) lap g_1 a0 + grad g_1 . grad a0||, ||lap a0||.
  WaveField t1 = make_wave(st.ref_grid);
  WaveField t3 = make_wave(st.ref_grid);
  for (std::size_t i = 0; i < t1.values.size(); ++i) {
    t1.values[i] = st.profiles[1].values[i] * a0_ref.values[i];
    cplx acc = 0.5 * lap_g1.values[i] * a0_ref.values[i];
    for (int d = 0; d < st.ref_grid.dim; ++d)
      acc += grad_g1[static_cast<std::size_t>(d)].values[i] *
             grad_a0[static_cast<std::size_t>(d)].values[i];
    t3.values[i] = acc;
  }
  const double A = spectral::l2(t1);
  const double C3 = spectral::l2(t3);
  const double D = spectral::l2(lap_a0);

  // int_0^t (1-s)^{-m} ds = ((1-t)^{1-m} - 1)/(m-1).
  auto layer_int = [&](double m) { return (std::pow(om, 1.0 - m) - 1.0) / (m - 1.0); };
  const double w1 = 1.0 / (ns - 1.0);
  const double part1 = std::pow(eps, 2.0 * alpha - 1.0) * A * layer_int(2.0 * ns);
  const double part3 = std::pow(eps, alpha) * w1 * C3 * layer_int(ns + 1.0);
  const double part2 = 0.5 * eps * D * layer_int(2.0);
  return part1 + part3 + part2;
}

}  // namespace nlslab::cascade
