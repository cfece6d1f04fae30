// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0

#include "nlslab/linear.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nlslab/kernels.hpp"
#include "nlslab/model.hpp"
#include "nlslab/solver.hpp"
#include "nlslab/spectral.hpp"

namespace nlslab::linear {

WaveField free_propagate(const WaveField& init, double eps, double t)
{
  WaveField u = init;
  spectral::forward_inplace(u.values, u.grid);
  const GridSpec g = u.grid;
  const int n = g.points_per_axis;
  cplx* v = u.values.data();
  const double c = -0.5 * eps * t;
  kernels::parallel_for(g.size(), [=](std::int64_t idx) {
    const int mx = g.dim == 1 ? static_cast<int>(idx) : static_cast<int>(idx / n);
    const int my = g.dim == 1 ? 0 : static_cast<int>(idx % n);
    const double kx = g.wavenumber(mx);
    const double ky = g.dim == 2 ? g.wavenumber(my) : 0.0;
    v[idx] *= std::polar(1.0, c * (kx * kx + ky * ky));
  });
  spectral::inverse_inplace(u.values, u.grid);
  u.time_stamp = init.time_stamp + t;
  return u;
}

WaveField wkb_linear(const LinearWkbProfile& profile, const GridSpec& grid, double t)
{
  if (!(t >= 0.0) || t >= 1.0) throw std::invalid_argument("wkb_linear: requires 0 <= t < 1");
  const double om = 1.0 - t;
  const double amp = std::pow(om, -0.5 * grid.dim);
  const double phase_rate = 0.5 / (profile.eps * (t - 1.0));
  WaveField u = make_wave(grid, Formulation::physical_u);
  u.time_stamp = t;
  for (std::int64_t i = 0; i < grid.size(); ++i) {
    const Vec2 x = node_position(grid, i);
    const Vec2 xi{x[0] / om, x[1] / om};
    const double xsq = x[0] * x[0] + x[1] * x[1];
    u.values[static_cast<std::size_t>(i)] =
        amp * profile.a0(xi) * std::polar(1.0, phase_rate * xsq);
  }
  return u;
}

cplx gaussian_beam_value(double eps, double t, const Vec2& x, int dim)
{
  const cplx q0{1.0, 1.0 / eps};
  const cplx mu{1.0 - t, eps * t};  // 1 + i eps q0 t
  const double xsq = x[0] * x[0] + x[1] * x[1];
  // mu stays in the upper half plane for t > 0: principal log is continuous.
  const cplx amp = std::exp(-0.5 * static_cast<double>(dim) * std::log(mu));
  return amp * std::exp(-0.5 * q0 * xsq / mu);
}

WaveField gaussian_beam(double eps, double t, const GridSpec& grid)
{
  WaveField u = make_wave(grid, Formulation::physical_u);
  u.time_stamp = t;
  for (std::int64_t i = 0; i < grid.size(); ++i)
    u.values[static_cast<std::size_t>(i)] =
        gaussian_beam_value(eps, t, node_position(grid, i), grid.dim);
  return u;
}

cplx fresnel_quadrature_1d(const std::function<cplx(double)>& a0, double eps, double t,
                           double x, double half_range)
{
  if (!(t > 0.0)) throw std::invalid_argument("fresnel_quadrature: t must be positive");
  // (2 i pi eps t)^{-1/2} = e^{-i pi/4} / sqrt(2 pi eps t)
  const cplx pref = std::polar(1.0 / std::sqrt(2.0 * std::numbers::pi * eps * t),
                               -0.25 * std::numbers::pi);
  auto integrand = [&](double y) {
    const double phase = (x - y) * (x - y) / (2.0 * eps * t) - y * y / (2.0 * eps);
    return a0(y) * std::polar(1.0, phase);
  };
  // Composite Simpson with doubling until the value settles.
  cplx prev{0.0, 0.0};
  for (int npts = 1 << 12; npts <= (1 << 21); npts <<= 1) {
    const double h = 2.0 * half_range / npts;
    cplx sum = integrand(-half_range) + integrand(half_range);
    const std::int64_t n64 = npts;
    // Deterministic blocked accumulation, real and imaginary parts separately.
    const double re = kernels::block_sum(n64 - 1, [&](std::int64_t i) {
      const double y = -half_range + h * static_cast<double>(i + 1);
      const double w = (i % 2 == 0) ? 4.0 : 2.0;
      return w * integrand(y).real();
    });
    const double im = kernels::block_sum(n64 - 1, [&](std::int64_t i) {
      const double y = -half_range + h * static_cast<double>(i + 1);
      const double w = (i % 2 == 0) ? 4.0 : 2.0;
      return w * integrand(y).imag();
    });
    sum += cplx{re, im};
    const cplx val = pref * sum * (h / 3.0);
    if (std::abs(val - prev) < 1e-10 * (1.0 + std::abs(val)) && npts > (1 << 13)) return val;
    prev = val;
  }
  return prev;
}

double layer_error(const WaveField& a0_field, double eps, double t)
{
  if (!(t >= 0.0) || t >= 1.0) throw std::invalid_argument("layer_error: requires 0 <= t < 1");
  // || u_lin(t) - v_lin(t) ||_L2 = || (exp(i s Delta / 2) - 1) a0 ||_L2 with
  // s = eps t / (1-t), by unitarity of the lens transform.
  const double s = eps * t / (1.0 - t);
  const GridSpec& g = a0_field.grid;
  std::vector<cplx> hat = a0_field.values;
  spectral::forward_inplace(hat, g);
  const double inv = 1.0 / static_cast<double>(g.size());
  const int n = g.points_per_axis;
  const cplx* p = hat.data();
  const double vol = std::pow(2.0 * g.half_width, g.dim);
  const double total = kernels::block_sum(g.size(), [&, p](std::int64_t idx) {
    const int mx = g.dim == 1 ? static_cast<int>(idx) : static_cast<int>(idx / n);
    const int my = g.dim == 1 ? 0 : static_cast<int>(idx % n);
    const double kx = g.wavenumber(mx);
    const double ky = g.dim == 2 ? g.wavenumber(my) : 0.0;
    const cplx gain = std::polar(1.0, -0.5 * s * (kx * kx + ky * ky)) - 1.0;
    return std::norm(gain) * std::norm(p[idx] * inv);
  });
  return std::sqrt(vol * total);
}

double layer_error_physical(const LinearWkbProfile& profile, const GridSpec& grid, double t)
{
  PhysParams p;
  p.eps = profile.eps;
  WaveField u0 = initial_data(p, profile.a0, grid);
  WaveField u = free_propagate(u0, profile.eps, t);
  WaveField v = wkb_linear(profile, grid, t);
  return spectral::l2_distance(u, v);
}

LayerErrorTable linear_layer_error(const std::vector<double>& eps_list,
                                   const std::vector<double>& t_list,
                                   const std::function<cplx(const Vec2&)>& a0,
                                   const GridSpec& grid, double fixed_layer, double fixed_eps)
{
  for (double t : t_list)
    if (!(t < 1.0)) throw std::invalid_argument("linear_layer_error: all t must be < 1");
  WaveField a0_field = sample(grid, a0);
  if (boundary_max_abs(a0_field) > 1e-8)
    throw std::runtime_error("linear_layer_error: a0 does not decay at the box edge");

  LayerErrorTable out;
  out.fixed_layer = fixed_layer;
  out.fixed_eps = fixed_eps;
  std::vector<double> fe_x, fe_y, fl_x, fl_y;
  for (double eps : eps_list) {
    for (double t : t_list) {
      const double err = layer_error(a0_field, eps, t);
      out.rows.push_back({eps, t, err});
      const double layer = 1.0 - t;
      if (std::abs(layer - fixed_layer) < 1e-12) {
        fe_x.push_back(eps);
        fe_y.push_back(err);
      }
      if (std::abs(eps - fixed_eps) < 1e-15) {
        fl_x.push_back(layer);
        fl_y.push_back(err);
      }
    }
  }
  if (fe_x.size() >= 2) out.fit_eps = fit::loglog_fit(fe_x, fe_y);
  if (fl_x.size() >= 2) out.fit_layer = fit::loglog_fit(fl_x, fl_y);
  return out;
}

AmplitudeBoundScan amplitude_bound_scan(const std::vector<double>& eps_list,
                                        const std::function<cplx(const Vec2&)>& a0,
                                        const GridSpec& grid)
{
  AmplitudeBoundScan scan;
  scan.eps_used = eps_list;
  const double nhalf = 0.5 * grid.dim;

  auto ratio = [&](const WaveField& u0, double eps, double t) {
    WaveField u = free_propagate(u0, eps, t);
    const double sup = sup_abs(u);
    return sup * std::pow(eps + std::abs(t - 1.0), nhalf);
  };

  // Training grid: global sweep plus layer-scaled points around the focus.
  const double coarse[] = {0.0, 0.25, 0.5, 0.75, 0.9, 1.1, 1.25, 1.5};
  const double layers[] = {-4.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 4.0};
  PhysParams pp;
  double cmax = 0.0, vmax = 0.0;
  for (double eps : eps_list) {
    pp.eps = eps;
    WaveField u0 = initial_data(pp, a0, grid);
    std::vector<double> train(std::begin(coarse), std::end(coarse));
    for (double lam : layers) train.push_back(1.0 + lam * eps);
    std::vector<double> validate;
    for (std::size_t i = 0; i + 1 < train.size(); ++i)
      validate.push_back(0.5 * (train[i] + train[i + 1]));
    for (double lam : {-3.0, -1.5, 1.5, 3.0}) validate.push_back(1.0 + lam * eps);

    for (double t : train) cmax = std::max(cmax, ratio(u0, eps, t));
    scan.t_train = train;
    scan.t_validate = validate;
    for (double t : validate) vmax = std::max(vmax, ratio(u0, eps, t));
  }
  scan.C_fit = cmax;
  scan.worst_validation = vmax;
  return scan;
}

}  // namespace nlslab::linear
