// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0

#include "nlslab/conformal.hpp"

#include <cmath>
#include <stdexcept>

#include "nlslab/kernels.hpp"
#include "nlslab/solver.hpp"
#include "nlslab/spectral.hpp"

namespace nlslab::conformal {

namespace {

void require_dim(const GridSpec& g, const PhysParams& p, const char* who)
{
  if (g.dim != p.n_dim)
    throw std::invalid_argument(std::string(who) + ": grid dimension must equal n");
}

}  // namespace

WaveField to_conformal(const WaveField& u, const PhysParams& p, double t)
{
  if (!(t < 1.0)) throw std::invalid_argument("to_conformal: requires t < 1");
  if (u.tag != Formulation::physical_u)
    throw std::invalid_argument("to_conformal: field must be tagged physical_u");
  require_dim(u.grid, p, "to_conformal");

  const double om = 1.0 - t;
  const double tau = std::pow(p.eps, p.gamma) / om;
  const double amp = std::pow(om, 0.5 * u.grid.dim);
  const double chirp = 0.5 / (p.eps * om);  // +|x|^2/(2 eps (1-t)) removes the phase

  WaveField psi = make_wave(make_grid(u.grid.dim, u.grid.points_per_axis, u.grid.half_width / om),
                            Formulation::conformal_psi);
  psi.time_stamp = tau;
  const GridSpec xg = u.grid;  // chirp is evaluated at the physical coordinates
  const cplx* src = u.values.data();
  cplx* dst = psi.values.data();
  kernels::parallel_for(xg.size(), [=](std::int64_t i) {
    const Vec2 x = node_position(xg, i);
    const double xsq = x[0] * x[0] + x[1] * x[1];
    dst[i] = amp * src[i] * std::polar(1.0, chirp * xsq);
  });
  return psi;
}

WaveField from_conformal(const WaveField& psi, const PhysParams& p)
{
  if (psi.tag != Formulation::conformal_psi)
    throw std::invalid_argument("from_conformal: field must be tagged conformal_psi");
  require_dim(psi.grid, p, "from_conformal");
  const double tau = psi.time_stamp;
  if (!(tau > 0.0)) throw std::invalid_argument("from_conformal: conformal time must be positive");

  const double om = std::pow(p.eps, p.gamma) / tau;
  const double t = 1.0 - om;
  const double amp = std::pow(om, -0.5 * psi.grid.dim);
  const double chirp = -0.5 / (p.eps * om);

  WaveField u = make_wave(
      make_grid(psi.grid.dim, psi.grid.points_per_axis, psi.grid.half_width * om),
      Formulation::physical_u);
  u.time_stamp = t;
  const GridSpec xg = u.grid;
  const cplx* src = psi.values.data();
  cplx* dst = u.values.data();
  kernels::parallel_for(xg.size(), [=](std::int64_t i) {
    const Vec2 x = node_position(xg, i);
    const double xsq = x[0] * x[0] + x[1] * x[1];
    dst[i] = amp * src[i] * std::polar(1.0, chirp * xsq);
  });
  return u;
}

WaveField to_rescaled(const WaveField& u, const PhysParams& p, double t)
{
  if (u.tag != Formulation::physical_u)
    throw std::invalid_argument("to_rescaled: field must be tagged physical_u");
  require_dim(u.grid, p, "to_rescaled");
  const double eg = std::pow(p.eps, p.gamma);
  const double amp = std::pow(p.eps, 0.5 * p.k);

  WaveField phi = make_wave(make_grid(u.grid.dim, u.grid.points_per_axis, u.grid.half_width / eg),
                            Formulation::rescaled_phi);
  phi.time_stamp = (t - 1.0) / eg;
  const cplx* src = u.values.data();
  cplx* dst = phi.values.data();
  kernels::parallel_for(u.grid.size(), [=](std::int64_t i) { dst[i] = amp * src[i]; });
  return phi;
}

WaveField from_rescaled(const WaveField& phi, const PhysParams& p)
{
  if (phi.tag != Formulation::rescaled_phi)
    throw std::invalid_argument("from_rescaled: field must be tagged rescaled_phi");
  require_dim(phi.grid, p, "from_rescaled");
  const double eg = std::pow(p.eps, p.gamma);
  const double amp = std::pow(p.eps, -0.5 * p.k);

  WaveField u = make_wave(make_grid(phi.grid.dim, phi.grid.points_per_axis, phi.grid.half_width * eg),
                          Formulation::physical_u);
  u.time_stamp = 1.0 + phi.time_stamp * eg;
  const cplx* src = phi.values.data();
  cplx* dst = u.values.data();
  kernels::parallel_for(phi.grid.size(), [=](std::int64_t i) { dst[i] = amp * src[i]; });
  return u;
}

WaveField conformal_to_rescaled(const WaveField& psi, const PhysParams& p)
{
  if (psi.tag != Formulation::conformal_psi)
    throw std::invalid_argument("conformal_to_rescaled: field must be tagged conformal_psi");
  require_dim(psi.grid, p, "conformal_to_rescaled");
  const double tau = psi.time_stamp;
  if (!(tau > 0.0))
    throw std::invalid_argument("conformal_to_rescaled: conformal time must be positive");
  const double s = -1.0 / tau;
  const double amp = std::pow(tau, 0.5 * psi.grid.dim);  // (-1/s)^{n/2}

  WaveField phi = make_wave(
      make_grid(psi.grid.dim, psi.grid.points_per_axis, psi.grid.half_width / tau),
      Formulation::rescaled_phi);
  phi.time_stamp = s;
  const GridSpec yg = phi.grid;
  const double chirp = 0.5 / (p.hbar * s);  // |y|^2/(2 hbar s), s < 0
  const cplx* src = psi.values.data();
  cplx* dst = phi.values.data();
  kernels::parallel_for(yg.size(), [=](std::int64_t i) {
    const Vec2 y = node_position(yg, i);
    const double ysq = y[0] * y[0] + y[1] * y[1];
    dst[i] = amp * src[i] * std::polar(1.0, chirp * ysq);
  });
  return phi;
}

CrossCheckReport cross_check_formulations(const PhysParams& p, const Nonlinearity& nl,
                                          const std::function<cplx(const Vec2&)>& a0,
                                          const GridSpec& grid, double t_check,
                                          double dt_physical, double dt_conformal)
{
  const double eg = std::pow(p.eps, p.gamma);
  if (!(t_check < 1.0 - eg / 2.0))
    throw std::invalid_argument("cross_check: t_check must stay below 1 - eps^gamma/2");

  WaveField u0 = initial_data(p, a0, grid);

  EvolutionSpec phys;
  phys.formulation = Formulation::physical_u;
  phys.params = p;
  phys.nl = nl;
  phys.t_start = 0.0;
  phys.t_end = t_check;
  phys.dt = dt_physical;
  EstimatedSolution u = evolve_estimated(phys, u0);

  WaveField psi0 = to_conformal(u0, p, 0.0);
  EvolutionSpec conf;
  conf.formulation = Formulation::conformal_psi;
  conf.params = p;
  conf.nl = nl;
  conf.t_start = psi0.time_stamp;  // eps^gamma
  conf.t_end = eg / (1.0 - t_check);
  conf.dt = dt_conformal;
  EstimatedSolution psi = evolve_estimated(conf, psi0);

  WaveField u_via_conf = from_conformal(psi.field, p);
  // One resampling, at the comparison step: the physical solution evaluated
  // on the contracted grid of the mapped conformal run.
  WaveField u_resampled = spectral::resample_scaled(u.field, u_via_conf.grid, 1.0);

  CrossCheckReport rep;
  rep.discrepancy = spectral::l2_distance(u_resampled, u_via_conf);
  rep.bound_physical = u.err_estimate;
  rep.bound_conformal = psi.err_estimate;
  rep.tolerance = 2.0 * (rep.bound_physical + rep.bound_conformal) + 1e-11;
  rep.pass = rep.discrepancy <= rep.tolerance;
  return rep;
}

}  // namespace nlslab::conformal
