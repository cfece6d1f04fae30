// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0

#include "nlslab/series.hpp"

#include <cmath>
#include <stdexcept>

#include "nlslab/kernels.hpp"
#include "nlslab/spectral.hpp"

namespace nlslab::series {

SeriesCoeffs compute_coeffs(const std::function<cplx(const Vec2&)>& a0, const PhysParams& p,
                            const Nonlinearity& nl, const GridSpec& grid)
{
  if (p.n_dim < 2) throw std::invalid_argument("compute_coeffs: n >= 2 required");
  const int n = p.n_dim;
  const double fp0 = nl.f_prime(0.0);
  const double fpp0 = nl.f_second(0.0);

  WaveField a0f = sample(grid, a0);
  SeriesCoeffs c;
  c.phi1 = make_real(grid);
  for (std::size_t i = 0; i < a0f.values.size(); ++i)
    c.phi1.values[i] = -fp0 * std::norm(a0f.values[i]) / (n - 1.0);

  const auto grad_phi1 = spectral::gradient(c.phi1);
  const RealField lap_phi1 = spectral::laplacian(c.phi1);
  const auto grad_a0 = spectral::gradient(a0f);

  c.a1 = make_wave(grid, Formulation::auxiliary);
  for (std::size_t i = 0; i < a0f.values.size(); ++i) {
    cplx adv{0.0, 0.0};
    for (int d = 0; d < grid.dim; ++d)
      adv += grad_phi1[static_cast<std::size_t>(d)].values[i] *
             grad_a0[static_cast<std::size_t>(d)].values[i];
    c.a1.values[i] = -(adv + 0.5 * a0f.values[i] * lap_phi1.values[i]) / static_cast<double>(n);
  }

  c.phi2 = make_real(grid);
  for (std::size_t i = 0; i < a0f.values.size(); ++i) {
    double gsq = 0.0;
    for (int d = 0; d < grid.dim; ++d) {
      const double gp = grad_phi1[static_cast<std::size_t>(d)].values[i];
      gsq += gp * gp;
    }
    const double re_cross = (std::conj(a0f.values[i]) * c.a1.values[i]).real();
    const double a0sq = std::norm(a0f.values[i]);
    c.phi2.values[i] =
        -(0.5 * gsq + 2.0 * fp0 * re_cross + 0.5 * fpp0 * a0sq * a0sq) / (2.0 * n - 1.0);
  }
  return c;
}

RemainderOrders series_remainder_order(const std::function<cplx(const Vec2&)>& a0,
                                       const PhysParams& p, const Nonlinearity& nl,
                                       const std::vector<double>& t_samples,
                                       const GridSpec& grid, double dt)
{
  if (t_samples.size() < 4)
    throw std::invalid_argument("series_remainder_order: need at least 4 samples");
  for (std::size_t i = 1; i < t_samples.size(); ++i)
    if (!(t_samples[i] > t_samples[i - 1]))
      throw std::invalid_argument("series_remainder_order: samples must increase");

  const int n = p.n_dim;
  const SeriesCoeffs c = compute_coeffs(a0, p, nl, grid);
  WaveField a0f = sample(grid, a0);

  grenier::HydroOptions opt;
  opt.dt = std::min(dt, t_samples.front() / 50.0);
  opt.record_times = t_samples;
  grenier::HydroTrajectory traj =
      grenier::integrate_limit(a0, p, nl, grid, t_samples.back(), opt);

  RemainderOrders out;
  out.t_samples = t_samples;
  std::vector<double> r1_h0, r1_h1, r2_h0, r2_h1, ra_h0, ra_h1;
  const std::int64_t origin =
      grid.dim == 1 ? grid.points_per_axis / 2
                    : static_cast<std::int64_t>(grid.points_per_axis / 2) *
                              grid.points_per_axis + grid.points_per_axis / 2;

  double phi2_fit_acc = 0.0;
  int phi2_fit_count = 0;
  for (std::size_t si = 0; si < t_samples.size(); ++si) {
    const double t = t_samples[si];
    const grenier::HydroState* snap = nullptr;
    for (const auto& s : traj.snapshots)
      if (std::abs(s.time - t) < 1e-10) snap = &s;
    if (!snap) throw std::logic_error("series_remainder_order: missing snapshot");

    const double tn1 = std::pow(t, n - 1);
    const double tn2 = std::pow(t, 2 * n - 1);
    const double tnn = std::pow(t, n);

    RealField r1 = snap->phi;
    for (std::size_t i = 0; i < r1.values.size(); ++i) r1.values[i] -= tn1 * c.phi1.values[i];
    RealField r2 = r1;
    for (std::size_t i = 0; i < r2.values.size(); ++i) r2.values[i] -= tn2 * c.phi2.values[i];
    WaveField ra = make_wave(grid);
    for (std::size_t i = 0; i < ra.values.size(); ++i)
      ra.values[i] = snap->a[i] - a0f.values[i] - tnn * c.a1.values[i];

    r1_h0.push_back(spectral::norm(r1, spectral::NormKind::Hs, 0));
    r1_h1.push_back(spectral::norm(r1, spectral::NormKind::Hs, 1));
    r2_h0.push_back(spectral::norm(r2, spectral::NormKind::Hs, 0));
    r2_h1.push_back(spectral::norm(r2, spectral::NormKind::Hs, 1));
    ra_h0.push_back(spectral::norm(ra, spectral::NormKind::Hs, 0));
    ra_h1.push_back(spectral::norm(ra, spectral::NormKind::Hs, 1));

    if (si < 2) {
      phi2_fit_acc += r1.values[static_cast<std::size_t>(origin)] / tn2;
      ++phi2_fit_count;
    }
  }
  out.phi_first_h0 = fit::loglog_fit(t_samples, r1_h0);
  out.phi_first_h1 = fit::loglog_fit(t_samples, r1_h1);
  out.phi_second_h0 = fit::loglog_fit(t_samples, r2_h0);
  out.phi_second_h1 = fit::loglog_fit(t_samples, r2_h1);
  out.amp_h0 = fit::loglog_fit(t_samples, ra_h0);
  out.amp_h1 = fit::loglog_fit(t_samples, ra_h1);
  out.phi2_fitted_origin = phi2_fit_acc / phi2_fit_count;
  return out;
}

LimitPhase::LimitPhase(const std::function<cplx(const Vec2&)>& a0, const PhysParams& p,
                       const Nonlinearity& nl, const GridSpec& grid,
                       const std::vector<double>& taus_needed, double dt)
    : grid_(grid), n_dim_(p.n_dim)
{
  coeffs_ = compute_coeffs(a0, p, nl, grid);
  std::vector<double> recs;
  double t_max = 0.0;
  for (double tau : taus_needed) {
    if (tau >= kSeriesSwitch) {
      recs.push_back(tau);
      t_max = std::max(t_max, tau);
    }
  }
  if (t_max > 0.0) {
    grenier::HydroOptions opt;
    opt.dt = dt;
    opt.record_times = recs;
    grenier::HydroTrajectory traj = grenier::integrate_limit(a0, p, nl, grid, t_max, opt);
    records_ = std::move(traj.snapshots);
    t_available_ = t_max;
  } else {
    t_available_ = kSeriesSwitch;
  }
}

RealField LimitPhase::phase_at(double tau) const
{
  if (tau < kSeriesSwitch) {
    RealField out = coeffs_.phi1;
    const double c1 = std::pow(tau, n_dim_ - 1);
    const double c2 = std::pow(tau, 2 * n_dim_ - 1);
    for (std::size_t i = 0; i < out.values.size(); ++i)
      out.values[i] = c1 * coeffs_.phi1.values[i] + c2 * coeffs_.phi2.values[i];
    return out;
  }
  for (const auto& s : records_)
    if (std::abs(s.time - tau) < 1e-10) return s.phi;
  throw std::out_of_range("LimitPhase: conformal time out of integrated range");
}

WaveField theorem_approximant(const std::function<cplx(const Vec2&)>& a0, const PhysParams& p,
                              double t, const GridSpec& phys, const LimitPhase& phase)
{
  if (!(t >= 0.0) || t >= 1.0)
    throw std::invalid_argument("theorem_approximant: requires 0 <= t < 1");
  const double om = 1.0 - t;
  const double tau = std::pow(p.eps, p.gamma) / om;
  const RealField phi_tau = phase.phase_at(tau);
  const RealField phi_x = spectral::resample_scaled(phi_tau, phys, om);

  const double amp = std::pow(om, -0.5 * phys.dim);
  const double chirp = 0.5 / (p.eps * (t - 1.0));
  const double shift_scale = std::pow(p.eps, p.gamma - 1.0);
  WaveField v = make_wave(phys, Formulation::physical_u);
  v.time_stamp = t;
  for (std::int64_t i = 0; i < phys.size(); ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    const Vec2 x = node_position(phys, i);
    const Vec2 xi{x[0] / om, x[1] / om};
    const double xsq = x[0] * x[0] + x[1] * x[1];
    const double theta = chirp * xsq + shift_scale * phi_x.values[u];
    v.values[u] = amp * a0(xi) * std::polar(1.0, theta);
  }
  return v;
}

}  // namespace nlslab::series
