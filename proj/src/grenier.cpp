// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0

#include "nlslab/grenier.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nlslab/kernels.hpp"
#include "nlslab/solver.hpp"
#include "nlslab/spectral.hpp"

namespace nlslab::grenier {

namespace {

using Vec = std::vector<cplx>;

struct Fields {
  RealField phi;
  Vec a;
};

WaveField wrap(const GridSpec& g, const Vec& a, double t)
{
  WaveField w;
  w.grid = g;
  w.values = a;
  w.time_stamp = t;
  w.tag = Formulation::auxiliary;
  return w;
}

// Right-hand side of the phase/amplitude system at absolute time t:
//   d phi = -1/2 |grad phi|^2 - t^{-2} f(t^n |a|^2)
//   d a   = -grad phi . grad a - (a/2) lap phi + i (hbar/2) lap a
Fields hydro_rhs(const Fields& s, const GridSpec& g, const PhysParams& p,
                 const Nonlinearity& nl, double t, double hbar, bool dealias,
                 double time_offset)
{
  const double t_abs = t + time_offset;
  const auto grad_phi = spectral::gradient(s.phi);
  const RealField lap_phi = spectral::laplacian(s.phi);
  WaveField aw = wrap(g, s.a, t);
  const auto grad_a = spectral::gradient(aw);
  const WaveField lap_a = spectral::laplacian(aw);

  Fields out;
  out.phi = make_real(g);
  out.a.assign(s.a.size(), cplx{0.0, 0.0});

  // Nonlinear parts, assembled then low-passed.
  RealField nl_phi = make_real(g);
  {
    double* dst = nl_phi.values.data();
    const cplx* av = s.a.data();
    const int n_dim = p.n_dim;
    for (int d = 0; d < g.dim; ++d) {
      const double* gp = grad_phi[static_cast<std::size_t>(d)].values.data();
      kernels::parallel_for(g.size(), [=](std::int64_t i) { dst[i] += 0.5 * gp[i] * gp[i]; });
    }
    kernels::parallel_for(g.size(), [&, dst, av](std::int64_t i) {
      dst[i] += singular_coef(nl, n_dim, t_abs, std::norm(av[i]));
    });
  }
  Vec nl_a(s.a.size(), cplx{0.0, 0.0});
  {
    cplx* dst = nl_a.data();
    const cplx* av = s.a.data();
    const double* lp = lap_phi.values.data();
    for (int d = 0; d < g.dim; ++d) {
      const double* gp = grad_phi[static_cast<std::size_t>(d)].values.data();
      const cplx* ga = grad_a[static_cast<std::size_t>(d)].values.data();
      kernels::parallel_for(g.size(), [=](std::int64_t i) { dst[i] += gp[i] * ga[i]; });
    }
    kernels::parallel_for(g.size(), [=](std::int64_t i) { dst[i] += 0.5 * av[i] * lp[i]; });
  }
  if (dealias) {
    spectral::dealias_inplace(nl_phi);
    WaveField tmp = wrap(g, nl_a, t);
    spectral::dealias_inplace(tmp);
    nl_a = std::move(tmp.values);
  }

  double* dphi = out.phi.values.data();
  const double* np = nl_phi.values.data();
  kernels::parallel_for(g.size(), [=](std::int64_t i) { dphi[i] = -np[i]; });
  cplx* da = out.a.data();
  const cplx* na = nl_a.data();
  const cplx* la = lap_a.values.data();
  const cplx ih{0.0, 0.5 * hbar};
  kernels::parallel_for(g.size(), [=](std::int64_t i) { da[i] = -na[i] + ih * la[i]; });
  return out;
}

double grad_velocity_sup(const RealField& phi)
{
  const auto v = spectral::gradient(phi);
  double sup = 0.0;
  for (const auto& comp : v) {
    const auto dv = spectral::gradient(comp);
    for (const auto& d : dv) sup = std::max(sup, sup_abs(d));
  }
  return sup;
}

HydroTrajectory integrate_hydro(const std::function<cplx(const Vec2&)>& a0,
                                const PhysParams& p, const Nonlinearity& nl,
                                const GridSpec& grid, double t_start, double t_end,
                                double hbar, const HydroOptions& opt)
{
  if (!(opt.dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
  if (!(t_end > t_start)) throw std::invalid_argument("integrate: t_end must exceed t_start");
  if (p.n_dim < 2 && !(t_start + opt.time_offset > 0.0))
    throw std::invalid_argument("integrate: n = 1 requires a positive start time");

  WaveField a0f = sample(grid, a0);
  Fields s;
  s.phi = make_real(grid);
  s.a = a0f.values;

  HydroTrajectory traj;
  double t = t_start;
  std::int64_t step = 0;

  auto snapshot = [&](double tnow) {
    HydroState st;
    st.phi = s.phi;
    st.a = s.a;
    st.time = tnow;
    st.hbar = hbar;
    traj.snapshots.push_back(std::move(st));
  };
  auto monitor = [&](double tnow) {
    const double sup = grad_velocity_sup(s.phi);
    if (!std::isfinite(sup) || sup > opt.grad_blowup)
      throw LifespanAbort("integrate: velocity gradient blowup, approaching the lifespan",
                          tnow - opt.dt);
  };

  const double t_tol = 1e-12 * std::max(1.0, std::abs(t_end));
  std::size_t next_rec = 0;
  const auto& recs = opt.record_times;
  while (next_rec < recs.size() && recs[next_rec] <= t + t_tol) {
    snapshot(t);
    ++next_rec;
  }

  auto rk4_step = [&](double tnow, double h) {
    const Fields k1 = hydro_rhs(s, grid, p, nl, tnow, hbar, opt.dealias, opt.time_offset);
    Fields mid = s;
    auto axpy = [&](Fields& dst, const Fields& base, const Fields& k, double c) {
      const std::int64_t n = grid.size();
      double* dp = dst.phi.values.data();
      const double* bp = base.phi.values.data();
      const double* kp = k.phi.values.data();
      kernels::parallel_for(n, [=](std::int64_t i) { dp[i] = bp[i] + c * kp[i]; });
      cplx* da = dst.a.data();
      const cplx* ba = base.a.data();
      const cplx* ka = k.a.data();
      kernels::parallel_for(n, [=](std::int64_t i) { da[i] = ba[i] + c * ka[i]; });
    };
    axpy(mid, s, k1, 0.5 * h);
    const Fields k2 =
        hydro_rhs(mid, grid, p, nl, tnow + 0.5 * h, hbar, opt.dealias, opt.time_offset);
    axpy(mid, s, k2, 0.5 * h);
    const Fields k3 =
        hydro_rhs(mid, grid, p, nl, tnow + 0.5 * h, hbar, opt.dealias, opt.time_offset);
    axpy(mid, s, k3, h);
    const Fields k4 = hydro_rhs(mid, grid, p, nl, tnow + h, hbar, opt.dealias, opt.time_offset);
    const std::int64_t n = grid.size();
    const double c = h / 6.0;
    double* dp = s.phi.values.data();
    const double* k1p = k1.phi.values.data();
    const double* k2p = k2.phi.values.data();
    const double* k3p = k3.phi.values.data();
    const double* k4p = k4.phi.values.data();
    kernels::parallel_for(
        n, [=](std::int64_t i) { dp[i] += c * (k1p[i] + 2.0 * k2p[i] + 2.0 * k3p[i] + k4p[i]); });
    cplx* da = s.a.data();
    const cplx* k1a = k1.a.data();
    const cplx* k2a = k2.a.data();
    const cplx* k3a = k3.a.data();
    const cplx* k4a = k4.a.data();
    kernels::parallel_for(
        n, [=](std::int64_t i) { da[i] += c * (k1a[i] + 2.0 * k2a[i] + 2.0 * k3a[i] + k4a[i]); });
  };

  while (t < t_end - t_tol) {
    const double target = next_rec < recs.size() ? recs[next_rec] : t_end;
    double h = std::min(opt.dt, target - t);
    if (h <= 0.0) h = opt.dt;
    rk4_step(t, h);
    ++step;
    t += h;
    monitor(t);
    while (next_rec < recs.size() && recs[next_rec] <= t + t_tol) {
      snapshot(t);
      ++next_rec;
    }
  }
  traj.steps = step;
  if (traj.snapshots.empty() || traj.snapshots.back().time < t - t_tol) snapshot(t);
  return traj;
}

}  // namespace

HydroTrajectory integrate_exact(const std::function<cplx(const Vec2&)>& a0, const PhysParams& p,
                                const Nonlinearity& nl, const GridSpec& grid, double t_end,
                                const HydroOptions& opt)
{
  return integrate_hydro(a0, p, nl, grid, p.t0, t_end, p.hbar, opt);
}

HydroTrajectory integrate_limit(const std::function<cplx(const Vec2&)>& a0, const PhysParams& p,
                                const Nonlinearity& nl, const GridSpec& grid, double t_end,
                                const HydroOptions& opt)
{
  if (p.n_dim < 2)
    throw std::invalid_argument("integrate_limit: n >= 2 required (singular coefficient at 0)");
  return integrate_hydro(a0, p, nl, grid, 0.0, t_end, 0.0, opt);
}

HydroTrajectory integrate_shifted(const std::function<cplx(const Vec2&)>& a0, const PhysParams& p,
                                  const Nonlinearity& nl, const GridSpec& grid, double t_end_rel,
                                  const HydroOptions& opt)
{
  if (!(opt.time_offset > 0.0))
    throw std::invalid_argument("integrate_shifted: positive time offset required");
  return integrate_hydro(a0, p, nl, grid, 0.0, t_end_rel, p.hbar, opt);
}

std::vector<VelocityState> integrate_velocity_form(const std::function<cplx(const Vec2&)>& a0,
                                                   const PhysParams& p, const Nonlinearity& nl,
                                                   const GridSpec& grid, double t_end,
                                                   const HydroOptions& opt)
{
  const double t_start = p.t0;
  if (!(t_end > t_start)) throw std::invalid_argument("integrate: t_end must exceed t_start");
  WaveField a0f = sample(grid, a0);

  struct VState {
    std::vector<RealField> v;
    Vec a;
  };
  VState s;
  for (int d = 0; d < grid.dim; ++d) s.v.push_back(make_real(grid));
  s.a = a0f.values;

  auto rhs = [&](const VState& st, double t) {
    VState out;
    WaveField aw = wrap(grid, st.a, t);
    const auto grad_a = spectral::gradient(aw);
    // div v and grad of each v component
    RealField div_v = make_real(grid);
    std::vector<std::vector<RealField>> grad_v;
    for (int d = 0; d < grid.dim; ++d) {
      grad_v.push_back(spectral::gradient(st.v[static_cast<std::size_t>(d)]));
      const double* dd = grad_v.back()[static_cast<std::size_t>(d)].values.data();
      double* dv = div_v.values.data();
      kernels::parallel_for(grid.size(), [=](std::int64_t i) { dv[i] += dd[i]; });
    }
    const WaveField lap_a = spectral::laplacian(aw);
    const double tc = std::pow(t, p.n_dim - 2);
    const double tn = std::pow(t, p.n_dim);

    for (int d = 0; d < grid.dim; ++d) {
      RealField dv = make_real(grid);
      double* dst = dv.values.data();
      // -(v . grad) v_d
      for (int e = 0; e < grid.dim; ++e) {
        const double* ve = st.v[static_cast<std::size_t>(e)].values.data();
        const double* gvd = grad_v[static_cast<std::size_t>(d)][static_cast<std::size_t>(e)].values.data();
        kernels::parallel_for(grid.size(), [=](std::int64_t i) { dst[i] -= ve[i] * gvd[i]; });
      }
      // -2 t^{n-2} f'(t^n |a|^2) Re(conj(a) da/dx_d)
      const cplx* av = st.a.data();
      const cplx* ga = grad_a[static_cast<std::size_t>(d)].values.data();
      kernels::parallel_for(grid.size(), [&, dst, av, ga](std::int64_t i) {
        const double fp = nl.f_prime(tn * std::norm(av[i]));
        dst[i] -= 2.0 * tc * fp * (std::conj(av[i]) * ga[i]).real();
      });
      if (opt.dealias) spectral::dealias_inplace(dv);
      out.v.push_back(std::move(dv));
    }
    Vec da(st.a.size(), cplx{0.0, 0.0});
    cplx* dst = da.data();
    const cplx* av = st.a.data();
    const double* dv = div_v.values.data();
    for (int e = 0; e < grid.dim; ++e) {
      const double* ve = st.v[static_cast<std::size_t>(e)].values.data();
      const cplx* ga = grad_a[static_cast<std::size_t>(e)].values.data();
      kernels::parallel_for(grid.size(), [=](std::int64_t i) { dst[i] -= ve[i] * ga[i]; });
    }
    kernels::parallel_for(grid.size(), [=](std::int64_t i) { dst[i] -= 0.5 * av[i] * dv[i]; });
    if (opt.dealias) {
      WaveField tmp = wrap(grid, da, t);
      spectral::dealias_inplace(tmp);
      da = std::move(tmp.values);
    }
    const cplx* la = lap_a.values.data();
    const cplx ih{0.0, 0.5 * p.hbar};
    kernels::parallel_for(grid.size(), [=](std::int64_t i) { dst[i] += ih * la[i]; });
    out.a = std::move(da);
    return out;
  };

  auto axpy = [&](VState& dst, const VState& base, const VState& k, double c) {
    for (int d = 0; d < grid.dim; ++d) {
      double* dp = dst.v[static_cast<std::size_t>(d)].values.data();
      const double* bp = base.v[static_cast<std::size_t>(d)].values.data();
      const double* kp = k.v[static_cast<std::size_t>(d)].values.data();
      kernels::parallel_for(grid.size(), [=](std::int64_t i) { dp[i] = bp[i] + c * kp[i]; });
    }
    cplx* da = dst.a.data();
    const cplx* ba = base.a.data();
    const cplx* ka = k.a.data();
    kernels::parallel_for(grid.size(), [=](std::int64_t i) { da[i] = ba[i] + c * ka[i]; });
  };

  std::vector<VelocityState> out;
  double t = t_start;
  const double t_tol = 1e-12;
  std::size_t next_rec = 0;
  const auto& recs = opt.record_times;
  auto snapshot = [&](double tnow) {
    VelocityState vs;
    vs.v = s.v;
    vs.a = s.a;
    vs.grid = grid;
    vs.time = tnow;
    vs.hbar = p.hbar;
    out.push_back(std::move(vs));
  };
  while (next_rec < recs.size() && recs[next_rec] <= t + t_tol) {
    snapshot(t);
    ++next_rec;
  }
  while (t < t_end - t_tol) {
    const double target = next_rec < recs.size() ? recs[next_rec] : t_end;
    double h = std::min(opt.dt, target - t);
    if (h <= 0.0) h = opt.dt;
    const VState k1 = rhs(s, t);
    VState mid = s;
    axpy(mid, s, k1, 0.5 * h);
    const VState k2 = rhs(mid, t + 0.5 * h);
    axpy(mid, s, k2, 0.5 * h);
    const VState k3 = rhs(mid, t + 0.5 * h);
    axpy(mid, s, k3, h);
    const VState k4 = rhs(mid, t + h);
    for (int d = 0; d < grid.dim; ++d) {
      double* dp = s.v[static_cast<std::size_t>(d)].values.data();
      const double* k1p = k1.v[static_cast<std::size_t>(d)].values.data();
      const double* k2p = k2.v[static_cast<std::size_t>(d)].values.data();
      const double* k3p = k3.v[static_cast<std::size_t>(d)].values.data();
      const double* k4p = k4.v[static_cast<std::size_t>(d)].values.data();
      const double c = h / 6.0;
      kernels::parallel_for(grid.size(), [=](std::int64_t i) {
        dp[i] += c * (k1p[i] + 2.0 * k2p[i] + 2.0 * k3p[i] + k4p[i]);
      });
    }
    {
      cplx* da = s.a.data();
      const cplx* k1a = k1.a.data();
      const cplx* k2a = k2.a.data();
      const cplx* k3a = k3.a.data();
      const cplx* k4a = k4.a.data();
      const double c = h / 6.0;
      kernels::parallel_for(grid.size(), [=](std::int64_t i) {
        da[i] += c * (k1a[i] + 2.0 * k2a[i] + 2.0 * k3a[i] + k4a[i]);
      });
    }
    t += h;
    while (next_rec < recs.size() && recs[next_rec] <= t + t_tol) {
      snapshot(t);
      ++next_rec;
    }
  }
  if (out.empty() || out.back().time < t - t_tol) snapshot(t);
  return out;
}

double find_lifespan(const std::function<cplx(const Vec2&)>& a0, const PhysParams& p,
                     const Nonlinearity& nl, const GridSpec& grid, double t_max,
                     const HydroOptions& opt, bool limit_system)
{
  try {
    if (limit_system)
      integrate_limit(a0, p, nl, grid, t_max, opt);
    else
      integrate_exact(a0, p, nl, grid, t_max, opt);
  } catch (const LifespanAbort& ab) {
    return ab.last_good;
  }
  return t_max;
}

WaveField reconstruct_psi(const HydroState& s)
{
  if (!(s.hbar > 0.0)) throw std::invalid_argument("reconstruct_psi: requires hbar > 0");
  WaveField psi = make_wave(s.phi.grid, Formulation::conformal_psi);
  psi.time_stamp = s.time;
  const double inv_h = 1.0 / s.hbar;
  const cplx* av = s.a.data();
  const double* pv = s.phi.values.data();
  cplx* dst = psi.values.data();
  kernels::parallel_for(s.phi.grid.size(),
                        [=](std::int64_t i) { dst[i] = av[i] * std::polar(1.0, pv[i] * inv_h); });
  return psi;
}

double mass(const HydroState& s)
{
  WaveField w = wrap(s.phi.grid, s.a, s.time);
  return spectral::l2(w);
}

ConvergenceReport convergence_study(const std::vector<double>& hbars, double k, int n_dim,
                                    const Nonlinearity& nl,
                                    const std::function<cplx(const Vec2&)>& a0,
                                    const GridSpec& grid, int time_samples)
{
  if (hbars.size() < 3) throw std::invalid_argument("convergence_study: need >= 3 hbar values");
  for (std::size_t i = 1; i < hbars.size(); ++i)
    if (!(hbars[i] < hbars[i - 1]))
      throw std::invalid_argument("convergence_study: hbar list must be decreasing");

  ConvergenceReport rep;
  const PhysParams p0 = params_from_hbar(hbars.front(), k, n_dim, 1);
  const double gamma = p0.gamma;
  rep.predicted_exponent = std::min(1.0, gamma * (n_dim - 1) / (1.0 - gamma));

  // Lifespan from the coarsest-hbar exact flow and from the limit flow.
  HydroOptions probe;
  probe.dt = 2e-3;
  const double t_probe_max = 1.5;
  const double T_exact = find_lifespan(a0, p0, nl, grid, t_probe_max, probe, false);
  const double T_limit = find_lifespan(a0, p0, nl, grid, t_probe_max, probe, true);
  const double T = 0.8 * std::min(T_exact, T_limit);
  rep.T_used = T;

  // Per-hbar sample times t0^h + uniform grid up to T; the limit flow records
  // the union of all of them.
  std::vector<std::vector<double>> times(hbars.size());
  std::vector<double> all_times;
  for (std::size_t h = 0; h < hbars.size(); ++h) {
    const PhysParams p = params_from_hbar(hbars[h], k, n_dim, 1);
    for (int i = 0; i <= time_samples; ++i) {
      const double t = p.t0 + (T - p.t0) * i / time_samples;
      times[h].push_back(t);
      all_times.push_back(t);
    }
  }
  std::sort(all_times.begin(), all_times.end());
  all_times.erase(std::unique(all_times.begin(), all_times.end(),
                              [](double a, double b) { return std::abs(a - b) < 1e-13; }),
                  all_times.end());

  HydroOptions lim_opt;
  lim_opt.dt = 1e-3;
  lim_opt.record_times = all_times;
  const PhysParams p_lim = params_from_hbar(hbars.front(), k, n_dim, 1);
  HydroTrajectory lim = integrate_limit(a0, p_lim, nl, grid, T, lim_opt);

  auto limit_at = [&](double t) -> const HydroState& {
    for (const auto& s : lim.snapshots)
      if (std::abs(s.time - t) < 1e-10) return s;
    throw std::logic_error("convergence_study: missing limit snapshot");
  };

  std::vector<double> err_h0_total, err_h1_a;
  for (std::size_t h = 0; h < hbars.size(); ++h) {
    const PhysParams p = params_from_hbar(hbars[h], k, n_dim, 1);
    HydroOptions opt;
    opt.dt = std::min(1e-3, 2.0 / (p.hbar * 2.0 * std::pow(std::numbers::pi *
                        grid.points_per_axis / (2.0 * grid.half_width), 2) * grid.dim));
    opt.record_times = times[h];
    HydroTrajectory ex = integrate_exact(a0, p, nl, grid, T, opt);

    double sup_a[3] = {0, 0, 0}, sup_phi[3] = {0, 0, 0};
    for (const auto& s : ex.snapshots) {
      const HydroState& l = limit_at(s.time);
      WaveField da = wrap(grid, s.a, s.time);
      for (std::size_t i = 0; i < da.values.size(); ++i) da.values[i] -= l.a[i];
      RealField dphi = s.phi;
      for (std::size_t i = 0; i < dphi.values.size(); ++i) dphi.values[i] -= l.phi.values[i];
      for (int sb = 0; sb <= 2; ++sb) {
        sup_a[sb] = std::max(sup_a[sb], spectral::norm(da, spectral::NormKind::Hs, sb));
        sup_phi[sb] = std::max(sup_phi[sb], spectral::norm(dphi, spectral::NormKind::Hs, sb));
      }
    }
    for (int sb = 0; sb <= 2; ++sb)
      rep.rows.push_back({hbars[h], sb, sup_a[sb], sup_phi[sb]});
    err_h0_total.push_back(sup_a[0] + sup_phi[0]);
    err_h1_a.push_back(sup_a[1] + sup_phi[1]);
  }

  rep.monotone_h0 = true;
  rep.monotone_h1 = true;
  for (std::size_t i = 1; i < hbars.size(); ++i) {
    if (!(err_h0_total[i] < err_h0_total[i - 1])) rep.monotone_h0 = false;
    if (!(err_h1_a[i] < err_h1_a[i - 1])) rep.monotone_h1 = false;
  }
  rep.fit_h0 = fit::loglog_fit(hbars, err_h0_total);
  return rep;
}

namespace {

// Cyclic Jacobi eigenvalue iteration for small dense symmetric matrices.
double min_eigenvalue_sym(std::vector<double> m, int n)
{
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += m[static_cast<std::size_t>(i * n + j)] * m[static_cast<std::size_t>(i * n + j)];
    if (off < 1e-30) break;
    for (int pq = 0; pq < n; ++pq) {
      for (int q = pq + 1; q < n; ++q) {
        const int p = pq;
        const double apq = m[static_cast<std::size_t>(p * n + q)];
        if (std::abs(apq) < 1e-300) continue;
        const double app = m[static_cast<std::size_t>(p * n + p)];
        const double aqq = m[static_cast<std::size_t>(q * n + q)];
        const double theta = 0.5 * (aqq - app) / apq;
        const double tsign = theta >= 0 ? 1.0 : -1.0;
        const double t = tsign / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int r = 0; r < n; ++r) {
          const double mrp = m[static_cast<std::size_t>(r * n + p)];
          const double mrq = m[static_cast<std::size_t>(r * n + q)];
          m[static_cast<std::size_t>(r * n + p)] = c * mrp - s * mrq;
          m[static_cast<std::size_t>(r * n + q)] = s * mrp + c * mrq;
        }
        for (int r = 0; r < n; ++r) {
          const double mpr = m[static_cast<std::size_t>(p * n + r)];
          const double mqr = m[static_cast<std::size_t>(q * n + r)];
          m[static_cast<std::size_t>(p * n + r)] = c * mpr - s * mqr;
          m[static_cast<std::size_t>(q * n + r)] = s * mpr + c * mqr;
        }
      }
    }
  }
  double mn = m[0];
  for (int i = 1; i < n; ++i) mn = std::min(mn, m[static_cast<std::size_t>(i * n + i)]);
  return mn;
}

}  // namespace

SymmetrizerReport symmetrizer_check(const HydroState& state, const PhysParams& p,
                                    const Nonlinearity& nl, int nsamples, bool seedless)
{
  const GridSpec& g = state.phi.grid;
  const int dim = g.dim;
  const int n = dim + 2;
  const auto v_fields = spectral::gradient(state.phi);
  const double t_abs = state.time;
  const double c_t = std::pow(t_abs, p.n_dim - 2);
  const double tn = std::pow(t_abs, p.n_dim);

  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  SymmetrizerReport rep;
  rep.samples = nsamples;
  for (int sample = 0; sample < nsamples; ++sample) {
    std::int64_t idx;
    double angle;
    if (seedless) {
      idx = (g.size() / nsamples) * sample;
      angle = 2.0 * std::numbers::pi * sample / nsamples;
    } else {
      idx = static_cast<std::int64_t>(unif(rng) * static_cast<double>(g.size() - 1));
      angle = 2.0 * std::numbers::pi * unif(rng);
    }
    const cplx a = state.a[static_cast<std::size_t>(idx)];
    const double are = a.real(), aim = a.imag();
    double xi[2] = {std::cos(angle), std::sin(angle)};
    if (dim == 1) {
      xi[0] = sample % 2 == 0 ? 1.0 : -1.0;
      xi[1] = 0.0;
    }
    double vel[2] = {0.0, 0.0};
    for (int d = 0; d < dim; ++d)
      vel[d] = v_fields[static_cast<std::size_t>(d)].values[static_cast<std::size_t>(idx)];
    const double vxi = vel[0] * xi[0] + vel[1] * xi[1];
    const double fp = nl.f_prime(tn * std::norm(a));

    // A(u, xi) in the (a_re, a_im, v_1..v_n) ordering.
    std::vector<double> A(static_cast<std::size_t>(n * n), 0.0);
    auto at = [&](int r, int c) -> double& { return A[static_cast<std::size_t>(r * n + c)]; };
    at(0, 0) = vxi;
    at(1, 1) = vxi;
    for (int l = 0; l < dim; ++l) {
      at(0, 2 + l) = 0.5 * are * xi[l];
      at(1, 2 + l) = 0.5 * aim * xi[l];
      at(2 + l, 0) = 2.0 * c_t * fp * are * xi[l];
      at(2 + l, 1) = 2.0 * c_t * fp * aim * xi[l];
      at(2 + l, 2 + l) = vxi;
    }
    const double s_v = 1.0 / (4.0 * c_t * fp);
    std::vector<double> S(static_cast<std::size_t>(n * n), 0.0);
    S[0] = 1.0;
    S[static_cast<std::size_t>(n + 1)] = 1.0;
    for (int l = 0; l < dim; ++l) S[static_cast<std::size_t>((2 + l) * n + 2 + l)] = s_v;

    std::vector<double> SA(static_cast<std::size_t>(n * n), 0.0);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        for (int m = 0; m < n; ++m)
          SA[static_cast<std::size_t>(r * n + c)] +=
              S[static_cast<std::size_t>(r * n + m)] * A[static_cast<std::size_t>(m * n + c)];
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        rep.max_symmetry_defect =
            std::max(rep.max_symmetry_defect, std::abs(SA[static_cast<std::size_t>(r * n + c)] -
                                                       SA[static_cast<std::size_t>(c * n + r)]));

    const double eig = min_eigenvalue_sym(S, n);
    const double closed = std::min(1.0, s_v);
    if (sample == 0 || eig < rep.min_eig_S) rep.min_eig_S = eig;
    rep.closed_form_gap = std::max(rep.closed_form_gap, std::abs(eig - closed));
  }

  // <S L w, w> = int (-lap w_im) w_re + (lap w_re) w_im for random smooth w;
  // exactly zero in the continuum and at the spectral-discrete level.
  {
    WaveField w = make_wave(g);
    std::vector<cplx> hat(static_cast<std::size_t>(g.size()), cplx{0.0, 0.0});
    const int nax = g.points_per_axis;
    for (int lowx = -6; lowx <= 6; ++lowx) {
      for (int lowy = dim == 2 ? -6 : 0; lowy <= (dim == 2 ? 6 : 0); ++lowy) {
        const int mx = (lowx + nax) % nax;
        const int my = (lowy + nax) % nax;
        const std::int64_t idx = dim == 1 ? mx : static_cast<std::int64_t>(mx) * nax + my;
        double re, im;
        if (seedless) {
          re = std::cos(0.7 * lowx + 1.3 * lowy + 0.2);
          im = std::sin(1.1 * lowx - 0.5 * lowy + 0.4);
        } else {
          re = 2.0 * unif(rng) - 1.0;
          im = 2.0 * unif(rng) - 1.0;
        }
        hat[static_cast<std::size_t>(idx)] = cplx{re, im};
      }
    }
    w.values = hat;
    spectral::inverse_inplace(w.values, g);
    const WaveField lap_w = spectral::laplacian(w);
    const double cell = std::pow(g.spacing(), g.dim);
    const cplx* wv = w.values.data();
    const cplx* lv = lap_w.values.data();
    const double inner = cell * kernels::block_sum(g.size(), [=](std::int64_t i) {
      return -lv[i].imag() * wv[i].real() + lv[i].real() * wv[i].imag();
    });
    const double scale = cell * kernels::block_sum(g.size(), [=](std::int64_t i) {
      return std::abs(lv[i]) * std::abs(wv[i]);
    });
    rep.sl_skew_rel = scale > 0 ? std::abs(inner) / scale : 0.0;
  }
  return rep;
}

}  // namespace nlslab::grenier
