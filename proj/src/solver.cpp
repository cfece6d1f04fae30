// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0

#include "nlslab/solver.hpp"

#include <cmath>
#include <cstdio>

#include "nlslab/kernels.hpp"
#include "nlslab/spectral.hpp"

namespace nlslab {

namespace {

constexpr double kBlowupSup = 1e6;

struct StepContext {
  const EvolutionSpec* spec = nullptr;
  std::vector<double> ksq;  // |k|^2 per flat index
  double kappa = 0.0;       // eps (physical) or hbar (conformal / rescaled)
};

StepContext make_context(const EvolutionSpec& spec, const GridSpec& g)
{
  StepContext ctx;
  ctx.spec = &spec;
  ctx.kappa = spec.formulation == Formulation::physical_u ? spec.params.eps : spec.params.hbar;
  ctx.ksq.resize(static_cast<std::size_t>(g.size()));
  const int n = g.points_per_axis;
  for (std::int64_t idx = 0; idx < g.size(); ++idx) {
    const int mx = g.dim == 1 ? static_cast<int>(idx) : static_cast<int>(idx / n);
    const int my = g.dim == 1 ? 0 : static_cast<int>(idx % n);
    const double kx = g.wavenumber(mx);
    const double ky = g.dim == 2 ? g.wavenumber(my) : 0.0;
    ctx.ksq[static_cast<std::size_t>(idx)] = kx * kx + ky * ky;
  }
  return ctx;
}

// Exact nonlinear phase rotation over [ta, tb]; |u| is invariant, so the
// substep integrates to u *= exp(-i (tb-ta) c(t_mid, |u|^2) / kappa).
void nonlinear_half(WaveField& u, const StepContext& ctx, double ta, double tb)
{
  const EvolutionSpec& spec = *ctx.spec;
  const double h = tb - ta;
  const double tmid = 0.5 * (ta + tb);
  const double inv_kappa = 1.0 / ctx.kappa;
  cplx* v = u.values.data();
  const Nonlinearity& nl = spec.nl;
  switch (spec.formulation) {
    case Formulation::physical_u: {
      const double ek = std::pow(spec.params.eps, spec.params.k);
      kernels::parallel_for(u.grid.size(), [&, v](std::int64_t i) {
        const double theta = -h * inv_kappa * nl.f(ek * std::norm(v[i]));
        v[i] *= std::polar(1.0, theta);
      });
      break;
    }
    case Formulation::conformal_psi: {
      const int n_dim = spec.params.n_dim;
      kernels::parallel_for(u.grid.size(), [&, v](std::int64_t i) {
        const double theta = -h * inv_kappa * singular_coef(nl, n_dim, tmid, std::norm(v[i]));
        v[i] *= std::polar(1.0, theta);
      });
      break;
    }
    case Formulation::rescaled_phi: {
      kernels::parallel_for(u.grid.size(), [&, v](std::int64_t i) {
        const double theta = -h * inv_kappa * nl.f(std::norm(v[i]));
        v[i] *= std::polar(1.0, theta);
      });
      break;
    }
    case Formulation::auxiliary:
      throw std::invalid_argument("evolve: auxiliary fields have no evolution law");
  }
}

void kinetic_full(WaveField& u, const StepContext& ctx, double dt)
{
  spectral::forward_inplace(u.values, u.grid);
  cplx* v = u.values.data();
  const double* ksq = ctx.ksq.data();
  const double c = -0.5 * ctx.kappa * dt;
  kernels::parallel_for(u.grid.size(),
                        [=](std::int64_t i) { v[i] *= std::polar(1.0, c * ksq[i]); });
  spectral::inverse_inplace(u.values, u.grid);
}

void do_step(WaveField& u, const StepContext& ctx, double t, double dt)
{
  nonlinear_half(u, ctx, t, t + 0.5 * dt);
  kinetic_full(u, ctx, dt);
  nonlinear_half(u, ctx, t + 0.5 * dt, t + dt);
}

void validate_spec(const EvolutionSpec& spec)
{
  if (!(spec.dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
  if (!(spec.t_start < spec.t_end)) throw std::invalid_argument("evolve: t_start must precede t_end");
  double prev = spec.t_start;
  for (double r : spec.record_times) {
    if (r < spec.t_start - 1e-12 || r > spec.t_end + 1e-12 || r < prev)
      throw std::invalid_argument("evolve: record_times must be sorted within [t_start, t_end]");
    prev = r;
  }
  if (spec.formulation == Formulation::conformal_psi && spec.params.n_dim == 1 &&
      !(spec.t_start > 0.0))
    throw std::invalid_argument("evolve: conformal runs with n = 1 must start at t > 0");
}

double diag_energy(const WaveField& u, const EvolutionSpec& spec)
{
  switch (spec.formulation) {
    case Formulation::physical_u: return energy(u, spec.params, spec.nl);
    case Formulation::conformal_psi: return energy_conformal(u, spec.params, spec.nl);
    case Formulation::rescaled_phi: return energy_rescaled(u, spec.params, spec.nl);
    case Formulation::auxiliary: break;
  }
  return 0.0;
}

}  // namespace

double singular_coef(const Nonlinearity& nl, int n_dim, double t, double y)
{
  constexpr double t_tiny = 1e-8;
  if (t < t_tiny) {
    if (n_dim < 2) throw std::invalid_argument("singular_coef: t -> 0 requires n >= 2");
    return std::pow(t, n_dim - 2) * y * nl.f_prime(0.0);
  }
  return nl.f(std::pow(t, n_dim) * y) / (t * t);
}

WaveField initial_data(const PhysParams& p, const std::function<cplx(const Vec2&)>& a0,
                       const GridSpec& grid, double decay_tol)
{
  WaveField amp = sample(grid, a0, Formulation::physical_u);
  const double edge = boundary_max_abs(amp);
  if (edge > decay_tol) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "initial_data: |a0| = %.3e at the box edge exceeds %.1e", edge,
                  decay_tol);
    throw std::runtime_error(buf);
  }
  const double half_inv_eps = 0.5 / p.eps;
  cplx* v = amp.values.data();
  const GridSpec g = grid;
  kernels::parallel_for(grid.size(), [=](std::int64_t i) {
    const Vec2 x = node_position(g, i);
    const double xsq = x[0] * x[0] + x[1] * x[1];
    v[i] *= std::polar(1.0, -half_inv_eps * xsq);
  });
  amp.time_stamp = 0.0;
  return amp;
}

void strang_step(WaveField& u, const EvolutionSpec& spec, double t, double dt)
{
  StepContext ctx = make_context(spec, u.grid);
  do_step(u, ctx, t, dt);
  u.time_stamp = t + dt;
}

Trajectory evolve(const EvolutionSpec& spec, const WaveField& init)
{
  validate_spec(spec);
  if (init.tag != spec.formulation)
    throw std::invalid_argument("evolve: initial field tag does not match the formulation");
  if (std::abs(init.time_stamp - spec.t_start) > 1e-12)
    throw std::invalid_argument("evolve: initial time_stamp must equal t_start");

  StepContext ctx = make_context(spec, init.grid);
  WaveField u = init;
  Trajectory traj;
  std::int64_t step = 0;
  double t = spec.t_start;

  auto check_state = [&](double tnow) {
    const double sup = sup_abs(u);
    if (!std::isfinite(sup)) throw SolverAbort("evolve: NaN detected", tnow, step);
    if (sup > kBlowupSup) throw SolverAbort("evolve: blowup suspected (sup-norm > 1e6)", tnow, step);
    return sup;
  };

  auto record = [&](double tnow) {
    const double sup = check_state(tnow);
    if (spec.check_box_decay && boundary_max_abs(u) > spec.box_decay_tol)
      throw SolverAbort("evolve: box-decay check failed at the boundary", tnow, step);
    u.time_stamp = tnow;
    traj.snapshots.push_back(u);
    traj.diagnostics.push_back({tnow, spectral::l2(u), diag_energy(u, spec), sup});
  };

  const double t_tol = 1e-12 * std::max(1.0, std::abs(spec.t_end));
  std::size_t next_rec = 0;
  const auto& recs = spec.record_times;
  while (next_rec < recs.size() && recs[next_rec] <= t + t_tol) {
    record(t);
    ++next_rec;
  }

  while (t < spec.t_end - t_tol) {
    const double target = next_rec < recs.size() ? recs[next_rec] : spec.t_end;
    double h = std::min(spec.dt, target - t);
    if (h <= 0.0) h = spec.dt;
    do_step(u, ctx, t, h);
    ++step;
    t += h;
    check_state(t);
    while (next_rec < recs.size() && recs[next_rec] <= t + t_tol) {
      record(t);
      ++next_rec;
    }
  }
  u.time_stamp = t;
  traj.steps = step;
  // Always expose the final state even when no record time lands on t_end.
  if (traj.snapshots.empty() || traj.snapshots.back().time_stamp < t - t_tol) record(t);
  return traj;
}

RichardsonResult richardson(const EvolutionSpec& spec, const WaveField& init)
{
  auto run = [&](double dt) {
    EvolutionSpec s = spec;
    s.dt = dt;
    s.record_times.clear();
    Trajectory tr = evolve(s, init);
    return tr.snapshots.back();
  };
  const WaveField a = run(spec.dt);
  const WaveField b = run(spec.dt / 2.0);
  const WaveField c = run(spec.dt / 4.0);
  RichardsonResult r;
  r.diff_coarse = spectral::l2_distance(a, b);
  r.diff_fine = spectral::l2_distance(b, c);
  r.ratio = r.diff_fine > 0.0 ? r.diff_coarse / r.diff_fine : 0.0;
  r.err_finest = r.diff_fine / 3.0;
  return r;
}

EstimatedSolution evolve_estimated(const EvolutionSpec& spec, const WaveField& init)
{
  auto run = [&](double dt) {
    EvolutionSpec s = spec;
    s.dt = dt;
    s.record_times.clear();
    Trajectory tr = evolve(s, init);
    return tr.snapshots.back();
  };
  const WaveField coarse = run(spec.dt);
  WaveField fine = run(spec.dt / 2.0);
  const double diff = spectral::l2_distance(coarse, fine);
  return {std::move(fine), diff / 3.0};
}

}  // namespace nlslab
