// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nlslab/grenier.hpp"
#include "nlslab/solver.hpp"
#include "nlslab/spectral.hpp"

using namespace nlslab;
namespace gr = nlslab::grenier;
namespace sp = nlslab::spectral;

namespace {

cplx gauss_a0(const Vec2& x) { return cplx{std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1])), 0.0}; }
cplx const_a0(const Vec2&) { return cplx{1.0, 0.0}; }

}  // namespace

TEST_CASE("f = 0 with constant data is a fixed point of the exact system")
{
  const PhysParams p = params_from_hbar(0.1, 1.5, 2, 1);
  const GridSpec g = make_grid(2, 32, 4.0);
  gr::HydroOptions opt;
  opt.dt = 1e-2;
  const auto tr = gr::integrate_exact(const_a0, p, zero_nonlinearity(), g, p.t0 + 0.3, opt);
  const auto& last = tr.snapshots.back();
  CHECK(sup_abs(last.phi) < 1e-13);
  double worst = 0.0;
  for (const auto& a : last.a) worst = std::max(worst, std::abs(a - cplx{1.0, 0.0}));
  CHECK(worst < 1e-13);
}

TEST_CASE("f = 0 limit flow leaves any profile's phase at zero")
{
  const PhysParams p = make_params(1e-2, 1.5, 2, 1);
  const GridSpec g = make_grid(2, 64, 8.0);
  gr::HydroOptions opt;
  opt.dt = 5e-3;
  const auto tr = gr::integrate_limit(gauss_a0, p, zero_nonlinearity(), g, 0.3, opt);
  const auto& last = tr.snapshots.back();
  CHECK(sup_abs(last.phi) < 1e-13);
  const WaveField a0f = sample(g, gauss_a0);
  double worst = 0.0;
  for (std::size_t i = 0; i < last.a.size(); ++i)
    worst = std::max(worst, std::abs(last.a[i] - a0f.values[i]));
  CHECK(worst < 1e-13);
}

TEST_CASE("gradient consistency between the phase and velocity formulations")
{
  const PhysParams p = params_from_hbar(0.1, 1.5, 2, 1);
  const GridSpec g = make_grid(2, 128, 8.0);
  const Nonlinearity nl = builtin_nonlinearity(BuiltinNl::cubic);
  const double T = p.t0 + 0.3;
  gr::HydroOptions opt;
  opt.dt = 1e-3;
  opt.record_times = {T};
  const auto tr = gr::integrate_exact(gauss_a0, p, nl, g, T, opt);
  const auto vr = gr::integrate_velocity_form(gauss_a0, p, nl, g, T, opt);

  const auto grad_phi = sp::gradient(tr.snapshots.back().phi);
  double num = 0.0, den = 0.0;
  for (int d = 0; d < g.dim; ++d) {
    const RealField& vd = vr.back().v[static_cast<std::size_t>(d)];
    num += std::pow(sp::l2_distance(grad_phi[static_cast<std::size_t>(d)], vd), 2);
    den += std::pow(sp::l2(vd), 2);
  }
  CHECK(std::sqrt(num) / std::sqrt(den) < 1e-6);
}

TEST_CASE("amplitude mass is conserved by both flows")
{
  const PhysParams p = params_from_hbar(0.1, 1.5, 2, 1);
  const GridSpec g = make_grid(2, 128, 8.0);
  const Nonlinearity nl = builtin_nonlinearity(BuiltinNl::cubic);
  gr::HydroOptions opt;
  opt.dt = 1e-3;
  const auto ex = gr::integrate_exact(gauss_a0, p, nl, g, p.t0 + 0.3, opt);
  const double m0 = std::sqrt(std::numbers::pi);
  CHECK(std::abs(gr::mass(ex.snapshots.back()) / m0 - 1.0) < 1e-8);

  const auto lim = gr::integrate_limit(gauss_a0, p, nl, g, 0.3, opt);
  CHECK(std::abs(gr::mass(lim.snapshots.back()) / m0 - 1.0) < 1e-8);
}

TEST_CASE("reconstruction: trivial phase, pointwise mass, solver cross-oracle")
{
  const PhysParams p = params_from_hbar(0.05, 1.5, 2, 1);
  const GridSpec g = make_grid(2, 128, 8.0);
  const Nonlinearity nl = builtin_nonlinearity(BuiltinNl::cubic);

  gr::HydroState s;
  s.phi = make_real(g);
  WaveField a0f = sample(g, gauss_a0);
  s.a = a0f.values;
  s.hbar = 0.05;
  s.time = p.t0;
  const WaveField psi = gr::reconstruct_psi(s);
  double worst = 0.0;
  for (std::size_t i = 0; i < psi.values.size(); ++i)
    worst = std::max(worst, std::abs(psi.values[i] - a0f.values[i]));
  CHECK(worst == 0.0);
  s.hbar = 0.0;
  CHECK_THROWS(gr::reconstruct_psi(s));

  // hydro integration vs direct split-step solve of the same equation
  const double T = p.t0 + 0.2;
  gr::HydroOptions opt;
  opt.dt = 5e-4;
  const auto tr = gr::integrate_exact(gauss_a0, p, nl, g, T, opt);
  gr::HydroOptions opt2;
  opt2.dt = 2.5e-4;
  const auto tr2 = gr::integrate_exact(gauss_a0, p, nl, g, T, opt2);
  const WaveField rec = gr::reconstruct_psi(tr.snapshots.back());
  const WaveField rec2 = gr::reconstruct_psi(tr2.snapshots.back());
  const double bound_hydro = sp::l2_distance(rec, rec2) / 15.0;

  EvolutionSpec spec;
  spec.formulation = Formulation::conformal_psi;
  spec.params = p;
  spec.nl = nl;
  spec.t_start = p.t0;
  spec.t_end = T;
  spec.dt = 5e-4;
  WaveField psi0 = a0f;
  psi0.tag = Formulation::conformal_psi;
  psi0.time_stamp = p.t0;
  const EstimatedSolution direct = evolve_estimated(spec, psi0);

  const double dist = sp::l2_distance(rec2, direct.field);
  CHECK(dist <= 2.0 * (bound_hydro + direct.err_estimate) + 1e-10);
}

TEST_CASE("limit flow small-time phase matches phi_1")
{
  const PhysParams p = make_params(1e-2, 1.5, 2, 1);
  const GridSpec g = make_grid(2, 128, 8.0);
  const Nonlinearity nl = builtin_nonlinearity(BuiltinNl::cubic);
  gr::HydroOptions opt;
  opt.dt = 2e-5;
  const double t = 1e-3;
  const auto tr = gr::integrate_limit(gauss_a0, p, nl, g, t, opt);
  RealField ratio = tr.snapshots.back().phi;
  for (double& v : ratio.values) v /= t;
  // phi_1 = -|a0|^2 for the 2D cubic flow
  RealField phi1 = make_real(g);
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const Vec2 x = node_position(g, i);
    phi1.values[static_cast<std::size_t>(i)] = -std::exp(-(x[0] * x[0] + x[1] * x[1]));
  }
  RealField diff = ratio;
  for (std::size_t i = 0; i < diff.values.size(); ++i) diff.values[i] -= phi1.values[i];
  CHECK(sp::norm(diff, sp::NormKind::Hs, 1.0) < 1e-3);
}

TEST_CASE("time-shift reparameterization leaves the flow unchanged")
{
  const PhysParams p = params_from_hbar(0.1, 1.5, 2, 1);
  const GridSpec g = make_grid(2, 64, 8.0);
  const Nonlinearity nl = builtin_nonlinearity(BuiltinNl::cubic);
  const double T = p.t0 + 0.2;
  gr::HydroOptions opt;
  opt.dt = 1e-3;
  const auto direct = gr::integrate_exact(gauss_a0, p, nl, g, T, opt);

  gr::HydroOptions shifted = opt;
  shifted.time_offset = p.t0;
  const auto shift = gr::integrate_shifted(gauss_a0, p, nl, g, T - p.t0, shifted);

  const auto& a = direct.snapshots.back();
  const auto& b = shift.snapshots.back();
  double worst = sup_abs(a.phi) * 0.0;
  for (std::size_t i = 0; i < a.phi.values.size(); ++i)
    worst = std::max(worst, std::abs(a.phi.values[i] - b.phi.values[i]));
  for (std::size_t i = 0; i < a.a.size(); ++i)
    worst = std::max(worst, std::abs(a.a[i] - b.a[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("symmetrizer: exact symmetry, positivity, closed-form eigenvalue, skew SL")
{
  const PhysParams p = params_from_hbar(0.1, 1.5, 2, 1);
  const GridSpec g = make_grid(2, 64, 8.0);
  const Nonlinearity nl = builtin_nonlinearity(BuiltinNl::cubic);
  gr::HydroOptions opt;
  opt.dt = 1e-3;
  const auto tr = gr::integrate_exact(gauss_a0, p, nl, g, p.t0 + 0.2, opt);

  for (bool seedless : {false, true}) {
    const auto rep = gr::symmetrizer_check(tr.snapshots.back(), p, nl, 100, seedless);
    CHECK(rep.max_symmetry_defect < 1e-12);
    CHECK(rep.min_eig_S > 0.0);
    CHECK(rep.closed_form_gap < 1e-12);
    CHECK(rep.sl_skew_rel < 1e-10);
    CHECK(rep.samples == 100);
  }
}

TEST_CASE("convergence study: monotone errors and unit exponent at (k=3/2, n=2)")
{
  const GridSpec g = make_grid(2, 64, 8.0);
  const Nonlinearity nl = builtin_nonlinearity(BuiltinNl::cubic);
  const auto rep = grenier::convergence_study({0.2, 0.1, 0.05}, 1.5, 2, nl, gauss_a0, g, 8);
  CHECK(rep.monotone_h0);
  CHECK(rep.monotone_h1);
  CHECK(rep.predicted_exponent == doctest::Approx(1.0));
  CHECK(std::abs(rep.fit_h0.slope - 1.0) <= 0.2);
  CHECK(rep.T_used > 0.1);
}
