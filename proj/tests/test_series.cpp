// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nlslab/cascade.hpp"
#include "nlslab/linear.hpp"
#include "nlslab/series.hpp"
#include "nlslab/solver.hpp"
#include "nlslab/spectral.hpp"

using namespace nlslab;
namespace se = nlslab::series;
namespace cs = nlslab::cascade;
namespace sp = nlslab::spectral;

namespace {

cplx gauss_a0(const Vec2& x) { return cplx{std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1])), 0.0}; }

std::int64_t origin_index(const GridSpec& g)
{
  const int n = g.points_per_axis;
  return g.dim == 1 ? n / 2 : static_cast<std::int64_t>(n / 2) * n + n / 2;
}

}  // namespace

TEST_CASE("series coefficients for the 2D cubic unit Gaussian")
{
  const PhysParams p = make_params(1e-2, 1.5, 2, 1);
  const GridSpec g = make_grid(2, 256, 8.0);
  const Nonlinearity nl = builtin_nonlinearity(BuiltinNl::cubic);
  const auto c = se::compute_coeffs(gauss_a0, p, nl, g);
  const std::int64_t o = origin_index(g);

  // phi_1 = -|a0|^2 (the balance (n-1) phi_1 + f'(0)|a0|^2 = 0 at n = 2)
  CHECK(c.phi1.values[static_cast<std::size_t>(o)] == doctest::Approx(-1.0).epsilon(1e-12));
  // a_1 = exp(-3 r^2 / 2): value 1 at the origin
  CHECK(c.a1.values[static_cast<std::size_t>(o)].real() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(c.a1.values[static_cast<std::size_t>(o)].imag()) < 1e-12);
  // phi_2 = -(2/3)(1 + r^2) exp(-2 r^2): value -2/3 at the origin
  CHECK(c.phi2.values[static_cast<std::size_t>(o)] ==
        doctest::Approx(-2.0 / 3.0).epsilon(1e-8));

  // full-field comparison against the closed forms
  double w1 = 0.0, wa = 0.0, w2 = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const Vec2 x = node_position(g, i);
    const double r2 = x[0] * x[0] + x[1] * x[1];
    w1 = std::max(w1, std::abs(c.phi1.values[static_cast<std::size_t>(i)] + std::exp(-r2)));
    wa = std::max(wa, std::abs(c.a1.values[static_cast<std::size_t>(i)] -
                               cplx{std::exp(-1.5 * r2), 0.0}));
    w2 = std::max(w2, std::abs(c.phi2.values[static_cast<std::size_t>(i)] +
                               (2.0 / 3.0) * (1.0 + r2) * std::exp(-2.0 * r2)));
  }
  CHECK(w1 < 1e-12);
  CHECK(wa < 1e-8);
  CHECK(w2 < 1e-8);

  CHECK_THROWS(se::compute_coeffs(gauss_a0, make_params(0.5, 0.5, 1, 2), nl, g));
}

TEST_CASE("remainder orders of the limit flow (n = 2 cubic)")
{
  const PhysParams p = make_params(1e-2, 1.5, 2, 1);
  const GridSpec g = make_grid(2, 128, 8.0);
  const Nonlinearity nl = builtin_nonlinearity(BuiltinNl::cubic);
  const std::vector<double> ts{0.025, 0.05, 0.1, 0.2};
  const auto orders = se::series_remainder_order(gauss_a0, p, nl, ts, g);

  CHECK(std::abs(orders.phi_first_h0.slope - 3.0) < 0.25);
  CHECK(std::abs(orders.phi_first_h1.slope - 3.0) < 0.25);
  CHECK(std::abs(orders.phi_second_h0.slope - 5.0) < 0.4);
  CHECK(std::abs(orders.amp_h0.slope - 4.0) < 0.3);

  // fitted t^3 coefficient at the origin against phi_2(0) = -2/3
  CHECK(std::abs(orders.phi2_fitted_origin + 2.0 / 3.0) / (2.0 / 3.0) < 0.05);
}

TEST_CASE("theorem approximant: modulus identity and phase-shift decay in Lambda")
{
  const PhysParams p = make_params(1e-2, 1.5, 2, 1);
  const GridSpec g = make_grid(2, 128, 8.0);
  const Nonlinearity nl = builtin_nonlinearity(BuiltinNl::cubic);

  const double eg = std::pow(p.eps, p.gamma);
  std::vector<double> taus{1.0 / 16.0, 1.0 / 8.0};
  se::LimitPhase phase(gauss_a0, p, nl, g, taus);

  const double t8 = 1.0 - 8.0 * eg;
  const WaveField v = se::theorem_approximant(gauss_a0, p, t8, g, phase);
  linear::LinearWkbProfile prof;
  prof.eps = p.eps;
  prof.a0 = gauss_a0;
  const WaveField w = linear::wkb_linear(prof, g, t8);
  double worst = 0.0;
  for (std::size_t i = 0; i < v.values.size(); ++i)
    worst = std::max(worst, std::abs(std::abs(v.values[i]) - std::abs(w.values[i])));
  CHECK(worst < 1e-13);

  // sup of the phase shift roughly halves from Lambda = 8 to Lambda = 16
  const double s8 = std::pow(p.eps, p.gamma - 1.0) * sup_abs(phase.phase_at(1.0 / 8.0));
  const double s16 = std::pow(p.eps, p.gamma - 1.0) * sup_abs(phase.phase_at(1.0 / 16.0));
  CHECK(s16 / s8 == doctest::Approx(0.5).epsilon(0.2));

  CHECK_THROWS(se::theorem_approximant(gauss_a0, p, 1.0 - eg / 4.0, g, phase));
}

TEST_CASE("first-layer onset exponent of the theorem phase shift")
{
  const PhysParams p0 = make_params(1e-2, 1.5, 2, 1);
  const GridSpec g = make_grid(2, 128, 8.0);
  const Nonlinearity nl = builtin_nonlinearity(BuiltinNl::cubic);

  // phase fields over a conformal-time grid shared by every eps
  std::vector<double> taus;
  for (int i = 0; i < 40; ++i)
    taus.push_back(std::exp(std::log(0.02) + (std::log(0.7) - std::log(0.02)) * i / 39.0));
  se::LimitPhase phase(gauss_a0, p0, nl, g, taus);

  std::vector<double> eps_list{1e-2, 1e-3, 1e-4}, onset;
  for (double eps : eps_list) {
    const PhysParams p = make_params(eps, 1.5, 2, 1);
    const double eg = std::pow(eps, p.gamma);
    std::vector<double> layers, sups;
    for (double tau : taus) {
      layers.push_back(eg / tau);
      sups.push_back(std::pow(eps, p.gamma - 1.0) * sup_abs(phase.phase_at(tau)));
    }
    std::reverse(layers.begin(), layers.end());
    std::reverse(sups.begin(), sups.end());
    onset.push_back(fit::crossing_loglog(layers, sups, 1.0));
  }
  const auto f = fit::loglog_fit(eps_list, onset);
  CHECK(std::abs(f.slope - 0.5) < 0.05);  // (k-1)/(n-1) at the reference parameters
}

TEST_CASE("mapped cascade terms: j = 1 identical, j = 2 misses the amplitude corrector")
{
  const PhysParams p = make_params(1e-2, 1.5, 2, 1);
  const GridSpec g = make_grid(2, 256, 8.0);
  const Nonlinearity nl = builtin_nonlinearity(BuiltinNl::cubic);

  const auto st = cs::build_stack(gauss_a0, p, 2, g);
  const auto c = se::compute_coeffs(gauss_a0, p, nl, g);

  const RealField m1 = cs::conformal_phase_coeff(st, 1);
  const RealField m2 = cs::conformal_phase_coeff(st, 2);
  double ident = 0.0, discr = 0.0;
  for (std::size_t i = 0; i < m1.values.size(); ++i) {
    ident = std::max(ident, std::abs(m1.values[i] - c.phi1.values[i]));
    discr = std::max(discr, std::abs(m2.values[i] - c.phi2.values[i]));
  }
  CHECK(ident < 1e-8);
  CHECK(discr > 1e-3);
  // the gap is exactly the amplitude-corrector term -(2/3) e^{-2 r^2}
  CHECK(discr == doctest::Approx(2.0 / 3.0).epsilon(1e-4));
}
