// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nlslab/linear.hpp"
#include "nlslab/solver.hpp"
#include "nlslab/spectral.hpp"

using namespace nlslab;
namespace lin = nlslab::linear;
namespace sp = nlslab::spectral;

namespace {

cplx gauss_a0(const Vec2& x) { return cplx{std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1])), 0.0}; }

}  // namespace

TEST_CASE("free propagation: identity at t = 0, semigroup, mass")
{
  const GridSpec g = make_grid(1, 1024, 10.0);
  PhysParams p;
  p.eps = 0.05;
  const WaveField u0 = initial_data(p, gauss_a0, g);

  const WaveField id = lin::free_propagate(u0, p.eps, 0.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < id.values.size(); ++i)
    worst = std::max(worst, std::abs(id.values[i] - u0.values[i]));
  CHECK(worst < 1e-13);

  const WaveField two = lin::free_propagate(lin::free_propagate(u0, p.eps, 0.3), p.eps, 0.45);
  const WaveField one = lin::free_propagate(u0, p.eps, 0.75);
  worst = 0.0;
  for (std::size_t i = 0; i < one.values.size(); ++i)
    worst = std::max(worst, std::abs(one.values[i] - two.values[i]));
  CHECK(worst < 1e-12);

  CHECK(std::abs(sp::l2(one) - sp::l2(u0)) < 1e-12 * sp::l2(u0));
}

TEST_CASE("chirped Gaussian beam: closed form matches the grid propagator")
{
  const GridSpec g = make_grid(1, 1024, 10.0);
  const double eps = 0.05;
  PhysParams p;
  p.eps = eps;
  const WaveField u0 = initial_data(p, gauss_a0, g);
  const WaveField u = lin::free_propagate(u0, eps, 0.5);
  const WaveField beam = lin::gaussian_beam(eps, 0.5, g);
  double worst = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    worst = std::max(worst, std::abs(u.values[i] - beam.values[i]));
  CHECK(worst < 1e-8);
}

TEST_CASE("Fresnel quadrature cross-checks the beam formula")
{
  const double eps = 0.05, t = 0.5;
  auto a0 = [](double y) { return cplx{std::exp(-0.5 * y * y), 0.0}; };
  for (double x : {0.0, 0.35, 1.0}) {
    const cplx q = lin::fresnel_quadrature_1d(a0, eps, t, x, 9.0);
    const cplx b = lin::gaussian_beam_value(eps, t, {x, 0.0}, 1);
    CHECK(std::abs(q - b) < 1e-8);
  }
}

TEST_CASE("WKB profile: t = 0 data, unitarity, focal amplification")
{
  lin::LinearWkbProfile prof;
  prof.eps = 0.05;
  prof.a0 = gauss_a0;

  const GridSpec g = make_grid(2, 256, 8.0);
  const WaveField w0 = lin::wkb_linear(prof, g, 0.0);
  PhysParams p;
  p.eps = prof.eps;
  const WaveField u0 = initial_data(p, gauss_a0, g);
  double worst = 0.0;
  for (std::size_t i = 0; i < w0.values.size(); ++i)
    worst = std::max(worst, std::abs(w0.values[i] - u0.values[i]));
  CHECK(worst < 1e-13);

  const double mass0 = sp::l2(u0);
  for (double t : {0.25, 0.5, 0.75}) {
    const WaveField w = lin::wkb_linear(prof, g, t);
    CHECK(std::abs(sp::l2(w) - mass0) < 1e-8 * mass0);
  }
  const WaveField w75 = lin::wkb_linear(prof, g, 0.75);
  CHECK(sup_abs(w75) == doctest::Approx(16.0).epsilon(1e-10));
  CHECK_THROWS(lin::wkb_linear(prof, g, 1.0));
}

TEST_CASE("lens-frame layer error equals the physical-frame distance")
{
  // At eps = 0.05 the chirp is resolved on N = 4096, so the direct physical
  // comparison is trustworthy; the lens evaluation must reproduce it.
  const GridSpec g = make_grid(1, 4096, 10.0);
  lin::LinearWkbProfile prof;
  prof.eps = 0.05;
  prof.a0 = gauss_a0;
  const WaveField a0f = sample(g, gauss_a0);
  for (double t : {0.25, 0.5, 0.75}) {
    const double direct = lin::layer_error_physical(prof, g, t);
    const double lens = lin::layer_error(a0f, prof.eps, t);
    CHECK(std::abs(direct - lens) < 1e-8 * std::max(1e-6, direct));
  }
  // at t = 0 both solutions carry the same data
  CHECK(lin::layer_error(a0f, prof.eps, 0.0) == 0.0);
}

TEST_CASE("boundary-layer scaling: slopes 1 and -1")
{
  const GridSpec g = make_grid(1, 1024, 10.0);
  const std::vector<double> eps_list{1e-2, 1e-3, 1e-4};
  const std::vector<double> t_list{0.5, 0.75, 0.875, 0.9375};
  const auto table = lin::linear_layer_error(eps_list, t_list, gauss_a0, g, 0.25, 1e-4);
  CHECK(std::abs(table.fit_eps.slope - 1.0) < 0.15);
  CHECK(std::abs(table.fit_layer.slope + 1.0) < 0.15);
  CHECK(table.fit_eps.r2 > 0.999);
  CHECK(table.fit_layer.r2 > 0.99);
}

TEST_CASE("sharp amplitude bound: fitted constant is stable under refinement")
{
  const GridSpec g = make_grid(1, 4096, 10.0);
  const auto scan = lin::amplitude_bound_scan({0.02, 0.05, 0.1}, gauss_a0, g);
  CHECK(scan.C_fit > 0.0);
  CHECK(scan.worst_validation <= 1.05 * scan.C_fit);
  // the bound is attained near the focus: C stays O(1) for the unit Gaussian
  CHECK(scan.C_fit < 2.0);
  CHECK(scan.C_fit >= 1.0);
}
