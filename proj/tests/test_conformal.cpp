// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "nlslab/conformal.hpp"
#include "nlslab/model.hpp"
#include "nlslab/solver.hpp"
#include "nlslab/spectral.hpp"

using namespace nlslab;
namespace cf = nlslab::conformal;
namespace sp = nlslab::spectral;

namespace {

cplx gauss_a0(const Vec2& x) { return cplx{std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1])), 0.0}; }

WaveField random_physical(const GridSpec& g, unsigned seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  WaveField f = make_wave(g, Formulation::physical_u);
  for (auto& z : f.values) z = cplx{u(rng), u(rng)};
  return f;
}

}  // namespace

TEST_CASE("transforms preserve the discrete L2 norm exactly (100 random fields)")
{
  const PhysParams p = make_params(3e-3, 1.5, 2, 1);
  const GridSpec g = make_grid(2, 64, 8.0);
  for (unsigned seed = 0; seed < 100; ++seed) {
    WaveField u = random_physical(g, seed);
    u.time_stamp = 0.4;
    const double m0 = sp::l2(u);
    const WaveField psi = cf::to_conformal(u, p, 0.4);
    CHECK(std::abs(sp::l2(psi) - m0) <= 1e-12 * m0);
    const WaveField phi = cf::to_rescaled(u, p, 0.4);
    CHECK(std::abs(sp::l2(phi) - m0) <= 1e-12 * m0);
  }
}

TEST_CASE("conformal round trip is the identity")
{
  const PhysParams p = make_params(1e-2, 1.5, 2, 1);
  const GridSpec g = make_grid(2, 64, 8.0);
  WaveField u = random_physical(g, 5u);
  u.time_stamp = 0.7;
  const WaveField back = cf::from_conformal(cf::to_conformal(u, p, 0.7), p);
  CHECK(back.grid == u.grid);
  CHECK(std::abs(back.time_stamp - 0.7) < 1e-12);
  double worst = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    worst = std::max(worst, std::abs(back.values[i] - u.values[i]));
  CHECK(worst < 1e-12);

  const WaveField back2 = cf::from_rescaled(cf::to_rescaled(u, p, 0.7), p);
  worst = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    worst = std::max(worst, std::abs(back2.values[i] - u.values[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("t = 0 conformal image is the bare profile at tau = eps^gamma")
{
  const PhysParams p = make_params(0.05, 1.5, 2, 1);
  const GridSpec g = make_grid(2, 128, 8.0);
  const WaveField u0 = initial_data(p, gauss_a0, g);
  const WaveField psi = cf::to_conformal(u0, p, 0.0);
  CHECK(psi.time_stamp == doctest::Approx(std::pow(p.eps, p.gamma)).epsilon(1e-14));
  CHECK(psi.time_stamp == doctest::Approx(p.t0).epsilon(1e-14));
  CHECK(psi.grid.half_width == g.half_width);
  const WaveField a0f = sample(g, gauss_a0);
  double worst = 0.0;
  for (std::size_t i = 0; i < psi.values.size(); ++i)
    worst = std::max(worst, std::abs(psi.values[i] - a0f.values[i]));
  CHECK(worst < 1e-12);  // chirp removed exactly
}

TEST_CASE("eps = 1 rescaling degenerates to a time shift")
{
  const PhysParams p = make_params(1.0, 1.5, 2, 1);
  const GridSpec g = make_grid(2, 64, 8.0);
  WaveField u = random_physical(g, 9u);
  u.time_stamp = 0.3;
  const WaveField phi = cf::to_rescaled(u, p, 0.3);
  CHECK(phi.time_stamp == doctest::Approx(0.3 - 1.0));
  CHECK(phi.grid.half_width == doctest::Approx(g.half_width));
  double worst = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    worst = std::max(worst, std::abs(phi.values[i] - u.values[i]));
  CHECK(worst < 1e-14);
}

TEST_CASE("composition through the conformal frame matches the direct rescaling")
{
  const PhysParams p = make_params(0.05, 1.5, 2, 1);
  const GridSpec g = make_grid(2, 64, 8.0);
  WaveField u = random_physical(g, 21u);
  const double t = 1.0 - 2.0 * std::pow(p.eps, p.gamma);
  u.time_stamp = t;

  const WaveField direct = cf::to_rescaled(u, p, t);
  const WaveField via = cf::conformal_to_rescaled(cf::to_conformal(u, p, t), p);
  CHECK(std::abs(via.time_stamp - direct.time_stamp) < 1e-12);
  CHECK(via.grid.half_width == doctest::Approx(direct.grid.half_width).epsilon(1e-13));
  double worst = 0.0;
  for (std::size_t i = 0; i < direct.values.size(); ++i)
    worst = std::max(worst, std::abs(via.values[i] - direct.values[i]));
  CHECK(worst < 1e-10);
}

TEST_CASE("hbar consistency and monotone time map")
{
  const PhysParams p = make_params(2e-3, 1.7, 2, 1);
  CHECK(std::abs(p.hbar - std::pow(p.eps, 1.0 - p.gamma)) < 1e-14 * p.hbar);
  double prev = 0.0;
  for (double t : {0.0, 0.2, 0.5, 0.8, 0.95, 0.99}) {
    const double tau = std::pow(p.eps, p.gamma) / (1.0 - t);
    CHECK(tau > prev);
    prev = tau;
  }
}

TEST_CASE("formulation cross-check: linear flow is exact, cubic within bounds")
{
  const GridSpec g = make_grid(2, 256, 8.0);
  const PhysParams p = make_params(0.2, 1.5, 2, 1);  // chirp resolved on the grid

  const auto lin = cf::cross_check_formulations(p, zero_nonlinearity(), gauss_a0, g, 0.5,
                                                2e-3, 2e-3);
  CHECK(lin.discrepancy < 1e-9);

  const auto cub = cf::cross_check_formulations(p, builtin_nonlinearity(BuiltinNl::cubic),
                                                gauss_a0, g, 0.5, 2e-3, 2e-3);
  CHECK(cub.pass);
  CHECK(cub.discrepancy <= cub.tolerance);

  // halving dt shrinks the discrepancy roughly fourfold (second order)
  const auto cub2 = cf::cross_check_formulations(p, builtin_nonlinearity(BuiltinNl::cubic),
                                                 gauss_a0, g, 0.5, 1e-3, 1e-3);
  const double ratio = cub.discrepancy / cub2.discrepancy;
  CHECK(ratio > 2.0);
  CHECK(ratio < 8.0);
}
