// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "nlslab/grid.hpp"
#include "nlslab/spectral.hpp"

using namespace nlslab;
namespace sp = nlslab::spectral;

namespace {

WaveField random_field(const GridSpec& g, unsigned seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  WaveField f = make_wave(g);
  for (auto& z : f.values) z = cplx{u(rng), u(rng)};
  return f;
}

}  // namespace

TEST_CASE("grid validation")
{
  CHECK_THROWS(make_grid(3, 64, 1.0));
  CHECK_THROWS(make_grid(1, 48, 1.0));   // not a power of two
  CHECK_THROWS(make_grid(1, 8, 1.0));    // too small
  CHECK_THROWS(make_grid(1, 64, -1.0));
  const GridSpec g = make_grid(2, 64, 5.0);
  CHECK(g.size() == 64 * 64);
  CHECK(g.spacing() == doctest::Approx(10.0 / 64).epsilon(1e-15));
  // spacing * points == 2 * half_width exactly up to one rounding
  CHECK(g.spacing() * g.points_per_axis == doctest::Approx(2.0 * g.half_width).epsilon(1e-15));
}

TEST_CASE("sample: constant, Gaussian at origin and at x = 2")
{
  const GridSpec g = make_grid(1, 256, 10.0);
  const WaveField ones = sample(g, [](const Vec2&) { return cplx{1.0, 0.0}; });
  for (const auto& z : ones.values) CHECK(z == cplx{1.0, 0.0});

  const WaveField gauss =
      sample(g, [](const Vec2& x) { return cplx{std::exp(-0.5 * x[0] * x[0]), 0.0}; });
  const int i0 = 128;  // x = 0
  CHECK(gauss.values[i0].real() == doctest::Approx(1.0).epsilon(1e-15));
  // sampling means evaluation at the node coordinates
  const int inear = i0 + static_cast<int>(std::lround(2.0 / g.spacing()));
  const double xn = g.coord(inear);
  CHECK(gauss.values[inear].real() == doctest::Approx(std::exp(-0.5 * xn * xn)).epsilon(1e-14));

  // on a grid whose spacing divides 2 exactly, the node value is e^{-2}
  const GridSpec g8 = make_grid(1, 256, 8.0);
  const WaveField gauss8 =
      sample(g8, [](const Vec2& x) { return cplx{std::exp(-0.5 * x[0] * x[0]), 0.0}; });
  const int i2 = 128 + static_cast<int>(2.0 / g8.spacing());
  CHECK(g8.coord(i2) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(gauss8.values[i2].real() == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));

  CHECK_THROWS(sample(g, [](const Vec2& x) { return cplx{1.0 / x[0], 0.0}; }));  // inf at 0
}

TEST_CASE("spectral gradient: constant, band-limited, Gaussian oracle")
{
  const GridSpec g = make_grid(1, 256, 10.0);
  const RealField c = sample_real(g, [](const Vec2&) { return 3.5; });
  const auto dc = sp::gradient(c);
  CHECK(sup_abs(dc[0]) < 1e-12);

  const double kL = std::numbers::pi / g.half_width;
  const RealField s = sample_real(g, [&](const Vec2& x) { return std::sin(kL * x[0]); });
  const auto ds = sp::gradient(s);
  double worst = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const double x = g.coord(static_cast<int>(i));
    worst = std::max(worst, std::abs(ds[0].values[static_cast<std::size_t>(i)] - kL * std::cos(kL * x)));
  }
  CHECK(worst < 1e-10);

  // analytic derivative of exp(-x^2) as the oracle
  const RealField e = sample_real(g, [](const Vec2& x) { return std::exp(-x[0] * x[0]); });
  const auto de = sp::gradient(e);
  worst = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const double x = g.coord(static_cast<int>(i));
    worst = std::max(worst, std::abs(de[0].values[static_cast<std::size_t>(i)] + 2.0 * x * std::exp(-x * x)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("spectral laplacian: eigenfunction and 2D Gaussian oracle")
{
  const GridSpec g1 = make_grid(1, 256, 10.0);
  const double kL = std::numbers::pi / g1.half_width;
  const RealField s = sample_real(g1, [&](const Vec2& x) { return std::sin(kL * x[0]); });
  const RealField ls = sp::laplacian(s);
  double worst = 0.0;
  for (std::int64_t i = 0; i < g1.size(); ++i)
    worst = std::max(worst, std::abs(ls.values[static_cast<std::size_t>(i)] +
                                     kL * kL * s.values[static_cast<std::size_t>(i)]));
  CHECK(worst < 1e-10);

  const GridSpec g2 = make_grid(2, 256, 8.0);
  const RealField e =
      sample_real(g2, [](const Vec2& x) { return std::exp(-(x[0] * x[0] + x[1] * x[1])); });
  const RealField le = sp::laplacian(e);
  worst = 0.0;
  for (std::int64_t i = 0; i < g2.size(); ++i) {
    const Vec2 x = node_position(g2, i);
    const double r2 = x[0] * x[0] + x[1] * x[1];
    worst = std::max(worst, std::abs(le.values[static_cast<std::size_t>(i)] -
                                     (4.0 * r2 - 4.0) * std::exp(-r2)));
  }
  CHECK(worst < 1e-7);
}

TEST_CASE("norms: zero field, 2D Gaussian L2, H0 equals L2, Parseval, round trip")
{
  const GridSpec g = make_grid(2, 256, 12.0);
  const WaveField zero = make_wave(g);
  CHECK(sp::norm(zero, sp::NormKind::L2) == 0.0);
  CHECK(sp::norm(zero, sp::NormKind::Linf) == 0.0);
  CHECK(sp::norm(zero, sp::NormKind::Hs, 2.0) == 0.0);

  const WaveField gauss = sample(
      g, [](const Vec2& x) { return cplx{std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1])), 0.0}; });
  CHECK(sp::l2(gauss) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-8));

  const GridSpec gs = make_grid(2, 64, 6.0);
  WaveField smooth = make_wave(gs);
  std::mt19937_64 rng(91u);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  // random smooth field: a few low Fourier modes
  for (int mx = -4; mx <= 4; ++mx)
    for (int my = -4; my <= 4; ++my) {
      const int bx = (mx + 64) % 64, by = (my + 64) % 64;
      smooth.values[static_cast<std::size_t>(bx) * 64 + by] = cplx{u(rng), u(rng)};
    }
  sp::inverse_inplace(smooth.values, gs);
  CHECK(sp::norm(smooth, sp::NormKind::Hs, 0.0) ==
        doctest::Approx(sp::l2(smooth)).epsilon(1e-13));
  CHECK(sp::l2_fourier(smooth) == doctest::Approx(sp::l2(smooth)).epsilon(1e-12));
  CHECK_THROWS(sp::norm(smooth, sp::NormKind::Hs, -1.0));

  WaveField rt = random_field(gs, 17u);
  std::vector<cplx> hat = rt.values;
  sp::forward_inplace(hat, gs);
  sp::inverse_inplace(hat, gs);
  double worst = 0.0;
  for (std::size_t i = 0; i < hat.size(); ++i) worst = std::max(worst, std::abs(hat[i] - rt.values[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("Leibniz rule within dealiasing tolerance for band-limited fields")
{
  const GridSpec g = make_grid(1, 256, 10.0);
  const double k1 = 3.0 * std::numbers::pi / g.half_width;
  const double k2 = 5.0 * std::numbers::pi / g.half_width;
  const RealField f = sample_real(g, [&](const Vec2& x) { return std::sin(k1 * x[0]); });
  const RealField h = sample_real(g, [&](const Vec2& x) { return std::cos(k2 * x[0]); });
  RealField prod = make_real(g);
  for (std::size_t i = 0; i < prod.values.size(); ++i)
    prod.values[i] = f.values[i] * h.values[i];
  const auto dprod = sp::gradient(prod);
  const auto df = sp::gradient(f);
  const auto dh = sp::gradient(h);
  double worst = 0.0;
  for (std::size_t i = 0; i < prod.values.size(); ++i) {
    const double leibniz = df[0].values[i] * h.values[i] + f.values[i] * dh[0].values[i];
    worst = std::max(worst, std::abs(dprod[0].values[i] - leibniz));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("scaled resampling matches direct evaluation of the interpolant")
{
  const GridSpec src = make_grid(1, 64, 4.0);
  const GridSpec tgt = make_grid(1, 32, 3.0);
  WaveField f = random_field(src, 3u);
  // band-limit so the interpolant is tame
  std::vector<cplx> hat = f.values;
  sp::forward_inplace(hat, src);
  sp::dealias_spectrum(hat, src);
  sp::inverse_inplace(hat, src);
  f.values = hat;

  const double stretch = 0.7;
  const WaveField r = sp::resample_scaled(f, tgt, stretch);

  // direct evaluation of sum_m c_m e^{i k_m (y + L)}
  std::vector<cplx> c = sp::coefficients(f);
  for (int t = 0; t < tgt.points_per_axis; ++t) {
    const double y = tgt.coord(t) / stretch;
    cplx direct{0.0, 0.0};
    if (std::abs(y) < src.half_width) {
      for (int m = 0; m < src.points_per_axis; ++m) {
        const double k = src.wavenumber(m);
        direct += c[static_cast<std::size_t>(m)] * std::polar(1.0, k * (y + src.half_width));
      }
    }
    CHECK(std::abs(r.values[static_cast<std::size_t>(t)] - direct) < 1e-10);
  }

  // 2D smoke: resampling a smooth Gaussian against pointwise evaluation
  const GridSpec src2 = make_grid(2, 128, 8.0);
  const GridSpec tgt2 = make_grid(2, 64, 8.0);
  const RealField g2 =
      sample_real(src2, [](const Vec2& x) { return std::exp(-(x[0] * x[0] + x[1] * x[1])); });
  const RealField r2 = sp::resample_scaled(g2, tgt2, 2.0);
  double worst = 0.0;
  for (std::int64_t i = 0; i < tgt2.size(); ++i) {
    const Vec2 x = node_position(tgt2, i);
    const double want = std::exp(-((x[0] / 2) * (x[0] / 2) + (x[1] / 2) * (x[1] / 2)));
    worst = std::max(worst, std::abs(r2.values[static_cast<std::size_t>(i)] - want));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("CFD1 dump round trip")
{
  const GridSpec g = make_grid(2, 32, 2.5);
  WaveField f = random_field(g, 5u);
  f.time_stamp = 0.625;
  f.tag = Formulation::conformal_psi;
  const std::string path = "/tmp/nlslab_test_dump.cfd1";
  write_cfd1(path, f);
  const WaveField r = read_cfd1(path);
  CHECK(r.grid == f.grid);
  CHECK(r.time_stamp == f.time_stamp);
  CHECK(r.tag == f.tag);
  CHECK(r.values == f.values);
  std::remove(path.c_str());
}
