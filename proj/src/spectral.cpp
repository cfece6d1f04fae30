// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0

#include "nlslab/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nlslab/fft.hpp"
#include "nlslab/kernels.hpp"

namespace nlslab::spectral {

namespace {

inline void mode_pair(const GridSpec& g, std::int64_t idx, int& mx, int& my)
{
  const int n = g.points_per_axis;
  if (g.dim == 1) {
    mx = static_cast<int>(idx);
    my = 0;
  } else {
    mx = static_cast<int>(idx / n);
    my = static_cast<int>(idx % n);
  }
}

std::vector<cplx> to_complex(const RealField& f)
{
  std::vector<cplx> v(f.values.size());
  const double* src = f.values.data();
  cplx* dst = v.data();
  kernels::parallel_for(static_cast<std::int64_t>(v.size()),
                        [=](std::int64_t i) { dst[i] = cplx{src[i], 0.0}; });
  return v;
}

}  // namespace

void forward_inplace(std::vector<cplx>& v, const GridSpec& g)
{
  if (static_cast<std::int64_t>(v.size()) != g.size())
    throw std::invalid_argument("spectral: field size does not match grid");
  if (g.dim == 1)
    fft::forward_1d(v.data(), g.points_per_axis);
  else
    fft::forward_2d(v.data(), g.points_per_axis);
}

void inverse_inplace(std::vector<cplx>& v, const GridSpec& g)
{
  if (static_cast<std::int64_t>(v.size()) != g.size())
    throw std::invalid_argument("spectral: field size does not match grid");
  if (g.dim == 1)
    fft::inverse_1d(v.data(), g.points_per_axis);
  else
    fft::inverse_2d(v.data(), g.points_per_axis);
}

std::vector<cplx> coefficients(const WaveField& f)
{
  std::vector<cplx> c = f.values;
  forward_inplace(c, f.grid);
  const double inv = 1.0 / static_cast<double>(f.grid.size());
  cplx* p = c.data();
  kernels::parallel_for(static_cast<std::int64_t>(c.size()), [=](std::int64_t i) { p[i] *= inv; });
  return c;
}

std::vector<cplx> coefficients(const RealField& f)
{
  std::vector<cplx> c = to_complex(f);
  forward_inplace(c, f.grid);
  const double inv = 1.0 / static_cast<double>(f.grid.size());
  cplx* p = c.data();
  kernels::parallel_for(static_cast<std::int64_t>(c.size()), [=](std::int64_t i) { p[i] *= inv; });
  return c;
}

namespace {

// Apply d/dx_axis in spectral space (Nyquist mode zeroed) and invert.
std::vector<cplx> gradient_axis(std::vector<cplx> hat, const GridSpec& g, int axis)
{
  const int n = g.points_per_axis;
  const int nyq = n / 2;
  cplx* p = hat.data();
  kernels::parallel_for(g.size(), [&, p](std::int64_t idx) {
    int mx, my;
    mode_pair(g, idx, mx, my);
    const int m = axis == 0 ? mx : my;
    const int ms = g.mode(m);
    if (ms == -nyq) {
      p[idx] = cplx{0.0, 0.0};
    } else {
      const double k = std::numbers::pi * ms / g.half_width;
      p[idx] *= cplx{0.0, k};
    }
  });
  inverse_inplace(hat, g);
  return hat;
}

std::vector<cplx> laplacian_hat(std::vector<cplx> hat, const GridSpec& g)
{
  cplx* p = hat.data();
  kernels::parallel_for(g.size(), [&, p](std::int64_t idx) {
    int mx, my;
    mode_pair(g, idx, mx, my);
    const double kx = g.wavenumber(mx);
    const double ky = g.dim == 2 ? g.wavenumber(my) : 0.0;
    p[idx] *= -(kx * kx + ky * ky);
  });
  inverse_inplace(hat, g);
  return hat;
}

}  // namespace

std::vector<WaveField> gradient(const WaveField& f)
{
  std::vector<cplx> hat = f.values;
  forward_inplace(hat, f.grid);
  std::vector<WaveField> out;
  for (int axis = 0; axis < f.grid.dim; ++axis) {
    WaveField d = make_wave(f.grid, Formulation::auxiliary);
    d.time_stamp = f.time_stamp;
    d.values = gradient_axis(hat, f.grid, axis);
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<RealField> gradient(const RealField& f)
{
  std::vector<cplx> hat = to_complex(f);
  forward_inplace(hat, f.grid);
  std::vector<RealField> out;
  for (int axis = 0; axis < f.grid.dim; ++axis) {
    std::vector<cplx> d = gradient_axis(hat, f.grid, axis);
    RealField r = make_real(f.grid);
    double* dst = r.values.data();
    const cplx* src = d.data();
    kernels::parallel_for(f.grid.size(), [=](std::int64_t i) { dst[i] = src[i].real(); });
    out.push_back(std::move(r));
  }
  return out;
}

WaveField laplacian(const WaveField& f)
{
  std::vector<cplx> hat = f.values;
  forward_inplace(hat, f.grid);
  WaveField d = make_wave(f.grid, Formulation::auxiliary);
  d.time_stamp = f.time_stamp;
  d.values = laplacian_hat(std::move(hat), f.grid);
  return d;
}

RealField laplacian(const RealField& f)
{
  std::vector<cplx> hat = to_complex(f);
  forward_inplace(hat, f.grid);
  std::vector<cplx> d = laplacian_hat(std::move(hat), f.grid);
  RealField r = make_real(f.grid);
  double* dst = r.values.data();
  const cplx* src = d.data();
  kernels::parallel_for(f.grid.size(), [=](std::int64_t i) { dst[i] = src[i].real(); });
  return r;
}

namespace {

double quadrature_l2(const GridSpec& g, const cplx* v)
{
  const double cell = std::pow(g.spacing(), g.dim);
  const double s =
      kernels::block_sum(g.size(), [=](std::int64_t i) { return std::norm(v[i]); });
  return std::sqrt(cell * s);
}

double sobolev_norm(const GridSpec& g, std::vector<cplx> hat, double s)
{
  const double inv = 1.0 / static_cast<double>(g.size());
  const double vol = std::pow(2.0 * g.half_width, g.dim);
  const cplx* p = hat.data();
  const double total = kernels::block_sum(g.size(), [&, p](std::int64_t idx) {
    int mx, my;
    mode_pair(g, idx, mx, my);
    const double kx = g.wavenumber(mx);
    const double ky = g.dim == 2 ? g.wavenumber(my) : 0.0;
    const double w = std::pow(1.0 + kx * kx + ky * ky, s);
    return w * std::norm(p[idx] * inv);
  });
  return std::sqrt(vol * total);
}

}  // namespace

double norm(const WaveField& f, NormKind kind, double s)
{
  switch (kind) {
    case NormKind::L2: return quadrature_l2(f.grid, f.values.data());
    case NormKind::Linf: return sup_abs(f);
    case NormKind::Hs: {
      if (s < 0.0) throw std::invalid_argument("norm: Hs requires s >= 0");
      std::vector<cplx> hat = f.values;
      forward_inplace(hat, f.grid);
      return sobolev_norm(f.grid, std::move(hat), s);
    }
  }
  throw std::logic_error("norm: unknown kind");
}

double norm(const RealField& f, NormKind kind, double s)
{
  switch (kind) {
    case NormKind::L2: {
      const double cell = std::pow(f.grid.spacing(), f.grid.dim);
      const double* v = f.values.data();
      const double sum =
          kernels::block_sum(f.grid.size(), [=](std::int64_t i) { return v[i] * v[i]; });
      return std::sqrt(cell * sum);
    }
    case NormKind::Linf: return sup_abs(f);
    case NormKind::Hs: {
      if (s < 0.0) throw std::invalid_argument("norm: Hs requires s >= 0");
      std::vector<cplx> hat = to_complex(f);
      forward_inplace(hat, f.grid);
      return sobolev_norm(f.grid, std::move(hat), s);
    }
  }
  throw std::logic_error("norm: unknown kind");
}

double l2(const WaveField& f) { return norm(f, NormKind::L2); }
double l2(const RealField& f) { return norm(f, NormKind::L2); }

double l2_fourier(const WaveField& f)
{
  std::vector<cplx> hat = f.values;
  forward_inplace(hat, f.grid);
  return sobolev_norm(f.grid, std::move(hat), 0.0);
}

double l2_distance(const WaveField& a, const WaveField& b)
{
  if (!(a.grid == b.grid)) throw std::invalid_argument("l2_distance: grid mismatch");
  const cplx* pa = a.values.data();
  const cplx* pb = b.values.data();
  const double cell = std::pow(a.grid.spacing(), a.grid.dim);
  const double s = kernels::block_sum(a.grid.size(),
                                      [=](std::int64_t i) { return std::norm(pa[i] - pb[i]); });
  return std::sqrt(cell * s);
}

double l2_distance(const RealField& a, const RealField& b)
{
  if (!(a.grid == b.grid)) throw std::invalid_argument("l2_distance: grid mismatch");
  const double* pa = a.values.data();
  const double* pb = b.values.data();
  const double cell = std::pow(a.grid.spacing(), a.grid.dim);
  const double s = kernels::block_sum(a.grid.size(), [=](std::int64_t i) {
    const double d = pa[i] - pb[i];
    return d * d;
  });
  return std::sqrt(cell * s);
}

void dealias_spectrum(std::vector<cplx>& hat, const GridSpec& g)
{
  const int cut = g.points_per_axis / 3;
  cplx* p = hat.data();
  kernels::parallel_for(g.size(), [&, p](std::int64_t idx) {
    int mx, my;
    mode_pair(g, idx, mx, my);
    if (std::abs(g.mode(mx)) > cut || (g.dim == 2 && std::abs(g.mode(my)) > cut))
      p[idx] = cplx{0.0, 0.0};
  });
}

void dealias_inplace(WaveField& f)
{
  std::vector<cplx> hat = f.values;
  forward_inplace(hat, f.grid);
  dealias_spectrum(hat, f.grid);
  inverse_inplace(hat, f.grid);
  f.values = std::move(hat);
}

void dealias_inplace(RealField& f)
{
  std::vector<cplx> hat = to_complex(f);
  forward_inplace(hat, f.grid);
  dealias_spectrum(hat, f.grid);
  inverse_inplace(hat, f.grid);
  double* dst = f.values.data();
  const cplx* src = hat.data();
  kernels::parallel_for(f.grid.size(), [=](std::int64_t i) { dst[i] = src[i].real(); });
}

std::vector<cplx> czt_eval_1d(const std::vector<cplx>& coeffs, double half_width,
                              double y0, double dy, int m)
{
  const int n = static_cast<int>(coeffs.size());
  if (!fft::is_pow2(n)) throw std::invalid_argument("czt: source length must be a power of two");
  const double L = half_width;
  const double w_rate = std::numbers::pi * dy / L;  // W(x) = exp(i w_rate x)
  auto W = [&](double x) { return std::polar(1.0, w_rate * x); };

  int p = 1;
  while (p < m + 2 * n) p <<= 1;
  const fft::Plan& plan = fft::plan_for(p);

  // u[pos] = c_m e^{i k_m (y0+L)} W(s_m^2/2) at pos = s_m + n/2.
  std::vector<cplx> u(static_cast<std::size_t>(p), cplx{0.0, 0.0});
  for (int bin = 0; bin < n; ++bin) {
    const int s = bin < n / 2 ? bin : bin - n;
    const double k = std::numbers::pi * s / L;
    const cplx a = coeffs[static_cast<std::size_t>(bin)] * std::polar(1.0, k * (y0 + L));
    u[static_cast<std::size_t>(s + n / 2)] = a * W(0.5 * static_cast<double>(s) * s);
  }
  // v[j] = W(-(j - n/2)^2 / 2), j = 0 .. m + n - 1.
  std::vector<cplx> v(static_cast<std::size_t>(p), cplx{0.0, 0.0});
  for (int j = 0; j < m + n; ++j) {
    const double q = j - n / 2;
    v[static_cast<std::size_t>(j)] = W(-0.5 * q * q);
  }
  fft::transform(u.data(), plan, false);
  fft::transform(v.data(), plan, false);
  for (int i = 0; i < p; ++i) u[static_cast<std::size_t>(i)] *= v[static_cast<std::size_t>(i)];
  fft::transform(u.data(), plan, true);
  const double inv_p = 1.0 / p;

  std::vector<cplx> out(static_cast<std::size_t>(m));
  for (int t = 0; t < m; ++t)
    out[static_cast<std::size_t>(t)] =
        u[static_cast<std::size_t>(t + n)] * inv_p * W(0.5 * static_cast<double>(t) * t);
  return out;
}

namespace {

std::vector<cplx> resample_values(const std::vector<cplx>& src_vals, const GridSpec& src,
                                  const GridSpec& tgt, double stretch)
{
  if (!(stretch > 0.0) || !std::isfinite(stretch))
    throw std::invalid_argument("resample: stretch must be positive");
  std::vector<cplx> hat = src_vals;
  forward_inplace(hat, src);
  const double inv = 1.0 / static_cast<double>(src.size());
  for (cplx& z : hat) z *= inv;

  const int ns = src.points_per_axis;
  const int nt = tgt.points_per_axis;
  const double y0 = -tgt.half_width / stretch;
  const double dy = tgt.spacing() / stretch;

  std::vector<cplx> out;
  if (src.dim == 1) {
    out = czt_eval_1d(hat, src.half_width, y0, dy, nt);
  } else {
    // Axis 1 (contiguous rows), then axis 0.
    std::vector<cplx> mid(static_cast<std::size_t>(ns) * nt);
    kernels::parallel_for_ranges(ns, [&](std::int64_t r) {
      std::vector<cplx> row(static_cast<std::size_t>(ns));
      for (int j = 0; j < ns; ++j) row[static_cast<std::size_t>(j)] = hat[static_cast<std::size_t>(r) * ns + j];
      auto vals = czt_eval_1d(row, src.half_width, y0, dy, nt);
      for (int t = 0; t < nt; ++t) mid[static_cast<std::size_t>(r) * nt + t] = vals[static_cast<std::size_t>(t)];
    });
    out.assign(static_cast<std::size_t>(nt) * nt, cplx{0.0, 0.0});
    kernels::parallel_for_ranges(nt, [&](std::int64_t c) {
      std::vector<cplx> col(static_cast<std::size_t>(ns));
      for (int r = 0; r < ns; ++r) col[static_cast<std::size_t>(r)] = mid[static_cast<std::size_t>(r) * nt + c];
      auto vals = czt_eval_1d(col, src.half_width, y0, dy, nt);
      for (int t = 0; t < nt; ++t) out[static_cast<std::size_t>(t) * nt + c] = vals[static_cast<std::size_t>(t)];
    });
  }

  // Outside the source box the interpolant would wrap; the fields resampled
  // here decay below roundoff at the box edge, so clamp to zero instead.
  const double limit = src.half_width;
  kernels::parallel_for(tgt.size(), [&](std::int64_t idx) {
    const Vec2 x = node_position(tgt, idx);
    for (int d = 0; d < tgt.dim; ++d) {
      if (std::abs(x[static_cast<std::size_t>(d)] / stretch) >= limit) {
        out[static_cast<std::size_t>(idx)] = cplx{0.0, 0.0};
        break;
      }
    }
  });
  return out;
}

}  // namespace

WaveField resample_scaled(const WaveField& src, const GridSpec& tgt, double stretch)
{
  WaveField out = make_wave(tgt, src.tag);
  out.time_stamp = src.time_stamp;
  out.values = resample_values(src.values, src.grid, tgt, stretch);
  return out;
}

RealField resample_scaled(const RealField& src, const GridSpec& tgt, double stretch)
{
  std::vector<cplx> v(src.values.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = cplx{src.values[i], 0.0};
  WaveField tmp;
  tmp.grid = src.grid;
  tmp.values = std::move(v);
  auto res = resample_values(tmp.values, src.grid, tgt, stretch);
  RealField out = make_real(tgt);
  for (std::size_t i = 0; i < res.size(); ++i) out.values[i] = res[i].real();
  return out;
}

}  // namespace nlslab::spectral
