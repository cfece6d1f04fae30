// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0

#include "nlslab/grid.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "nlslab/fft.hpp"
#include "nlslab/kernels.hpp"

namespace nlslab {

const char* formulation_name(Formulation f)
{
  switch (f) {
    case Formulation::physical_u: return "physical_u";
    case Formulation::conformal_psi: return "conformal_psi";
    case Formulation::rescaled_phi: return "rescaled_phi";
    case Formulation::auxiliary: return "auxiliary";
  }
  return "unknown";
}

GridSpec make_grid(int dim, int points_per_axis, double half_width)
{
  if (dim < 1 || dim > 2) throw std::invalid_argument("grid: dim must be 1 or 2");
  if (points_per_axis < 16 || !fft::is_pow2(points_per_axis))
    throw std::invalid_argument("grid: points_per_axis must be a power of two >= 16");
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw std::invalid_argument("grid: half_width must be positive");
  return GridSpec{dim, points_per_axis, half_width};
}

WaveField make_wave(const GridSpec& g, Formulation tag)
{
  WaveField f;
  f.grid = g;
  f.values.assign(static_cast<std::size_t>(g.size()), cplx{0.0, 0.0});
  f.tag = tag;
  return f;
}

RealField make_real(const GridSpec& g)
{
  RealField f;
  f.grid = g;
  f.values.assign(static_cast<std::size_t>(g.size()), 0.0);
  return f;
}

Vec2 node_position(const GridSpec& g, std::int64_t idx)
{
  if (g.dim == 1) return {g.coord(static_cast<int>(idx)), 0.0};
  const int n = g.points_per_axis;
  const int ix = static_cast<int>(idx / n);
  const int iy = static_cast<int>(idx % n);
  return {g.coord(ix), g.coord(iy)};
}

WaveField sample(const GridSpec& g, const std::function<cplx(const Vec2&)>& fn, Formulation tag)
{
  WaveField f = make_wave(g, tag);
  const std::int64_t n = g.size();
  for (std::int64_t i = 0; i < n; ++i) {
    const Vec2 x = node_position(g, i);
    const cplx v = fn(x);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "sample: non-finite value at x = (%.6g, %.6g)", x[0], x[1]);
      throw std::runtime_error(buf);
    }
    f.values[static_cast<std::size_t>(i)] = v;
  }
  return f;
}

RealField sample_real(const GridSpec& g, const std::function<double(const Vec2&)>& fn)
{
  RealField f = make_real(g);
  const std::int64_t n = g.size();
  for (std::int64_t i = 0; i < n; ++i) {
    const Vec2 x = node_position(g, i);
    const double v = fn(x);
    if (!std::isfinite(v)) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "sample: non-finite value at x = (%.6g, %.6g)", x[0], x[1]);
      throw std::runtime_error(buf);
    }
    f.values[static_cast<std::size_t>(i)] = v;
  }
  return f;
}

namespace {

template <class T, class Abs>
double boundary_max_impl(const GridSpec& g, const std::vector<T>& v, Abs abs_of)
{
  const int n = g.points_per_axis;
  double m = 0.0;
  if (g.dim == 1) {
    m = std::max(m, abs_of(v[0]));
  } else {
    for (int i = 0; i < n; ++i) {
      m = std::max(m, abs_of(v[static_cast<std::size_t>(i)]));                       // ix = 0 face
      m = std::max(m, abs_of(v[static_cast<std::size_t>(i) * n]));                   // iy = 0 face
    }
  }
  return m;
}

}  // namespace

double boundary_max_abs(const WaveField& f)
{
  return boundary_max_impl(f.grid, f.values, [](const cplx& z) { return std::abs(z); });
}

double boundary_max_abs(const RealField& f)
{
  return boundary_max_impl(f.grid, f.values, [](double x) { return std::abs(x); });
}

double sup_abs(const WaveField& f)
{
  const auto* v = f.values.data();
  return kernels::block_max(static_cast<std::int64_t>(f.values.size()),
                            [v](std::int64_t i) { return std::abs(v[i]); });
}

double sup_abs(const RealField& f)
{
  const auto* v = f.values.data();
  return kernels::block_max(static_cast<std::int64_t>(f.values.size()),
                            [v](std::int64_t i) { return std::abs(v[i]); });
}

bool all_finite(const WaveField& f)
{
  for (const cplx& z : f.values)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

bool all_finite(const RealField& f)
{
  for (double x : f.values)
    if (!std::isfinite(x)) return false;
  return true;
}

void write_cfd1(const std::string& path, const WaveField& f)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cfd1: cannot open " + path + " for writing");
  const char magic[8] = {'C', 'F', 'D', 'U', 'M', 'P', '0', '1'};
  out.write(magic, 8);
  const std::uint32_t dim = static_cast<std::uint32_t>(f.grid.dim);
  const std::uint32_t n = static_cast<std::uint32_t>(f.grid.points_per_axis);
  out.write(reinterpret_cast<const char*>(&dim), 4);
  out.write(reinterpret_cast<const char*>(&n), 4);
  out.write(reinterpret_cast<const char*>(&f.grid.half_width), 8);
  out.write(reinterpret_cast<const char*>(&f.time_stamp), 8);
  const std::uint8_t tag = static_cast<std::uint8_t>(f.tag);
  out.write(reinterpret_cast<const char*>(&tag), 1);
  for (const cplx& z : f.values) {
    const double re = z.real(), im = z.imag();
    out.write(reinterpret_cast<const char*>(&re), 8);
    out.write(reinterpret_cast<const char*>(&im), 8);
  }
  if (!out) throw std::runtime_error("cfd1: write failed on " + path);
}

WaveField read_cfd1(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cfd1: cannot open " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, "CFDUMP01", 8) != 0)
    throw std::runtime_error("cfd1: bad magic in " + path);
  std::uint32_t dim = 0, n = 0;
  double half_width = 0.0, time_stamp = 0.0;
  std::uint8_t tag = 0;
  in.read(reinterpret_cast<char*>(&dim), 4);
  in.read(reinterpret_cast<char*>(&n), 4);
  in.read(reinterpret_cast<char*>(&half_width), 8);
  in.read(reinterpret_cast<char*>(&time_stamp), 8);
  in.read(reinterpret_cast<char*>(&tag), 1);
  if (!in) throw std::runtime_error("cfd1: truncated header in " + path);
  WaveField f = make_wave(make_grid(static_cast<int>(dim), static_cast<int>(n), half_width));
  f.time_stamp = time_stamp;
  f.tag = static_cast<Formulation>(tag);
  for (cplx& z : f.values) {
    double re = 0.0, im = 0.0;
    in.read(reinterpret_cast<char*>(&re), 8);
    in.read(reinterpret_cast<char*>(&im), 8);
    z = cplx{re, im};
  }
  if (!in) throw std::runtime_error("cfd1: truncated payload in " + path);
  return f;
}

}  // namespace nlslab
