// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0
//
// Uniform periodic tensor-product grids on [-L, L)^d, d in {1,2}, and the
// complex/real field containers that live on them. The grid is the single
// source of truth for coordinates and Fourier wavenumbers (k = (pi/L) * m
// with m the signed mode index).
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace nlslab {

using cplx = std::complex<double>;
using Vec2 = std::array<double, 2>;

enum class Formulation : std::uint8_t {
  physical_u = 0,
  conformal_psi = 1,
  rescaled_phi = 2,
  auxiliary = 3,
};

const char* formulation_name(Formulation f);

struct GridSpec {
  int dim = 1;
  int points_per_axis = 0;
  double half_width = 0.0;

  double spacing() const { return 2.0 * half_width / points_per_axis; }
  std::int64_t size() const
  {
    std::int64_t s = points_per_axis;
    for (int d = 1; d < dim; ++d) s *= points_per_axis;
    return s;
  }
  double coord(int i) const { return -half_width + spacing() * i; }
  // Signed mode index for DFT bin m in [0, N).
  int mode(int m) const { return m < points_per_axis / 2 ? m : m - points_per_axis; }
  double wavenumber(int m) const { return std::numbers::pi * mode(m) / half_width; }

  bool operator==(const GridSpec&) const = default;
};

GridSpec make_grid(int dim, int points_per_axis, double half_width);

struct WaveField {
  GridSpec grid;
  std::vector<cplx> values;
  double time_stamp = 0.0;
  Formulation tag = Formulation::auxiliary;
};

struct RealField {
  GridSpec grid;
  std::vector<double> values;
};

WaveField make_wave(const GridSpec& g, Formulation tag = Formulation::auxiliary);
RealField make_real(const GridSpec& g);

// Position of a flat index (second component is 0 in 1D).
Vec2 node_position(const GridSpec& g, std::int64_t idx);

// Sample a pointwise function at the grid nodes. Throws if the function
// produces a non-finite value (the offending coordinates are reported).
WaveField sample(const GridSpec& g, const std::function<cplx(const Vec2&)>& fn,
                 Formulation tag = Formulation::auxiliary);
RealField sample_real(const GridSpec& g, const std::function<double(const Vec2&)>& fn);

// Largest |u| on the x = -L face(s); the periodic-box decay monitor.
double boundary_max_abs(const WaveField& f);
double boundary_max_abs(const RealField& f);

double sup_abs(const WaveField& f);
double sup_abs(const RealField& f);
bool all_finite(const WaveField& f);
bool all_finite(const RealField& f);

// CFD1 binary dump: magic "CFDUMP01", little-endian u32 dim, u32
// points_per_axis, f64 half_width, f64 time_stamp, u8 formulation tag, then
// interleaved f64 (re, im) in row-major order.
void write_cfd1(const std::string& path, const WaveField& f);
WaveField read_cfd1(const std::string& path);

}  // namespace nlslab
