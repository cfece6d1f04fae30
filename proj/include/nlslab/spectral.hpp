// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0
//
// Spectral calculus on periodic grids: transforms, exact differentiation of
// the trigonometric interpolant, Sobolev norms, the 2/3-rule low-pass, and
// chirp-z resampling of fields onto dilated grids.
//
// Conventions: coefficients c_m = (1/N^d) sum_j u_j e^{-2 pi i m.j/N}; the
// interpolant is u(x) = sum_m c_m e^{i k_m.(x+L)} with k_m = (pi/L) m_signed.
#pragma once

#include <vector>

#include "nlslab/grid.hpp"

namespace nlslab::spectral {

enum class NormKind { L2, Linf, Hs };

void forward_inplace(std::vector<cplx>& v, const GridSpec& g);  // unnormalized
void inverse_inplace(std::vector<cplx>& v, const GridSpec& g);  // 1/N^d
std::vector<cplx> coefficients(const WaveField& f);
std::vector<cplx> coefficients(const RealField& f);

std::vector<WaveField> gradient(const WaveField& f);
std::vector<RealField> gradient(const RealField& f);
WaveField laplacian(const WaveField& f);
RealField laplacian(const RealField& f);

double norm(const WaveField& f, NormKind kind, double s = 0.0);
double norm(const RealField& f, NormKind kind, double s = 0.0);
double l2(const WaveField& f);
double l2(const RealField& f);
// L2 computed from Fourier coefficients (Parseval cross-check).
double l2_fourier(const WaveField& f);

// L2 norm of the difference without forming an intermediate field.
double l2_distance(const WaveField& a, const WaveField& b);
double l2_distance(const RealField& a, const RealField& b);

// 2/3-rule: zero coefficients with |mode| > N/3 on any axis.
void dealias_inplace(WaveField& f);
void dealias_inplace(RealField& f);
void dealias_spectrum(std::vector<cplx>& coeffs, const GridSpec& g);

// Evaluate the trigonometric interpolant of `src` at the nodes of `tgt`
// scaled by 1/stretch: result(x) = src(x/stretch). Points with |x/stretch|
// outside the source box evaluate to zero (fields here decay rapidly).
WaveField resample_scaled(const WaveField& src, const GridSpec& tgt, double stretch);
RealField resample_scaled(const RealField& src, const GridSpec& tgt, double stretch);

// Chirp-z evaluation of a 1D interpolant at y_t = y0 + t*dy, t = 0..m-1.
// `coeffs` are the c_m in DFT bin order for a length-n axis of half-width L.
std::vector<cplx> czt_eval_1d(const std::vector<cplx>& coeffs, double half_width,
                              double y0, double dy, int m);

}  // namespace nlslab::spectral
