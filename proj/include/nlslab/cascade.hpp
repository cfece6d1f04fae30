// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0
//
// The formal phase-shift cascade: recursive profiles g_j on an oversampled
// reference grid, the truncated phase sum, the associated approximant, and
// its measured residual. The recursion is
//   g_1 = -|a0|^{2 sigma},
//   g_j = -(1/2) sum_{p+q=j} grad g_p . grad g_q / ((p n sigma - 1)(q n sigma - 1)).
#pragma once

#include <functional>
#include <vector>

#include "nlslab/grid.hpp"
#include "nlslab/model.hpp"

namespace nlslab::cascade {

struct CascadeStack {
  std::vector<RealField> profiles;  // g_1 .. g_N on the reference grid
  RealField a0_sq_sigma;            // |a0|^{2 sigma}
  std::vector<double> sup_g;        // sup |g_j|
  PhysParams params;
  GridSpec ref_grid;
  int N = 0;
};

// Requires n*sigma > alpha > 1 (supercritical, linear WKB).
CascadeStack build_stack(const std::function<cplx(const Vec2&)>& a0, const PhysParams& p,
                         int N, const GridSpec& ref_grid);

// Weight of the j-th term: eps^{j alpha - 1} (1-t)^{1 - j n sigma} / (j n sigma - 1).
double term_coef(const CascadeStack& st, int j, double t, double eps);

// Continuum sup of the j-th phase term = |coef| * sup|g_j| (the dilation
// xi = x/(1-t) does not change the sup).
double term_sup(const CascadeStack& st, int j, double t, double eps);

// Truncated phase sum evaluated on the physical grid; g_j are resampled at
// xi = x/(1-t) by trigonometric interpolation. n_use < 0 means the full stack.
RealField phase_g_N(const CascadeStack& st, double t, double eps, const GridSpec& phys,
                    int n_use = -1);

// (1-t)^{-n/2} a0(x/(1-t)) exp(i |x|^2/(2 eps (t-1)) + i g_N^eps).
WaveField v_N(const CascadeStack& st, const std::function<cplx(const Vec2&)>& a0, double t,
              double eps, const GridSpec& phys, int n_use = -1);

// || i eps dt v_N + (eps^2/2) lap v_N - eps^alpha |v_N|^{2 sigma} v_N ||_L2,
// with dt taken by centered differencing at t +- delta, delta = 1e-6 (1-t).
double residual_norm(const CascadeStack& st, const std::function<cplx(const Vec2&)>& a0,
                     double t, double eps, const GridSpec& phys, int n_use = -1,
                     bool include_nonlinear = true);

// Closed form of the N = 1 residual (all four terms), for the term-by-term
// cross-check of the numerical residual. Needs g_2, so stack.N >= 2.
WaveField residual_closed_form_n1(const CascadeStack& st,
                                  const std::function<cplx(const Vec2&)>& a0, double t,
                                  double eps, const GridSpec& phys);

// Conformal-frame coefficient of the j-th term: g_j / (j n sigma - 1) on the
// reference grid. The mapped phase shift is sum_j tau^{jn-1} times this.
RealField conformal_phase_coeff(const CascadeStack& st, int j);

// (1/eps) int_0^t ||r_1(s)|| ds in closed form for the N = 1 approximant:
// the s-dependence of every term is a power of (1-s), so the integral
// reduces to profile norms times explicit layer factors. Needs g_2.
double residual_budget(const CascadeStack& st, const std::function<cplx(const Vec2&)>& a0,
                       double t, double eps);

}  // namespace nlslab::cascade
