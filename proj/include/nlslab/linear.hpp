// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0
//
// Exact and WKB solutions of the linear flow: the Fourier-multiplier
// propagator, the geometric-optics profile (1-t)^{-n/2} a0(x/(1-t)) with its
// quadratic phase, the closed-form Gaussian beam used as oracle, a direct
// quadrature of the Fresnel integral for cross-checks, and the boundary-layer
// error scan with its fitted scaling exponents.
#pragma once

#include <functional>
#include <vector>

#include "nlslab/fit.hpp"
#include "nlslab/grid.hpp"

namespace nlslab::linear {

struct LinearWkbProfile {
  double eps = 0.0;
  std::function<cplx(const Vec2&)> a0;
};

// Exact discrete free flow over a duration t (valid for any t, including
// through the focus).
WaveField free_propagate(const WaveField& init, double eps, double t);

// (1-t)^{-n/2} a0(x/(1-t)) exp(i|x|^2 / (2 eps (t-1))), 0 <= t < 1.
WaveField wkb_linear(const LinearWkbProfile& profile, const GridSpec& grid, double t);

// Free evolution of the chirped unit Gaussian a0 = exp(-|x|^2/2): complex
// width mu(t) = (1-t) + i eps t, u = mu^{-n/2} exp(-(1 + i/eps)|x|^2/(2 mu)).
cplx gaussian_beam_value(double eps, double t, const Vec2& x, int dim);
WaveField gaussian_beam(double eps, double t, const GridSpec& grid);

// Adaptive Simpson evaluation of the 1D oscillatory integral form of the
// free solution; used only to cross-check the Gaussian beam formula.
cplx fresnel_quadrature_1d(const std::function<cplx(double)>& a0, double eps, double t,
                           double x, double half_range);

struct LayerErrorRow {
  double eps = 0.0;
  double t = 0.0;
  double l2_error = 0.0;
};

struct LayerErrorTable {
  std::vector<LayerErrorRow> rows;
  fit::LineFit fit_eps;    // slope of log(err) vs log(eps) at fixed 1-t
  fit::LineFit fit_layer;  // slope of log(err) vs log(1-t) at fixed eps
  double fixed_layer = 0.0;
  double fixed_eps = 0.0;
};

// || u_lin(t) - v_lin(t) ||_L2 for one (eps, t). Both solutions are carried
// through the (exactly unitary) lens change of frame, where the free flow of
// the chirped data is the near-identity flow exp(i (eps t / (1-t)) Delta / 2)
// acting on a0: the error is computable at any eps on a fixed grid.
double layer_error(const WaveField& a0_field, double eps, double t);

// Same quantity assembled directly in the physical frame (free_propagate vs
// wkb_linear); requires the chirp to be resolved, so it serves as the
// equivalence oracle for layer_error at moderate eps.
double layer_error_physical(const LinearWkbProfile& profile, const GridSpec& grid, double t);

LayerErrorTable linear_layer_error(const std::vector<double>& eps_list,
                                   const std::vector<double>& t_list,
                                   const std::function<cplx(const Vec2&)>& a0,
                                   const GridSpec& grid, double fixed_layer,
                                   double fixed_eps);

struct AmplitudeBoundScan {
  double C_fit = 0.0;              // max of sup|u| (eps + |t-1|)^{n/2} on the training grid
  double worst_validation = 0.0;   // max ratio on the validation grid
  std::vector<double> eps_used;
  std::vector<double> t_train;
  std::vector<double> t_validate;
};

// Sharp focal bound sup_x |u_lin| <= C / (eps + |t-1|)^{n/2}: fit C on a
// coarse (eps, t) grid spanning the focus, validate on the refined grid.
AmplitudeBoundScan amplitude_bound_scan(const std::vector<double>& eps_list,
                                        const std::function<cplx(const Vec2&)>& a0,
                                        const GridSpec& grid);

}  // namespace nlslab::linear
