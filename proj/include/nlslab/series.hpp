// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0
//
// Closed-form small-time coefficients of the limit system and the physical
// frame approximant built from the integrated limit phase. The coefficients
// solve the order-by-order balance of the limit system:
//   (n-1) phi_1 + f'(0) |a0|^2 = 0
//   n a_1 + grad phi_1 . grad a0 + (a0/2) lap phi_1 = 0
//   (2n-1) phi_2 + |grad phi_1|^2/2 + 2 f'(0) Re(conj(a0) a1)
//                + (f''(0)/2) |a0|^4 = 0.
#pragma once

#include <functional>
#include <vector>

#include "nlslab/fit.hpp"
#include "nlslab/grenier.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/model.hpp"

namespace nlslab::series {

struct SeriesCoeffs {
  RealField phi1;
  WaveField a1;  // complex corrector of the amplitude
  RealField phi2;
};

SeriesCoeffs compute_coeffs(const std::function<cplx(const Vec2&)>& a0, const PhysParams& p,
                            const Nonlinearity& nl, const GridSpec& grid);

struct RemainderOrders {
  fit::LineFit phi_first_h0;   // || phi - t^{n-1} phi1 ||, expected slope 2n-1
  fit::LineFit phi_first_h1;
  fit::LineFit phi_second_h0;  // || phi - t^{n-1} phi1 - t^{2n-1} phi2 ||, slope 3n-1
  fit::LineFit phi_second_h1;
  fit::LineFit amp_h0;         // || a - a0 - t^n a1 ||, expected slope 2n
  fit::LineFit amp_h1;
  double phi2_fitted_origin = 0.0;  // t^{2n-1} coefficient of phi at x = 0
  std::vector<double> t_samples;
};

RemainderOrders series_remainder_order(const std::function<cplx(const Vec2&)>& a0,
                                       const PhysParams& p, const Nonlinearity& nl,
                                       const std::vector<double>& t_samples,
                                       const GridSpec& grid, double dt = 2.5e-4);

// Limit phase provider for the theorem approximant: integrates the limit
// system once, recording at the requested conformal times; below the series
// switch the two-term expansion is used instead of the integrator.
class LimitPhase {
 public:
  static constexpr double kSeriesSwitch = 0.05;

  LimitPhase(const std::function<cplx(const Vec2&)>& a0, const PhysParams& p,
             const Nonlinearity& nl, const GridSpec& grid,
             const std::vector<double>& taus_needed, double dt = 1e-3);

  RealField phase_at(double tau) const;
  double max_time() const { return t_available_; }
  const GridSpec& grid() const { return grid_; }

 private:
  GridSpec grid_;
  SeriesCoeffs coeffs_;
  int n_dim_;
  std::vector<grenier::HydroState> records_;
  double t_available_ = 0.0;
};

// v(t,x) = (1-t)^{-n/2} a0(x/(1-t)) e^{i|x|^2/(2 eps (t-1))}
//          exp(i eps^{gamma-1} phi(eps^gamma/(1-t), x/(1-t))).
WaveField theorem_approximant(const std::function<cplx(const Vec2&)>& a0, const PhysParams& p,
                              double t, const GridSpec& phys, const LimitPhase& phase);

}  // namespace nlslab::series
