// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0
//
// The semiclassical conformal transform and the focusing rescaling. Both are
// implemented as pure grid relabelings (metadata change + pointwise modulus-1
// chirp and Jacobian factor), so they preserve the discrete L2 norm exactly.
// Cross-frame comparisons resample once, at the final comparison step.
#pragma once

#include <functional>

#include "nlslab/grid.hpp"
#include "nlslab/model.hpp"

namespace nlslab::conformal {

// u(t,x) = (1-t)^{-n/2} psi(eps^gamma/(1-t), x/(1-t)) e^{i|x|^2/(2 eps (t-1))}.
WaveField to_conformal(const WaveField& u, const PhysParams& p, double t);
WaveField from_conformal(const WaveField& psi, const PhysParams& p);

// u(t,x) = eps^{-k/2} phi((t-1)/eps^gamma, x/eps^gamma).
WaveField to_rescaled(const WaveField& u, const PhysParams& p, double t);
WaveField from_rescaled(const WaveField& phi, const PhysParams& p);

// phi(s,y) = (-1/s)^{n/2} psi(-1/s, -y/s) e^{i|y|^2/(2 hbar s)} with s = -1/tau:
// the direct conformal-to-rescaled change of frames.
WaveField conformal_to_rescaled(const WaveField& psi, const PhysParams& p);

struct CrossCheckReport {
  double discrepancy = 0.0;      // L2 distance in the common frame
  double bound_physical = 0.0;   // Richardson error estimate of the physical run
  double bound_conformal = 0.0;  // Richardson error estimate of the conformal run
  double tolerance = 0.0;        // 2 x combined bound (with a roundoff floor)
  bool pass = false;
};

// Evolve the physical and conformal formulations independently to t_check and
// compare them in the physical frame at t_check. dt values are the coarse
// steps; each solver is paired with its dt/2 run for the error estimate.
CrossCheckReport cross_check_formulations(const PhysParams& p, const Nonlinearity& nl,
                                          const std::function<cplx(const Vec2&)>& a0,
                                          const GridSpec& grid, double t_check,
                                          double dt_physical, double dt_conformal);

}  // namespace nlslab::conformal
