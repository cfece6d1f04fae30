// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0
//
// Strang split-step pseudospectral integrator for the three formulations of
// the flow: the physical equation, the conformal-frame equation with its
// time-dependent coefficient, and the autonomous rescaled equation. The
// kinetic substep is the exact Fourier multiplier; the nonlinear substep is
// an exact pointwise phase rotation (the modulus is invariant), with the
// conformal coefficient frozen at the substep midpoint time.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nlslab/grid.hpp"
#include "nlslab/model.hpp"

namespace nlslab {

struct EvolutionSpec {
  Formulation formulation = Formulation::physical_u;
  PhysParams params;
  Nonlinearity nl;
  double t_start = 0.0;
  double t_end = 0.0;
  double dt = 0.0;
  std::vector<double> record_times;
  bool check_box_decay = true;
  double box_decay_tol = 1e-8;
};

struct DiagnosticsRow {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double sup_norm = 0.0;
};

struct Trajectory {
  std::vector<WaveField> snapshots;
  std::vector<DiagnosticsRow> diagnostics;
  std::int64_t steps = 0;
};

struct SolverAbort : std::runtime_error {
  SolverAbort(const std::string& what, double t_, std::int64_t step_)
      : std::runtime_error(what), t(t_), step(step_) {}
  double t;
  std::int64_t step;
};

// t^{-2} f(t^n y) with its continuous extension at t = 0 (n >= 2).
double singular_coef(const Nonlinearity& nl, int n_dim, double t, double y);

// Chirped data a0(x) e^{-i|x|^2/(2 eps)} on the grid, with the box-decay
// check on a0 at the boundary.
WaveField initial_data(const PhysParams& p, const std::function<cplx(const Vec2&)>& a0,
                       const GridSpec& grid, double decay_tol = 1e-8);

Trajectory evolve(const EvolutionSpec& spec, const WaveField& init);

// One Strang step; exposed so tests can drive forward/backward steps.
void strang_step(WaveField& u, const EvolutionSpec& spec, double t, double dt);

// Step-halving self-convergence data at t_end (no snapshots kept).
struct RichardsonResult {
  double diff_coarse = 0.0;  // ||u_dt - u_{dt/2}||
  double diff_fine = 0.0;    // ||u_{dt/2} - u_{dt/4}||
  double ratio = 0.0;        // -> 4 for a second-order scheme
  double err_finest = 0.0;   // estimated error of the dt/4 run
};
RichardsonResult richardson(const EvolutionSpec& spec, const WaveField& init);

// Evolve at dt and dt/2; returns the finer solution at t_end together with
// its estimated global L2 error (one third of the pair distance).
struct EstimatedSolution {
  WaveField field;
  double err_estimate = 0.0;
};
EstimatedSolution evolve_estimated(const EvolutionSpec& spec, const WaveField& init);

}  // namespace nlslab
