// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0
//
// Physical parameters with their derived exponents, and the defocusing
// nonlinearity abstraction. Every scalar that appears in the scaling laws
// (alpha, gamma, beta, hbar, t0) is derived here and nowhere else.
#pragma once

#include <functional>
#include <string>

#include "nlslab/grid.hpp"

namespace nlslab {

struct PhysParams {
  double eps = 0.0;   // semiclassical parameter, in (0, 1]
  double k = 0.0;     // data-size exponent
  int n_dim = 1;      // space dimension n
  int sigma = 1;      // homogeneity exponent of f(y) = y^sigma runs
  double alpha = 0.0; // k * sigma
  double gamma = 0.0; // k / n
  double beta = 0.0;  // (alpha - 1) / (n sigma - 1); NaN when n sigma = 1
  double hbar = 0.0;  // eps^{1 - gamma}
  double t0 = 0.0;    // hbar^{gamma/(1-gamma)} = eps^gamma
  bool supercritical = false;  // n > k > 1
};

// Rejects k >= n unless allow_critical is set (critical-case experiments).
PhysParams make_params(double eps, double k, int n_dim, int sigma,
                       bool allow_critical = false);

// Parameters of the conformal-frame problem for a prescribed hbar.
PhysParams params_from_hbar(double hbar, double k, int n_dim, int sigma);

// (j*alpha - 1) / (j*n*sigma - 1): the j-th boundary-layer exponent.
double layer_exponent(const PhysParams& p, int j);

struct Nonlinearity {
  std::string label;
  std::function<double(double)> f;         // f(y), y = squared modulus scale
  std::function<double(double)> f_prime;
  std::function<double(double)> f_second;
  std::function<double(double)> F_antideriv;  // F(y) = int_0^y f(eta^2) eta d eta

  // G(rho) = int_0^rho f = 2 F(sqrt(rho)); the energy density uses this.
  double G(double rho) const { return 2.0 * F_antideriv(std::sqrt(rho)); }
};

enum class BuiltinNl { cubic, saturated_cubic };

Nonlinearity builtin_nonlinearity(BuiltinNl which);
Nonlinearity builtin_nonlinearity(const std::string& label);
// f == 0 linear baseline, for injecting into solvers in tests.
Nonlinearity zero_nonlinearity();

// f(0) = 0, sampled f' > 0 on [0, y_max], finite-difference consistency of
// f' at 1e-6 with h = 1e-5. Throws on violation.
void validate_nonlinearity(const Nonlinearity& nl, double y_max);

// Conserved energy of the physical flow:
//   (1/2) ||eps grad u||_L2^2 + eps^{-k} int G(eps^k |u|^2) dx.
double energy(const WaveField& u, const PhysParams& p, const Nonlinearity& nl);

// The same invariant evaluated through the conformal change of variables,
// for trajectories integrated in the psi frame.
double energy_conformal(const WaveField& psi, const PhysParams& p, const Nonlinearity& nl);

// Invariant of the rescaled equation: (1/2)||hbar grad phi||^2 + int G(|phi|^2).
double energy_rescaled(const WaveField& phi, const PhysParams& p, const Nonlinearity& nl);

}  // namespace nlslab
