// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0

#include "nlslab/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlslab/kernels.hpp"
#include "nlslab/spectral.hpp"

namespace nlslab {

PhysParams make_params(double eps, double k, int n_dim, int sigma, bool allow_critical)
{
  if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("params: eps must lie in (0,1]");
  if (!(k > 0.0)) throw std::invalid_argument("params: k must be positive");
  if (n_dim < 1) throw std::invalid_argument("params: n must be >= 1");
  if (sigma < 1) throw std::invalid_argument("params: sigma must be >= 1");
  if (k >= n_dim && !allow_critical)
    throw std::invalid_argument("params: not supercritical (k >= n); pass the critical override");

  PhysParams p;
  p.eps = eps;
  p.k = k;
  p.n_dim = n_dim;
  p.sigma = sigma;
  p.alpha = k * sigma;
  p.gamma = k / n_dim;
  const double ns = static_cast<double>(n_dim) * sigma;
  p.beta = ns > 1.0 ? (p.alpha - 1.0) / (ns - 1.0) : std::numeric_limits<double>::quiet_NaN();
  p.hbar = std::pow(eps, 1.0 - p.gamma);
  p.t0 = std::pow(eps, p.gamma);
  p.supercritical = (n_dim > k) && (k > 1.0);
  return p;
}

PhysParams params_from_hbar(double hbar, double k, int n_dim, int sigma)
{
  if (!(hbar > 0.0) || hbar > 1.0) throw std::invalid_argument("params: hbar must lie in (0,1]");
  const double gamma = k / n_dim;
  if (!(gamma < 1.0)) throw std::invalid_argument("params: hbar parameterization needs k < n");
  const double eps = std::pow(hbar, 1.0 / (1.0 - gamma));
  return make_params(eps, k, n_dim, sigma);
}

double layer_exponent(const PhysParams& p, int j)
{
  if (j < 1) throw std::invalid_argument("layer_exponent: j must be >= 1");
  const double ja = j * p.alpha;
  const double jns = static_cast<double>(j) * p.n_dim * p.sigma;
  return (ja - 1.0) / (jns - 1.0);
}

Nonlinearity builtin_nonlinearity(BuiltinNl which)
{
  Nonlinearity nl;
  switch (which) {
    case BuiltinNl::cubic:
      nl.label = "cubic";
      nl.f = [](double y) { return y; };
      nl.f_prime = [](double) { return 1.0; };
      nl.f_second = [](double) { return 0.0; };
      nl.F_antideriv = [](double y) { return 0.25 * y * y * y * y; };
      break;
    case BuiltinNl::saturated_cubic:
      nl.label = "saturated_cubic";
      nl.f = [](double y) { return y / (1.0 + y); };
      nl.f_prime = [](double y) {
        const double d = 1.0 + y;
        return 1.0 / (d * d);
      };
      nl.f_second = [](double y) {
        const double d = 1.0 + y;
        return -2.0 / (d * d * d);
      };
      // F(y) = (y^2 - log(1 + y^2)) / 2
      nl.F_antideriv = [](double y) { return 0.5 * (y * y - std::log1p(y * y)); };
      break;
  }
  return nl;
}

Nonlinearity builtin_nonlinearity(const std::string& label)
{
  if (label == "cubic") return builtin_nonlinearity(BuiltinNl::cubic);
  if (label == "saturated_cubic") return builtin_nonlinearity(BuiltinNl::saturated_cubic);
  if (label == "zero") return zero_nonlinearity();
  throw std::invalid_argument("nonlinearity: unknown label '" + label + "'");
}

Nonlinearity zero_nonlinearity()
{
  Nonlinearity nl;
  nl.label = "zero";
  nl.f = [](double) { return 0.0; };
  nl.f_prime = [](double) { return 0.0; };
  nl.f_second = [](double) { return 0.0; };
  nl.F_antideriv = [](double) { return 0.0; };
  return nl;
}

void validate_nonlinearity(const Nonlinearity& nl, double y_max)
{
  if (nl.f(0.0) != 0.0) throw std::runtime_error("nonlinearity: f(0) != 0");
  const int samples = 64;
  const double h = 1e-5;
  for (int i = 0; i <= samples; ++i) {
    const double y = y_max * i / samples;
    if (!(nl.f_prime(y) > 0.0))
      throw std::runtime_error("nonlinearity: f' not positive at y = " + std::to_string(y));
    const double fd = (nl.f(y + h) - nl.f(y - h)) / (2.0 * h);
    if (std::abs(nl.f_prime(y) - fd) > 1e-6)
      throw std::runtime_error("nonlinearity: f' finite-difference check failed at y = " +
                               std::to_string(y));
  }
}

double energy(const WaveField& u, const PhysParams& p, const Nonlinearity& nl)
{
  if (u.tag != Formulation::physical_u)
    throw std::invalid_argument("energy: field must be tagged physical_u");
  const auto grad = spectral::gradient(u);
  const double cell = std::pow(u.grid.spacing(), u.grid.dim);
  double kin_sum = 0.0;
  for (const auto& g : grad) {
    const cplx* gv = g.values.data();
    kin_sum += kernels::block_sum(u.grid.size(),
                                  [=](std::int64_t i) { return std::norm(gv[i]); });
  }
  const double kin = 0.5 * p.eps * p.eps * cell * kin_sum;
  const double ek = std::pow(p.eps, p.k);
  const cplx* uv = u.values.data();
  const double pot_sum = kernels::block_sum(
      u.grid.size(), [&, uv](std::int64_t i) { return nl.G(ek * std::norm(uv[i])); });
  return kin + cell * pot_sum / ek;
}

double energy_conformal(const WaveField& psi, const PhysParams& p, const Nonlinearity& nl)
{
  if (psi.tag != Formulation::conformal_psi)
    throw std::invalid_argument("energy_conformal: field must be tagged conformal_psi");
  const double tau = psi.time_stamp;
  if (!(tau > 0.0)) throw std::invalid_argument("energy_conformal: conformal time must be positive");
  const auto grad = spectral::gradient(psi);
  const GridSpec& g = psi.grid;
  const double cell = std::pow(g.spacing(), g.dim);
  const double ht = p.hbar * tau;

  // |(hbar tau grad + i xi) psi|^2 summed over axes: this is |eps grad u|^2
  // transported through the conformal change of variables.
  double kin_sum = 0.0;
  for (int axis = 0; axis < g.dim; ++axis) {
    const cplx* dv = grad[static_cast<std::size_t>(axis)].values.data();
    const cplx* pv = psi.values.data();
    kin_sum += kernels::block_sum(g.size(), [&, dv, pv](std::int64_t i) {
      const Vec2 x = node_position(g, i);
      const cplx term = ht * dv[i] + cplx{0.0, x[static_cast<std::size_t>(axis)]} * pv[i];
      return std::norm(term);
    });
  }
  const double kin = 0.5 * cell * kin_sum;
  const double tn = std::pow(tau, p.n_dim);
  const cplx* pv = psi.values.data();
  const double pot_sum = kernels::block_sum(
      g.size(), [&, pv](std::int64_t i) { return nl.G(tn * std::norm(pv[i])); });
  return kin + cell * pot_sum / tn;
}

double energy_rescaled(const WaveField& phi, const PhysParams& p, const Nonlinearity& nl)
{
  if (phi.tag != Formulation::rescaled_phi)
    throw std::invalid_argument("energy_rescaled: field must be tagged rescaled_phi");
  const auto grad = spectral::gradient(phi);
  const double cell = std::pow(phi.grid.spacing(), phi.grid.dim);
  double kin_sum = 0.0;
  for (const auto& g : grad) {
    const cplx* gv = g.values.data();
    kin_sum += kernels::block_sum(phi.grid.size(),
                                  [=](std::int64_t i) { return std::norm(gv[i]); });
  }
  const double kin = 0.5 * p.hbar * p.hbar * cell * kin_sum;
  const cplx* pv = phi.values.data();
  const double pot_sum = kernels::block_sum(
      phi.grid.size(), [&, pv](std::int64_t i) { return nl.G(std::norm(pv[i])); });
  return kin + cell * pot_sum;
}

}  // namespace nlslab
