// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0

#include "nlslab/fit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nlslab::fit {

LineFit linear_fit(const std::vector<double>& x, const std::vector<double>& y)
{
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit: need at least two matching samples");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit: degenerate abscissae");
  LineFit out;
  out.slope = (n * sxy - sx * sy) / denom;
  out.intercept = (sy - out.slope * sx) / n;
  const double ss_tot = syy - sy * sy / n;
  double ss_res = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (out.slope * x[i] + out.intercept);
    ss_res += r * r;
  }
  out.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return out;
}

LineFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y)
{
  std::vector<double> lx, ly;
  lx.reserve(x.size());
  ly.reserve(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw std::invalid_argument("loglog_fit: samples must be positive");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return linear_fit(lx, ly);
}

double crossing_loglog(const std::vector<double>& x, const std::vector<double>& y, double y_star)
{
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("crossing: need at least two samples");
  for (std::size_t i = x.size() - 1; i > 0; --i) {
    const double ya = y[i - 1], yb = y[i];
    const bool between = (ya - y_star) * (yb - y_star) <= 0.0 && ya != yb;
    if (between && ya > 0 && yb > 0 && x[i - 1] > 0 && x[i] > 0) {
      const double t = (std::log(y_star) - std::log(ya)) / (std::log(yb) - std::log(ya));
      return std::exp(std::log(x[i - 1]) + t * (std::log(x[i]) - std::log(x[i - 1])));
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace nlslab::fit
