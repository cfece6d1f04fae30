// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0
//
// Least-squares slope fitting for convergence-rate and scaling-law
// estimation, plus log-log crossing interpolation.
#pragma once

#include <vector>

namespace nlslab::fit {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LineFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Fit log y = slope * log x + b. All entries must be positive.
LineFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

// Given samples (x_i, y_i) with y crossing y_star somewhere, return the x of
// the crossing nearest to the largest x, interpolated linearly in log-log.
// Returns NaN when the series never crosses.
double crossing_loglog(const std::vector<double>& x, const std::vector<double>& y,
                       double y_star);

}  // namespace nlslab::fit
