// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

namespace gnse {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares y = intercept + slope * x (needs >= 2 points).
LineFit fit_line(std::span<const double> x, std::span<const double> y);

double median(std::vector<double> values);

/// n log-spaced points from lo to hi inclusive.
std::vector<double> logspace(double lo, double hi, int n);

}  // namespace gnse
