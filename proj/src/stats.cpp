// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#include "gnse/stats.hpp"

#include <algorithm>
#include <cmath>

#include "gnse/error.hpp"

namespace gnse {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::kSizeMismatch, "fit_line: x/y mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw Error(ErrorKind::kEmptyWindow, "fit_line needs >= 2 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorKind::kEmptyWindow, "fit_line: degenerate abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - fit.intercept - fit.slope * x[i];
    sse += e * e;
  }
  fit.r2 = (syy == 0.0) ? 1.0 : std::max(0.0, 1.0 - sse / syy);
  fit.slope_stderr = n > 2 ? std::sqrt(sse / (n - 2) / sxx) : 0.0;
  return fit;
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorKind::kEmptyWindow, "median of empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * i / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace gnse
