// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gnse/grid.hpp"
#include "gnse/norm_spec.hpp"
#include "gnse/params.hpp"
#include "gnse/randomization.hpp"

namespace gnse {

/// coeff(xi) <- exp(-t |xi|^{2 alpha}) coeff(xi).
SpectralField heat_propagate(const SpectralField& field, double t, double alpha);

/// Exact free evolution of a fixed datum; caches |xi|^{2 alpha}.
class HeatFlow {
 public:
  HeatFlow(SpectralField datum, double alpha);

  const SpectralField& datum() const { return datum_; }
  double alpha() const { return alpha_; }
  const Grid& grid() const { return datum_.grid(); }
  SpectralField at(double t) const;
  /// Per-mode symbol |xi|^{2 alpha}.
  std::span<const double> symbol() const { return symbol_; }

 private:
  SpectralField datum_;
  double alpha_ = 1.0;
  std::vector<double> symbol_;
};

Trajectory heat_trajectory(const SpectralField& datum, std::span<const double> times, double alpha);

/// Resolved window [(dx)^{2 alpha}, 0.25 m^{2 alpha}] of a grid.
std::pair<double, double> resolved_window(const Grid& grid, double alpha);
/// Throws kWindowUnresolved unless lo < hi and [lo, hi] lies in resolved_window.
void require_resolved(const Grid& grid, double alpha, std::pair<double, double> window);

struct SlopeFit {
  double slope = 0.0;
  double predicted = 0.0;
  double r2 = 0.0;
  std::vector<double> times;
  std::vector<double> values;
};

/// -nu/(2 alpha) - (d/(2 alpha)) (1/q - 1/p).
double smoothing_prediction(int d, double alpha, double nu, double p, double q);

/// Fits the smoothing exponent of Lambda^nu e^{-tL}: L^q -> L^p.
///
/// At each sample time t the test function is a scalar Gaussian bump of width
/// 0.5 t^{1/(2 alpha)}, matched to the kernel, and the fitted quantity is
/// ||Lambda^nu e^{-tL} f_t||_p / ||f_t||_q. A fixed-width bump would only
/// probe the L^1 -> L^p rate once t^{1/(2 alpha)} exceeds its width.
SlopeFit smoothing_slope(double alpha, double nu, double p, double q, const Grid& grid,
                         std::pair<double, double> t_window, int samples = 12);

/// Default window for smoothing_slope: [(4 dx)^{2 alpha}, 0.25 m^{2 alpha}].
std::pair<double, double> smoothing_window(const Grid& grid, double alpha);

/// Checks the hypotheses of the randomized heat-flow moment bound for the norm
/// L^{a'}_{rho;T} W^{eta,p}: p in [2, r_s], a' in [2, r_s] or a' = inf,
/// eta - 2 alpha rho - 2 alpha / a' <= s, rho a' > -1, and eta >= s.
/// Returns the predicted exponent sigma.
double moment_scaling_prediction(const RegimeParams& regime, const NormSpec& norm);

struct MomentScalingOptions {
  double amplitude = 1.0;
  RandomSpec random{};
  int nodes = 48;
};

struct MomentScalingResult {
  double sigma_hat = 0.0;
  double sigma = 0.0;
  double r_s = 0.0;
  double r2 = 0.0;
  std::vector<double> T_values;
  std::vector<double> moments;
  /// Norms of every member at the largest T.
  std::vector<double> last_samples;
  /// Log-log slope of the empirical tail P(X >= lambda) over its upper half.
  double tail_slope = 0.0;
  std::vector<double> tail_lambda;
  std::vector<double> tail_prob;
};

/// Monte Carlo (E ||h^omega||^{r_s})^{1/r_s} at each T, fitted against T.
/// Node times in [0, T] are clustered quadratically toward t = 0.
MomentScalingResult hflow_moment_scaling(const RegimeParams& regime, const Grid& grid,
                                         const NormSpec& norm, std::span<const double> T_values,
                                         int ensemble_size, const MomentScalingOptions& options = {});

}  // namespace gnse
