// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "gnse/error.hpp"
#include "gnse/grid.hpp"
#include "gnse/params.hpp"

namespace gnse {

struct PicardConfig {
  double tau = 0.1;
  /// Number of time nodes M + 1; node j sits at tau (j / M)^2.
  int nodes = 129;
  int max_iter = 20;
  double tol_residual = 1e-8;
  /// Residual norm; defaults to classify_yspace of the regime.
  std::optional<YSpaceCase> norm_case;
  /// Measure residuals in the L^a_t L^p_x component only.
  bool uniqueness_norm = false;
};

struct PicardResult {
  Trajectory w;
  std::vector<double> residuals;
  std::vector<double> contraction_ratios;
  double h_norm = 0.0;
  double first_iterate_norm = 0.0;
  bool converged = false;
  int iterations = 0;
  double tau = 0.0;
};

/// Thrown when residuals grow for three consecutive iterations or turn
/// non-finite; carries ||h||_{Y_tau} so the caller can shrink tau.
class PicardDivergence : public Error {
 public:
  PicardDivergence(const std::string& what, double h_norm, std::vector<double> residuals)
      : Error(ErrorKind::kDiverged, what), h_norm_(h_norm), residuals_(std::move(residuals)) {}
  double h_norm() const { return h_norm_; }
  const std::vector<double>& residuals() const { return residuals_; }

 private:
  double h_norm_;
  std::vector<double> residuals_;
};

std::vector<double> picard_nodes(double tau, int nodes);

/// int_0^t e^{-(t - t')L} F(t') dt' at every node of `integrand` by the
/// exponential trapezoid rule: the kernel is exact, F is piecewise linear.
Trajectory duhamel_integrate(const Trajectory& integrand, double alpha);

/// M(f, g) with B evaluated at the nodes.
Trajectory duhamel_bilinear(const Trajectory& f, const Trajectory& g, double alpha);

/// K(w) = -M(w + h, w + h), equal by bilinearity to
/// -[M(w,w) + M(w,h) + M(h,w) + M(h,h)].
Trajectory apply_K(const Trajectory& w, const Trajectory& h, double alpha);

/// Norm used for residuals: the Y-space of the regime, or its L^a_t L^p_x part.
std::vector<NormSpec> picard_norm(const RegimeParams& regime, const PicardConfig& config);
double picard_norm_value(const Trajectory& traj, const RegimeParams& regime, const PicardConfig& config);

/// Picard iteration w <- K(w) from w = 0 on the nodes of `h`.
PicardResult picard_solve(const Trajectory& h, const RegimeParams& regime, const PicardConfig& config);

/// Builds the exact heat flow of `datum` on picard_nodes and solves; on
/// divergence halves tau, up to `max_halvings` times.
PicardResult picard_solve_auto(const SpectralField& datum, const RegimeParams& regime,
                               PicardConfig config, int max_halvings = 8);

/// Empirical C_K sample
/// ||K(w1) - K(w2)|| / (||w1 - w2|| (||w1|| + ||w2|| + ||h||)) in the Picard norm.
double contraction_probe(const Trajectory& w1, const Trajectory& w2, const Trajectory& h,
                         const RegimeParams& regime, const PicardConfig& config);

}  // namespace gnse
