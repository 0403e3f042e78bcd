// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gnse/grid.hpp"
#include "gnse/semigroup.hpp"

namespace gnse {

enum class Scheme { kExpEuler = 1, kExpMidpoint = 2 };

/// Returns h(t); an empty provider means h == 0.
using HeatProvider = std::function<SpectralField(double)>;

HeatProvider heat_provider(const HeatFlow& flow);

struct StepperConfig {
  double dt = 0.01;
  /// If positive, dt at time t is max(dt, dt_growth * t).
  double dt_growth = 0.0;
  Scheme scheme = Scheme::kExpMidpoint;
  /// Record every `output_stride` steps (0: only required times and T).
  int output_stride = 0;
  /// Times at which the stepper lands exactly and records output.
  std::vector<double> output_times;
  bool monitors = true;
  /// Advisory bound dt <= cfl * dx / max|u|; violations are counted.
  double cfl = 1.0;
  /// Cap dt at the advisory bound instead of only counting violations.
  bool cfl_limit = false;
  /// Test hook: drop the nonlinear terms.
  bool nonlinear = true;
  int checkpoint_every = 0;
  std::function<void(double, const SpectralField&)> checkpoint;
};

/// One ledger row per step [t_n, t_n + dt]; `t` is the right endpoint,
/// l2w_sq is ||w(t)||^2, the remaining terms average both endpoints.
struct LedgerRow {
  double t = 0.0;
  double dt = 0.0;
  double l2w_sq = 0.0;
  double hal_w_sq = 0.0;
  double flux_wwh = 0.0;
  double flux_hwh = 0.0;
  /// (||w(t)||^2 - ||w(t - dt)||^2) / dt.
  double dwdt = 0.0;
  /// |dwdt + 2 hal_w_sq - 2 (flux_wwh + flux_hwh)|.
  double energy_residual = 0.0;
};

struct EnergyLedger {
  std::vector<LedgerRow> rows;

  static const char* csv_header();
  std::string csv() const;
};

struct SimulationResult {
  Trajectory trajectory;
  EnergyLedger ledger;
  double max_divergence = 0.0;
  long steps = 0;
  long cfl_warnings = 0;
};

/// w(t + dt) for dw/dt + L w = -B(w + h, w + h). The linear part is exact;
/// scheme 1 is exponential Euler, scheme 2 the two-stage exponential
/// Runge-Kutta method with c2 = 1/2 (stiff order 2). Output is projected and
/// mean-free. Throws kBlowUp on non-finite values.
SpectralField step_w(const SpectralField& w, double t, const HeatProvider& h, double dt, double alpha,
                     Scheme scheme, bool nonlinear = true);

SimulationResult simulate(const SpectralField& initial, double t0, double T, const StepperConfig& config,
                          const RegimeParams& regime, const HeatProvider& h = {});

struct GlueResult {
  Trajectory trajectory;
  /// max over shared nodes in [tau/2, tau] of ||w1 - w2|| / ||w1|| in L^2.
  double discrepancy = 0.0;
  std::size_t compared = 0;
};

/// Picard solution on [0, tau] followed by the long run beyond tau.
GlueResult glue(const Trajectory& w_picard, const Trajectory& w_long);

}  // namespace gnse
