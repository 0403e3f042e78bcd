// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gnse/evolution.hpp"
#include "gnse/grid.hpp"
#include "gnse/mild_solver.hpp"
#include "gnse/params.hpp"
#include "gnse/randomization.hpp"

namespace gnse {

using Window = std::pair<double, double>;

struct DecayFitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double r2 = 0.0;
  Window window{0.0, 0.0};
  double predicted = std::numeric_limits<double>::quiet_NaN();
  std::size_t points = 0;
};

/// Least squares of log(value) against log(t) over points with t in `window`.
/// Needs >= 10 such points, all with value > 0.
DecayFitResult fit_decay(std::span<const double> t, std::span<const double> values, Window window,
                         double predicted = std::numeric_limits<double>::quiet_NaN());

/// L^d sum over |xi| <= radius of |coeff(xi)|^2.
double ball_energy(const SpectralField& field, double radius);

enum class RadiusLaw { kAlgebraic, kCriticalLog };

const char* to_string(RadiusLaw law);

/// Algebraic: (d / t)^{1/(2 alpha)}. Critical log: ((2/3) t ln t)^{-1/(2 alpha)}, t > e.
double splitting_radius(RadiusLaw law, int d, double alpha, double t);

struct SplittingRecord {
  double t = 0.0;
  double radius = 0.0;
  double ball = 0.0;
  double total = 0.0;
  double ratio = 0.0;
};

struct SplittingDiagnostic {
  RadiusLaw law = RadiusLaw::kAlgebraic;
  std::vector<SplittingRecord> records;
  /// Slope of log ||w||^2 against log ln t (critical-log law only).
  std::optional<DecayFitResult> log_fit;
};

/// Ball energies at every node with t > 0 (t > e for the log law). The log fit
/// uses nodes in `fit_window` when given, otherwise all nodes with t > e.
SplittingDiagnostic splitting_report(const Trajectory& w, const RegimeParams& regime, RadiusLaw law,
                                     std::optional<Window> fit_window = std::nullopt);

struct PointwiseReport {
  double max_ratio = 0.0;
  double at_time = 0.0;
  double at_xi = 0.0;
  std::size_t nodes = 0;
};

/// max over nodes t > T0 and xi != 0 of
/// L^d |coeff_w(t, xi)| / (|xi| (int_{T0}^t ||w||^2 + t^{1 + s/alpha})),
/// the time integral by the trapezoid rule over nodes >= T0.
PointwiseReport pointwise_bound_check(const Trajectory& w, const RegimeParams& regime, double T0);

/// True if the two maxima agree within a factor `factor`.
bool pointwise_stable(const PointwiseReport& a, const PointwiseReport& b, double factor = 3.0);

struct EnergyMonitor {
  double C = 0.0;
  double T0 = 0.0;
  bool T0_found = false;
  double exponent = 0.0;
  std::size_t rows_after = 0;
  std::size_t rows_holding = 0;
  double fraction = 0.0;
};

/// Energy-derivative inequality dwdt + hal_w_sq <= C t^{gamma}, with
/// gamma = energy_forcing_exponent. C is the largest ratio over ledger rows in
/// `calibration`; T0 is the first row time >= e starting `run` consecutive
/// rows that satisfy the inequality.
EnergyMonitor energy_monitor(const EnergyLedger& ledger, const RegimeParams& regime,
                             Window calibration = {2.718281828459045, 10.0}, int run = 20);

struct EnsembleConfig {
  RegimeParams regime;
  int n = 256;
  int m = 64;
  double amplitude = 1.0;
  Distribution distribution = Distribution::kGaussian;
  std::vector<std::uint64_t> seeds{1};
  std::uint64_t member = 0;
  double T_max = 1000.0;
  PicardConfig picard{0.05, 33, 30, 1e-8, std::nullopt, false};
  StepperConfig stepper{};
  int output_points = 60;
  std::optional<Window> fit_window;
  RadiusLaw radius_law = RadiusLaw::kAlgebraic;
  int jobs = 1;
};

struct SeedRun {
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double tau = 0.0;
  int picard_iterations = 0;
  double picard_residual = 0.0;
  double glue_discrepancy = 0.0;
  std::vector<double> times;
  std::vector<double> u_sq, w_sq, h_sq;
  EnergyLedger ledger;
  EnergyMonitor monitor;
  Window window{0.0, 0.0};
  bool under_resolved = false;
  DecayFitResult u_fit, w_fit, h_fit;
  SplittingDiagnostic splitting;
  PointwiseReport pointwise;
  double max_divergence = 0.0;
  long steps = 0;
  long cfl_warnings = 0;

  std::string series_csv() const;
};

struct EnsembleResult {
  std::vector<SeedRun> runs;
  DecaySlopes predicted;
  double median_u = 0.0;
  double median_w = 0.0;
  double median_h = 0.0;
  std::size_t failures = 0;
};

/// One seed: randomize, Picard on [0, tau], evolve from the Picard node
/// nearest tau/2 to T_max, glue, fit. Failures are recorded, not thrown.
SeedRun run_seed(const EnsembleConfig& config, std::uint64_t seed);

/// Seeds run on up to `jobs` threads; `on_seed` is called as each finishes.
EnsembleResult run_ensemble(const EnsembleConfig& config,
                            const std::function<void(const SeedRun&)>& on_seed = {});

}  // namespace gnse
