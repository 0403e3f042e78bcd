// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gnse/decay.hpp"
#include "gnse/params.hpp"

namespace gnse {

/// Run configuration. INI text with one section per module; see
/// docs/config.md for keys, defaults and constraints.
struct RunConfig {
  RegimeParams regime{2, 1.0, -0.5};
  int n = 256;
  int m = 64;

  Distribution distribution = Distribution::kGaussian;
  std::uint64_t seed = 1;
  int ensemble_size = 1;
  double amplitude = 1e-2;

  double tau = 0.05;
  int picard_nodes = 33;
  double picard_tol = 1e-8;
  int picard_max_iter = 30;

  double dt0 = 0.005;
  double dt_growth = 0.01;
  Scheme scheme = Scheme::kExpMidpoint;
  double T_max = 1000.0;
  int output_stride = 0;
  int output_points = 60;
  int checkpoint_every = 0;
  double cfl = 1.0;
  bool cfl_limit = false;

  std::optional<double> fit_lo;
  std::optional<double> fit_hi;
  RadiusLaw radius = RadiusLaw::kAlgebraic;

  std::string workdir = ".";

  EnsembleConfig ensemble() const;
  PicardConfig picard() const;
  StepperConfig stepper() const;
  /// Canonical INI rendering; parse_config(to_ini()) reproduces the config.
  std::string to_ini() const;
};

/// Parses and validates; unknown sections or keys are rejected.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Cross-checks every field; throws kInvalidConfig naming the offending key.
void validate_config(const RunConfig& config);

}  // namespace gnse
