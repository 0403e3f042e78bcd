// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gnse/norm_spec.hpp"

namespace gnse {

/// Admissible parameters of the fractional Navier-Stokes problem:
/// dimension d >= 2, dissipation order alpha in (1/2, (d+2)/4] and
/// initial regularity s in (-alpha + (1-alpha)_+, 0).
struct RegimeParams {
  int d = 2;
  double alpha = 1.0;
  double s = -0.5;

  /// alpha = (d+2)/4, where scaling balances and weak solutions are unique.
  double critical_alpha() const { return (d + 2) / 4.0; }
  bool is_critical() const;
  /// Open lower endpoint of the admissible s interval.
  double s_lower() const;
};

/// Tolerance applied at open interval endpoints.
inline constexpr double kEndpointTol = 1e-14;

RegimeParams validate_regime(int d, double alpha, double s);

/// Closed-form exponent algebra for a valid regime.
struct DerivedExponents {
  double alpha = 0.0;
  double s = 0.0;
  int d = 0;
  double mu = 0.0;
  double a = 0.0;
  double b = 0.0;
  double p = 0.0;
  double q = 0.0;
  double lambda = 0.0;
  double r_s = 0.0;

  /// Time-scaling exponent of the randomized heat flow in
  /// L^{time_exponent}_{weight;T} W^{eta,p}: (s - (eta - 2 alpha rho - 2 alpha / a')) / (2 alpha).
  double sigma(double weight, double time_exponent, double eta) const;

  /// Smallest even integer 2n with 2n >= r_s.
  int moment_order() const;
};

DerivedExponents derive_exponents(const RegimeParams& regime);

enum class YCase { kY1 = 1, kY2 = 2, kY3 = 3, kY4 = 4 };

struct YSpaceCase {
  YCase id = YCase::kY1;
  std::vector<NormSpec> components;

  std::string name() const;
};

YSpaceCase classify_yspace(const RegimeParams& regime);

enum class XSpace { kX1 = 1, kX2 = 2 };

/// Constituent norms of X_{T,1} (weighted L^p, L^q) or X_{T,2}
/// (weighted L^inf_t L^2_x and L^2_t H^alpha_x).
std::vector<NormSpec> xspace_components(const RegimeParams& regime, XSpace which);

/// Lebesgue exponent of the extra Y4 component, 2d / (2 alpha (1-mu) - 2s - 3).
double y4_extra_exponent(const RegimeParams& regime);

// Decay ladder ------------------------------------------------------------

double ladder_sigma(int n);  // (2^n - 2) / (2^n - 1)
double ladder_eta(int n);    // 2^{n+1} - 2

inline constexpr int kLadderCap = 40;

/// Exponent of the ||w||^2 bound at level n of branch 3:
/// (2^{n+1} - 1)(-(d+2)/(2 alpha) + 2).
double ladder_intermediate_slope(const RegimeParams& regime, int n);

struct LadderStage {
  int n = 0;
  double w_slope = 0.0;
};

/// Terminal ladder cell A_n^{(j)} with j in {1, 2}; the cells A_k^{(3)},
/// k < n, the point passes through on the way are listed in `intermediate`.
/// j == 3 only if the level cap was exhausted.
struct DecayLadderClass {
  int n = 0;
  int j = 0;
  double w_slope = 0.0;
  std::vector<LadderStage> intermediate;
};

DecayLadderClass classify_decay_ladder(const RegimeParams& regime);

struct DecaySlopes {
  double u_sq_slope = 0.0;
  double w_sq_slope = 0.0;
};

DecaySlopes decay_exponents(const RegimeParams& regime);

/// Exponent of the forcing term in the energy-derivative bound:
/// -(d+2)/(2 alpha) + 1 + 2s/alpha.
double energy_forcing_exponent(const RegimeParams& regime);

}  // namespace gnse
