// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gnse/grid.hpp"
#include "gnse/params.hpp"

namespace gnse {

/// Radial bump: 1 for r <= 3/4, 0 for r >= 1, C-infinity in between.
double bump(double r);

using CubeIndex = std::array<int, 3>;

/// Smooth partition of unity subordinate to unit cubes centered at integer
/// points k: phi_k(xi) = bump(|xi - k|) / sum_j bump(|xi - j|).
/// Only nonzero weights are stored (CSR by flat frequency index).
class PartitionOfUnity {
 public:
  struct Entry {
    std::uint32_t cube = 0;
    double weight = 0.0;
  };

  explicit PartitionOfUnity(const Grid& grid);

  const Grid& grid() const { return grid_; }
  std::span<const Entry> entries(std::size_t k) const {
    return {entries_.data() + offsets_[k], offsets_[k + 1] - offsets_[k]};
  }
  std::size_t cube_count() const { return cubes_.size(); }
  const CubeIndex& cube(std::uint32_t id) const { return cubes_[id]; }
  /// Representative of {k, -k}: the one whose first nonzero coordinate is positive.
  CubeIndex canonical(std::uint32_t id) const;
  /// max over xi of |sum_k phi_k(xi) - 1|.
  double unity_residual() const;

 private:
  Grid grid_;
  std::vector<CubeIndex> cubes_;
  std::vector<std::size_t> offsets_;
  std::vector<Entry> entries_;
};

PartitionOfUnity build_partition(const Grid& grid);

enum class Distribution { kGaussian, kRademacher, kUnit };

const char* to_string(Distribution d);
Distribution distribution_from_string(const std::string& name);

/// Mean-zero, unit-variance coefficient law and master seed. Draws are a pure
/// function of (seed, canonical cube, member), so g_{-k} = g_k and a cube keeps
/// its draw across grid resolutions.
struct RandomSpec {
  Distribution distribution = Distribution::kGaussian;
  std::uint64_t seed = 1;

  double draw(const CubeIndex& canonical_cube, std::uint64_t member) const;
  /// E|g|^order in closed form.
  double exact_moment(int order) const;
};

/// u^omega = sum_k g_k(omega) phi_k(D) u: the real multiplier sum_k g_k phi_k(xi)
/// applied to every component.
SpectralField randomize(const SpectralField& datum, const PartitionOfUnity& partition,
                        const RandomSpec& spec, std::uint64_t member);

/// Per-frequency multiplier sum_k g_k phi_k(xi) for one member.
std::vector<double> randomization_multiplier(const PartitionOfUnity& partition,
                                             const RandomSpec& spec, std::uint64_t member);

struct MomentEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  double exact = 0.0;
};

/// Monte Carlo estimate of E|g|^{2n} from `samples` draws of one stream.
MomentEstimate moment_check(const RandomSpec& spec, int n, std::size_t samples);

/// Deterministic divergence-free, mean-zero, real datum with
/// |coeff(xi)| = amplitude |xi|^{-s - d/2}. Its H^s norm grows like log(n), so
/// it sits at the threshold regularity s. Directions and phases come from a
/// fixed hash of the lattice index.
SpectralField synthesize_datum(const RegimeParams& regime, const Grid& grid, double amplitude,
                               std::uint64_t salt = 0);

/// Real test field from Gaussian white noise in physical space, optionally
/// Leray-projected and two-thirds truncated. Mean removed.
SpectralField random_field(const Grid& grid, std::uint64_t seed, bool solenoidal = true, bool truncate = true);

}  // namespace gnse
