// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "gnse/error.hpp"
#include "gnse/grid.hpp"

namespace gnse {

namespace {

// |f(x)| is the Euclidean norm of the vector sample; quadrature is the cell sum.
double lp_of_physical(const PhysicalField& f, double r) {
  const Grid& grid = f.grid();
  std::vector<double> mag(grid.size(), 0.0);
  for (int c = 0; c < f.dim(); ++c) {
    auto comp = f.component(c);
    for (std::size_t k = 0; k < grid.size(); ++k) mag[k] += comp[k] * comp[k];
  }
  double peak = 0.0;
  for (auto& v : mag) {
    v = std::sqrt(v);
    peak = std::max(peak, v);
  }
  if (std::isinf(r)) return peak;
  if (peak == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : mag) sum += std::pow(v / peak, r);
  const double cell = std::pow(grid.dx(), grid.dim());
  return peak * std::pow(cell * sum, 1.0 / r);
}

void check_mean(const SpectralField& field, double order) {
  if (order >= 0.0) return;
  double mean = 0.0;
  double peak = 0.0;
  for (int c = 0; c < field.dim(); ++c) {
    mean = std::max(mean, std::abs(field.at(c, 0)));
    for (const auto& v : field.component(c)) peak = std::max(peak, std::abs(v));
  }
  if (mean > 1e-13 * peak) {
    throw Error(ErrorKind::kNonzeroMean, "negative-order homogeneous norm of a field with nonzero mean");
  }
}

}  // namespace

std::vector<double> spatial_norms(const SpectralField& field, std::span<const SpatialNorm> specs) {
  std::vector<double> out(specs.size(), 0.0);
  // Physical samples shared by all specs with the same multiplier.
  std::map<std::pair<int, double>, PhysicalField> cache;
  auto physical = [&](int kind, double order) -> const PhysicalField& {
    auto key = std::make_pair(kind, order);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    SpectralField mult;
    switch (kind) {
      case 0: mult = field; break;
      case 1: mult = apply_bessel_power(field, order); break;
      default: mult = apply_fractional_power(field, order); break;
    }
    return cache.emplace(key, to_physical(mult)).first->second;
  };

  for (std::size_t i = 0; i < specs.size(); ++i) {
    const SpatialNorm& spec = specs[i];
    if (!(spec.r >= 1.0)) throw Error(ErrorKind::kInvalidArgument, "spatial exponent must be >= 1");
    switch (spec.kind) {
      case SpatialNorm::Kind::kLp:
        out[i] = lp_of_physical(physical(0, 0.0), spec.r);
        break;
      case SpatialNorm::Kind::kHomSobolev:
        check_mean(field, spec.order);
        out[i] = std::sqrt(hom_sobolev_sq(field, spec.order));
        break;
      case SpatialNorm::Kind::kInhomSobolev:
        out[i] = lp_of_physical(physical(1, spec.order), spec.r);
        break;
      case SpatialNorm::Kind::kHomSobolevLp:
        check_mean(field, spec.order);
        out[i] = lp_of_physical(physical(2, spec.order), spec.r);
        break;
    }
  }
  return out;
}

double spatial_norm(const SpectralField& field, const SpatialNorm& spec) {
  return spatial_norms(field, std::span<const SpatialNorm>(&spec, 1)).front();
}

double weighted_time_norm(std::span<const double> times, std::span<const double> values,
                          double time_exponent, double weight) {
  if (times.size() != values.size()) throw Error(ErrorKind::kSizeMismatch, "times/values mismatch");
  if (times.size() < 2) throw Error(ErrorKind::kInvalidArgument, "time norm needs >= 2 nodes");
  const bool starts_at_zero = times.front() == 0.0;

  if (std::isinf(time_exponent)) {
    if (starts_at_zero && weight < 0.0) {
      throw Error(ErrorKind::kWeightNotIntegrable, "negative weight with L^inf in time at t = 0");
    }
    double best = 0.0;
    for (std::size_t j = 0; j < times.size(); ++j) {
      const double w = (times[j] == 0.0) ? (weight == 0.0 ? 1.0 : 0.0) : std::pow(times[j], weight);
      best = std::max(best, w * values[j]);
    }
    return best;
  }

  if (!(time_exponent >= 1.0)) throw Error(ErrorKind::kInvalidArgument, "time exponent must be >= 1");
  const double gamma = weight * time_exponent;
  if (starts_at_zero && gamma <= -1.0) {
    throw Error(ErrorKind::kWeightNotIntegrable, "weight * exponent must exceed -1 at t = 0");
  }
  const double peak = *std::max_element(values.begin(), values.end());
  if (peak == 0.0) return 0.0;

  auto powered = [&](std::size_t j) { return std::pow(values[j] / peak, time_exponent); };
  double integral = 0.0;
  std::size_t first = 0;
  if (starts_at_zero && weight != 0.0) {
    // Product trapezoid: t^gamma times the linear interpolant of the powered values.
    const double t1 = times[1];
    const double p0 = powered(0);
    const double p1 = powered(1);
    integral += std::pow(t1, gamma + 1.0) *
                (p0 / (gamma + 1.0) - p0 / (gamma + 2.0) + p1 / (gamma + 2.0));
    first = 1;
  }
  for (std::size_t j = first; j + 1 < times.size(); ++j) {
    const double g0 = std::pow(times[j], gamma) * powered(j);
    const double g1 = std::pow(times[j + 1], gamma) * powered(j + 1);
    integral += 0.5 * (times[j + 1] - times[j]) * (g0 + g1);
  }
  return peak * std::pow(integral, 1.0 / time_exponent);
}

std::vector<double> trajectory_norms(const Trajectory& traj, std::span<const NormSpec> specs) {
  traj.validate();
  if (traj.size() < 2) throw Error(ErrorKind::kInvalidArgument, "trajectory norm needs >= 2 nodes");
  std::vector<SpatialNorm> spatial;
  spatial.reserve(specs.size());
  for (const auto& s : specs) spatial.push_back(s.spatial);

  std::vector<std::vector<double>> values(specs.size(), std::vector<double>(traj.size()));
  for (std::size_t j = 0; j < traj.size(); ++j) {
    const auto node = spatial_norms(traj.fields[j], spatial);
    for (std::size_t i = 0; i < specs.size(); ++i) values[i][j] = node[i];
  }
  std::vector<double> out(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    out[i] = weighted_time_norm(traj.times, values[i], specs[i].time_exponent, specs[i].weight);
  }
  return out;
}

double trajectory_norm(const Trajectory& traj, const NormSpec& spec) {
  return trajectory_norms(traj, std::span<const NormSpec>(&spec, 1)).front();
}

double yspace_norm(const Trajectory& traj, const YSpaceCase& ycase) {
  double total = 0.0;
  for (double v : trajectory_norms(traj, ycase.components)) total += v;
  return total;
}

double xspace_norm(const Trajectory& traj, const RegimeParams& regime, XSpace which) {
  double total = 0.0;
  for (double v : trajectory_norms(traj, xspace_components(regime, which))) total += v;
  return total;
}

}  // namespace gnse
