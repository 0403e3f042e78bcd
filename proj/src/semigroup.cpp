// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#include "gnse/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gnse/error.hpp"
#include "gnse/stats.hpp"

namespace gnse {
namespace {

std::vector<double> symbol_table(const Grid& grid, double alpha) {
  std::vector<double> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) out[k] = std::pow(grid.xi_norm(k), 2.0 * alpha);
  return out;
}

void apply_heat(SpectralField& field, std::span<const double> symbol, double t) {
  for (int c = 0; c < field.dim(); ++c) {
    auto comp = field.component(c);
    for (std::size_t k = 0; k < comp.size(); ++k) comp[k] *= std::exp(-t * symbol[k]);
  }
}

void require_nonnegative(double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::kNegativeTime, "heat propagation needs t >= 0");
}

}  // namespace

SpectralField heat_propagate(const SpectralField& field, double t, double alpha) {
  require_nonnegative(t);
  SpectralField out = field;
  if (t == 0.0) return out;
  apply_heat(out, symbol_table(field.grid(), alpha), t);
  return out;
}

HeatFlow::HeatFlow(SpectralField datum, double alpha)
    : datum_(std::move(datum)), alpha_(alpha), symbol_(symbol_table(datum_.grid(), alpha)) {}

SpectralField HeatFlow::at(double t) const {
  require_nonnegative(t);
  SpectralField out = datum_;
  if (t > 0.0) apply_heat(out, symbol_, t);
  return out;
}

Trajectory heat_trajectory(const SpectralField& datum, std::span<const double> times, double alpha) {
  HeatFlow flow(datum, alpha);
  Trajectory traj;
  traj.provenance = Provenance::kHeatFlow;
  for (double t : times) traj.push(t, flow.at(t));
  traj.validate();
  return traj;
}

std::pair<double, double> resolved_window(const Grid& grid, double alpha) {
  return {std::pow(grid.dx(), 2.0 * alpha), 0.25 * grid.infrared_time(alpha)};
}

void require_resolved(const Grid& grid, double alpha, std::pair<double, double> window) {
  const auto [lo, hi] = resolved_window(grid, alpha);
  constexpr double kSlack = 1e-12;
  if (!(window.first < window.second) || window.first < lo * (1.0 - kSlack) ||
      window.second > hi * (1.0 + kSlack)) {
    std::ostringstream os;
    os << "window [" << window.first << ", " << window.second << "] outside resolved range [" << lo
       << ", " << hi << "]";
    throw Error(ErrorKind::kWindowUnresolved, os.str());
  }
}

double smoothing_prediction(int d, double alpha, double nu, double p, double q) {
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  return -nu / (2.0 * alpha) - d / (2.0 * alpha) * (inv_q - inv_p);
}

std::pair<double, double> smoothing_window(const Grid& grid, double alpha) {
  return {std::pow(4.0 * grid.dx(), 2.0 * alpha), 0.25 * grid.infrared_time(alpha)};
}

SlopeFit smoothing_slope(double alpha, double nu, double p, double q, const Grid& grid,
                         std::pair<double, double> t_window, int samples) {
  if (!(q >= 1.0 && q <= p) || !(nu >= 0.0))
    throw Error(ErrorKind::kInvalidArgument, "smoothing_slope needs 1 <= q <= p <= inf and nu >= 0");
  if (samples < 2) throw Error(ErrorKind::kInvalidArgument, "smoothing_slope needs >= 2 samples");
  require_resolved(grid, alpha, t_window);

  const int d = grid.dim();
  const double center = 0.5 * grid.length();
  const auto symbol = symbol_table(grid, alpha);
  SlopeFit fit;
  fit.predicted = smoothing_prediction(d, alpha, nu, p, q);
  fit.times = logspace(t_window.first, t_window.second, samples);
  std::vector<double> log_t, log_v;
  for (double t : fit.times) {
    const double width = 0.5 * std::pow(t, 1.0 / (2.0 * alpha));
    PhysicalField bumpf(grid);
    auto comp = bumpf.component(0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double r2 = 0.0;
      for (int c = 0; c < d; ++c) {
        const double x = bumpf.coordinate(i, c) - center;
        r2 += x * x;
      }
      comp[i] = std::exp(-0.5 * r2 / (width * width));
    }
    const SpectralField f = to_spectral(bumpf);
    SpectralField g = f;
    apply_heat(g, symbol, t);
    if (nu > 0.0) g = apply_fractional_power(g, nu);
    const double num = spatial_norm(g, SpatialNorm::lp(p));
    const double den = spatial_norm(f, SpatialNorm::lp(q));
    fit.values.push_back(num / den);
    log_t.push_back(std::log(t));
    log_v.push_back(std::log(num / den));
  }
  const LineFit line = fit_line(log_t, log_v);
  fit.slope = line.slope;
  fit.r2 = line.r2;
  return fit;
}

double moment_scaling_prediction(const RegimeParams& regime, const NormSpec& norm) {
  const DerivedExponents ex = derive_exponents(regime);
  double eta = 0.0, p = 2.0;
  switch (norm.spatial.kind) {
    case SpatialNorm::Kind::kLp:
      p = norm.spatial.r;
      break;
    case SpatialNorm::Kind::kHomSobolev:
      eta = norm.spatial.order;
      break;
    case SpatialNorm::Kind::kHomSobolevLp:
      eta = norm.spatial.order;
      p = norm.spatial.r;
      break;
    case SpatialNorm::Kind::kInhomSobolev:
      throw Error(ErrorKind::kInvalidArgument, "moment scaling needs a homogeneous spatial norm");
  }
  const double a = norm.time_exponent;
  const double rho = norm.weight;
  const double tol = 1e-12;
  auto violation = [&](const std::string& what) {
    throw Error(ErrorKind::kHypothesisViolation, "moment scaling: " + what + " (" + norm.describe() + ")");
  };
  if (p < 2.0 - tol || p > ex.r_s + tol) violation("p outside [2, r_s]");
  if (std::isinf(a)) {
    if (eta - 2.0 * regime.alpha * rho > regime.s + tol) violation("eta - 2 alpha rho > s");
  } else {
    if (a < 2.0 - tol || a > ex.r_s + tol) violation("time exponent outside [2, r_s]");
    if (rho * a <= -1.0) violation("rho a' <= -1");
    if (eta - 2.0 * regime.alpha * rho - 2.0 * regime.alpha / a > regime.s + tol)
      violation("eta - 2 alpha rho - 2 alpha / a' > s");
  }
  if (eta < regime.s - tol) violation("eta < s");
  return ex.sigma(rho, a, eta);
}

MomentScalingResult hflow_moment_scaling(const RegimeParams& regime, const Grid& grid,
                                         const NormSpec& norm, std::span<const double> T_values,
                                         int ensemble_size, const MomentScalingOptions& options) {
  MomentScalingResult res;
  res.sigma = moment_scaling_prediction(regime, norm);
  res.r_s = derive_exponents(regime).r_s;
  if (T_values.size() < 2 || ensemble_size < 2 || options.nodes < 2)
    throw Error(ErrorKind::kInvalidArgument, "moment scaling needs >= 2 T values, members and nodes");
  for (double T : T_values)
    if (!(T > 0.0)) throw Error(ErrorKind::kNegativeTime, "moment scaling needs T > 0");
  require_resolved(grid, regime.alpha, {*std::min_element(T_values.begin(), T_values.end()),
                                        *std::max_element(T_values.begin(), T_values.end())});

  const SpectralField datum = synthesize_datum(regime, grid, options.amplitude);
  const PartitionOfUnity partition(grid);
  res.T_values.assign(T_values.begin(), T_values.end());
  std::vector<std::vector<double>> samples(T_values.size());
  for (int member = 0; member < ensemble_size; ++member) {
    const HeatFlow flow(randomize(datum, partition, options.random, member), regime.alpha);
    for (std::size_t i = 0; i < T_values.size(); ++i) {
      Trajectory traj;
      traj.provenance = Provenance::kHeatFlow;
      for (int j = 0; j <= options.nodes; ++j) {
        const double r = static_cast<double>(j) / options.nodes;
        traj.push(T_values[i] * r * r, flow.at(T_values[i] * r * r));
      }
      samples[i].push_back(trajectory_norm(traj, norm));
    }
  }

  std::vector<double> log_T, log_m;
  for (std::size_t i = 0; i < T_values.size(); ++i) {
    const double peak = *std::max_element(samples[i].begin(), samples[i].end());
    double acc = 0.0;
    if (peak > 0.0)
      for (double x : samples[i]) acc += std::pow(x / peak, res.r_s);
    const double moment = peak * std::pow(acc / samples[i].size(), 1.0 / res.r_s);
    res.moments.push_back(moment);
    log_T.push_back(std::log(T_values[i]));
    log_m.push_back(std::log(moment));
  }
  const LineFit line = fit_line(log_T, log_m);
  res.sigma_hat = line.slope;
  res.r2 = line.r2;

  // Empirical tail at the largest T, upper half of the order statistics.
  const std::size_t last = std::max_element(T_values.begin(), T_values.end()) - T_values.begin();
  res.last_samples = samples[last];
  std::vector<double> sorted = samples[last];
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const std::size_t n = sorted.size();
  std::vector<double> log_l, log_p;
  for (std::size_t i = 1; i < n / 2; ++i) {
    if (sorted[i] <= 0.0) break;
    const double prob = static_cast<double>(i + 1) / n;
    res.tail_lambda.push_back(sorted[i]);
    res.tail_prob.push_back(prob);
    log_l.push_back(std::log(sorted[i]));
    log_p.push_back(std::log(prob));
  }
  if (log_l.size() >= 2 && log_l.front() != log_l.back()) res.tail_slope = fit_line(log_l, log_p).slope;
  return res;
}

}  // namespace gnse
