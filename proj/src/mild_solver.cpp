// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#include "gnse/mild_solver.hpp"

#include <cmath>
#include <sstream>

#include "gnse/nonlinearity.hpp"
#include "gnse/semigroup.hpp"

namespace gnse {

std::vector<double> picard_nodes(double tau, int nodes) {
  if (!(tau > 0.0)) throw Error(ErrorKind::kInvalidConfig, "picard: tau must be positive");
  if (nodes < 16) throw Error(ErrorKind::kInvalidConfig, "picard: need at least 16 nodes");
  const int m = nodes - 1;
  std::vector<double> t(nodes);
  for (int j = 0; j <= m; ++j) {
    const double r = static_cast<double>(j) / m;
    t[j] = tau * r * r;
  }
  t.back() = tau;
  return t;
}

Trajectory duhamel_integrate(const Trajectory& integrand, double alpha) {
  integrand.validate();
  const Grid& grid = integrand.grid();
  std::vector<double> symbol(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) symbol[k] = std::pow(grid.xi_norm(k), 2.0 * alpha);

  Trajectory out;
  out.provenance = integrand.provenance;
  out.regime = integrand.regime;
  SpectralField acc(grid);
  out.push(integrand.times[0], acc);
  std::vector<double> decay(grid.size());
  for (std::size_t n = 0; n + 1 < integrand.size(); ++n) {
    const double dt = integrand.times[n + 1] - integrand.times[n];
    for (std::size_t k = 0; k < grid.size(); ++k) decay[k] = std::exp(-dt * symbol[k]);
    const SpectralField& b0 = integrand.fields[n];
    const SpectralField& b1 = integrand.fields[n + 1];
    for (int c = 0; c < acc.dim(); ++c) {
      auto a = acc.component(c);
      const auto f0 = b0.component(c);
      const auto f1 = b1.component(c);
      for (std::size_t k = 0; k < a.size(); ++k)
        a[k] = decay[k] * (a[k] + 0.5 * dt * f0[k]) + 0.5 * dt * f1[k];
    }
    out.push(integrand.times[n + 1], acc);
  }
  return out;
}

Trajectory duhamel_bilinear(const Trajectory& f, const Trajectory& g, double alpha) {
  require_same_nodes(f, g);
  Trajectory integrand;
  for (std::size_t n = 0; n < f.size(); ++n)
    integrand.push(f.times[n], bilinear_B(f.fields[n], g.fields[n]));
  return duhamel_integrate(integrand, alpha);
}

Trajectory apply_K(const Trajectory& w, const Trajectory& h, double alpha) {
  require_same_nodes(w, h);
  Trajectory integrand;
  for (std::size_t n = 0; n < w.size(); ++n) {
    const SpectralField u = w.fields[n] + h.fields[n];
    integrand.push(w.times[n], bilinear_B(u, u));
  }
  Trajectory out = scaled(duhamel_integrate(integrand, alpha), -1.0);
  out.provenance = Provenance::kPicard;
  return out;
}

std::vector<NormSpec> picard_norm(const RegimeParams& regime, const PicardConfig& config) {
  const DerivedExponents ex = derive_exponents(regime);
  if (config.uniqueness_norm) return {NormSpec{ex.a, 0.0, SpatialNorm::lp(ex.p)}};
  return config.norm_case ? config.norm_case->components : classify_yspace(regime).components;
}

double picard_norm_value(const Trajectory& traj, const RegimeParams& regime, const PicardConfig& config) {
  double total = 0.0;
  for (double v : trajectory_norms(traj, picard_norm(regime, config))) total += v;
  return total;
}

PicardResult picard_solve(const Trajectory& h, const RegimeParams& regime, const PicardConfig& config) {
  if (config.max_iter < 1 || !(config.tol_residual > 0.0))
    throw Error(ErrorKind::kInvalidConfig, "picard: need max_iter >= 1 and tol_residual > 0");
  h.validate();
  PicardResult res;
  res.tau = h.times.back();
  res.h_norm = picard_norm_value(h, regime, config);
  res.w = zero_trajectory(h.grid(), h.times);
  res.w.provenance = Provenance::kPicard;
  res.w.regime = regime;

  int growth = 0;
  for (int it = 0; it < config.max_iter; ++it) {
    Trajectory next = apply_K(res.w, h, regime.alpha);
    const double r = picard_norm_value(next - res.w, regime, config);
    if (it == 0) res.first_iterate_norm = r;
    if (!res.residuals.empty()) {
      res.contraction_ratios.push_back(res.residuals.back() > 0.0 ? r / res.residuals.back() : 0.0);
      growth = r > res.residuals.back() ? growth + 1 : 0;
    }
    res.residuals.push_back(r);
    res.w = std::move(next);
    res.w.regime = regime;
    res.iterations = it + 1;
    if (!std::isfinite(r) || growth >= 3) {
      std::ostringstream os;
      os << "picard diverged at iteration " << it + 1 << " (residual " << r << ", ||h||_Y " << res.h_norm
         << ")";
      throw PicardDivergence(os.str(), res.h_norm, res.residuals);
    }
    if (r <= config.tol_residual) {
      res.converged = true;
      break;
    }
  }
  return res;
}

PicardResult picard_solve_auto(const SpectralField& datum, const RegimeParams& regime,
                               PicardConfig config, int max_halvings) {
  for (int attempt = 0;; ++attempt) {
    const Trajectory h = heat_trajectory(datum, picard_nodes(config.tau, config.nodes), regime.alpha);
    try {
      PicardResult res = picard_solve(h, regime, config);
      if (res.converged || attempt >= max_halvings) return res;
    } catch (const PicardDivergence&) {
      if (attempt >= max_halvings) throw;
    }
    config.tau *= 0.5;
  }
}

double contraction_probe(const Trajectory& w1, const Trajectory& w2, const Trajectory& h,
                         const RegimeParams& regime, const PicardConfig& config) {
  require_same_nodes(w1, w2);
  require_same_nodes(w1, h);
  const double diff = picard_norm_value(w1 - w2, regime, config);
  if (!(diff > 0.0)) throw Error(ErrorKind::kUndefinedRatio, "contraction_probe: w1 == w2");
  const double num =
      picard_norm_value(apply_K(w1, h, regime.alpha) - apply_K(w2, h, regime.alpha), regime, config);
  const double scale = picard_norm_value(w1, regime, config) + picard_norm_value(w2, regime, config) +
                       picard_norm_value(h, regime, config);
  return num / (diff * scale);
}

}  // namespace gnse
