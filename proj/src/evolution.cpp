// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#include "gnse/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gnse/error.hpp"
#include "gnse/nonlinearity.hpp"

namespace gnse {
namespace {

// phi1(z) = (e^z - 1)/z, phi2(z) = (e^z - 1 - z)/z^2.
void phi_functions(double z, double& phi1, double& phi2) {
  if (std::abs(z) < 0.1) {
    double term = 1.0;
    phi1 = 0.0;
    phi2 = 0.0;
    double fact1 = 1.0, fact2 = 2.0;
    for (int k = 0; k < 10; ++k) {
      phi1 += term / fact1;
      phi2 += term / fact2;
      term *= z;
      fact1 *= k + 2;
      fact2 *= k + 3;
    }
    return;
  }
  const double em1 = std::expm1(z);
  phi1 = em1 / z;
  phi2 = (em1 - z) / (z * z);
}

class Stepper {
 public:
  Stepper(const Grid& grid, double alpha) : symbol_(grid.size()) {
    for (std::size_t k = 0; k < grid.size(); ++k) symbol_[k] = std::pow(grid.xi_norm(k), 2.0 * alpha);
  }

  SpectralField step(const SpectralField& w, const SpectralField* h0, const SpectralField* hmid, double dt,
                     Scheme scheme, bool nonlinear) {
    prepare(dt);
    SpectralField out = w;
    if (!nonlinear) {
      apply(out, e_full_);
      return finish(out);
    }
    const SpectralField n0 = forcing(w, h0);
    if (scheme == Scheme::kExpEuler) {
      for (int c = 0; c < out.dim(); ++c) {
        auto o = out.component(c);
        const auto f = n0.component(c);
        for (std::size_t k = 0; k < o.size(); ++k) o[k] = e_full_[k] * o[k] + dt * phi1_full_[k] * f[k];
      }
      return finish(out);
    }
    SpectralField stage = w;
    for (int c = 0; c < stage.dim(); ++c) {
      auto o = stage.component(c);
      const auto f = n0.component(c);
      for (std::size_t k = 0; k < o.size(); ++k)
        o[k] = e_half_[k] * o[k] + 0.5 * dt * phi1_half_[k] * f[k];
    }
    const SpectralField n1 = forcing(stage, hmid);
    for (int c = 0; c < out.dim(); ++c) {
      auto o = out.component(c);
      const auto f0 = n0.component(c);
      const auto f1 = n1.component(c);
      for (std::size_t k = 0; k < o.size(); ++k)
        o[k] = e_full_[k] * o[k] +
               dt * ((phi1_full_[k] - 2.0 * phi2_full_[k]) * f0[k] + 2.0 * phi2_full_[k] * f1[k]);
    }
    return finish(out);
  }

 private:
  static SpectralField forcing(const SpectralField& w, const SpectralField* h) {
    SpectralField u = h ? w + *h : w;
    SpectralField b = bilinear_B(u, u);
    b *= -1.0;
    return b;
  }

  static void apply(SpectralField& f, const std::vector<double>& mult) {
    for (int c = 0; c < f.dim(); ++c) {
      auto o = f.component(c);
      for (std::size_t k = 0; k < o.size(); ++k) o[k] *= mult[k];
    }
  }

  static SpectralField finish(SpectralField& out) {
    leray_project_inplace(out);
    for (const Complex& v : out.data())
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw Error(ErrorKind::kBlowUp, "non-finite values in the evolved field");
    return std::move(out);
  }

  void prepare(double dt) {
    if (dt == dt_) return;
    dt_ = dt;
    const std::size_t n = symbol_.size();
    e_full_.resize(n);
    e_half_.resize(n);
    phi1_full_.resize(n);
    phi2_full_.resize(n);
    phi1_half_.resize(n);
    double unused = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double z = -dt * symbol_[k];
      e_full_[k] = std::exp(z);
      e_half_[k] = std::exp(0.5 * z);
      phi_functions(z, phi1_full_[k], phi2_full_[k]);
      phi_functions(0.5 * z, phi1_half_[k], unused);
    }
  }

  std::vector<double> symbol_;
  double dt_ = -1.0;
  std::vector<double> e_full_, e_half_, phi1_full_, phi2_full_, phi1_half_;
};

struct Endpoint {
  double l2 = 0.0;
  double hal = 0.0;
  double fww = 0.0;
  double fhw = 0.0;
};

Endpoint endpoint(const SpectralField& w, const SpectralField* h, double alpha) {
  Endpoint e;
  e.l2 = l2_sq(w);
  e.hal = hom_sobolev_sq(w, alpha);
  if (h) {
    e.fww = inner(bilinear_B(w, w), *h);
    e.fhw = inner(bilinear_B(*h, w), *h);
  }
  return e;
}

double max_speed(const SpectralField& w, const SpectralField* h) {
  const PhysicalField u = to_physical(h ? w + *h : w);
  const int d = u.dim();
  const std::size_t size = u.grid().size();
  double worst = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    double s2 = 0.0;
    for (int c = 0; c < d; ++c) s2 += u.component(c)[i] * u.component(c)[i];
    worst = std::max(worst, s2);
  }
  return std::sqrt(worst);
}

}  // namespace

HeatProvider heat_provider(const HeatFlow& flow) {
  return [&flow](double t) { return flow.at(t); };
}

SpectralField step_w(const SpectralField& w, double t, const HeatProvider& h, double dt, double alpha,
                     Scheme scheme, bool nonlinear) {
  if (!(dt > 0.0)) throw Error(ErrorKind::kInvalidArgument, "step_w needs dt > 0");
  Stepper stepper(w.grid(), alpha);
  if (!h) return stepper.step(w, nullptr, nullptr, dt, scheme, nonlinear);
  const SpectralField h0 = h(t);
  const SpectralField hmid = h(t + 0.5 * dt);
  return stepper.step(w, &h0, &hmid, dt, scheme, nonlinear);
}

const char* EnergyLedger::csv_header() {
  return "t,dt,l2w_sq,hal_w_sq,flux_wwh,flux_hwh,dwdt,energy_residual";
}

std::string EnergyLedger::csv() const {
  std::ostringstream os;
  os.precision(17);
  os << csv_header() << '\n';
  for (const auto& r : rows)
    os << r.t << ',' << r.dt << ',' << r.l2w_sq << ',' << r.hal_w_sq << ',' << r.flux_wwh << ','
       << r.flux_hwh << ',' << r.dwdt << ',' << r.energy_residual << '\n';
  return os.str();
}

SimulationResult simulate(const SpectralField& initial, double t0, double T, const StepperConfig& config,
                          const RegimeParams& regime, const HeatProvider& h) {
  if (!(config.dt > 0.0)) throw Error(ErrorKind::kInvalidConfig, "simulate: dt must be positive");
  if (!(t0 >= 0.0) || !(T >= t0)) throw Error(ErrorKind::kNegativeTime, "simulate: need 0 <= t0 <= T");
  const double alpha = regime.alpha;
  const Grid& grid = initial.grid();

  std::vector<double> targets;
  for (double t : config.output_times)
    if (t > t0 && t < T) targets.push_back(t);
  targets.push_back(T);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  SimulationResult res;
  res.trajectory.provenance = Provenance::kEvolution;
  res.trajectory.regime = regime;
  // Fields that are already solenoidal and mean-free pass through untouched so
  // a resumed run reproduces the original bit for bit.
  SpectralField w = initial;
  if (divergence_residual(w) > 1e-12) leray_project_inplace(w);
  w.zero_mean();
  res.trajectory.push(t0, w);
  if (T == t0) return res;

  Stepper stepper(grid, alpha);
  double t = t0;
  SpectralField h_now = h ? h(t) : SpectralField();
  const SpectralField* hp = h ? &h_now : nullptr;
  Endpoint prev = config.monitors ? endpoint(w, hp, alpha) : Endpoint{};
  std::size_t target = 0;

  while (target < targets.size()) {
    double dt = config.dt_growth > 0.0 ? std::max(config.dt, config.dt_growth * t) : config.dt;
    double speed = -1.0;
    if (config.monitors && config.cfl > 0.0) speed = max_speed(w, hp);
    if (config.cfl_limit && speed > 0.0) dt = std::min(dt, config.cfl * grid.dx() / speed);
    const double goal = targets[target];
    bool landed = false;
    if (t + dt * (1.0 + 1e-9) >= goal) {
      dt = goal - t;
      landed = true;
    }
    SpectralField h_mid, h_next;
    if (h) {
      h_mid = h(t + 0.5 * dt);
      h_next = h(landed ? goal : t + dt);
    }
    if (speed >= 0.0 && dt * speed > config.cfl * grid.dx() * (1.0 + 1e-12)) ++res.cfl_warnings;
    SpectralField next = stepper.step(w, hp, h ? &h_mid : nullptr, dt, config.scheme, config.nonlinear);
    const double t_next = landed ? goal : t + dt;
    w = std::move(next);
    if (h) h_now = std::move(h_next);
    ++res.steps;

    if (config.monitors) {
      const Endpoint cur = endpoint(w, hp, alpha);
      LedgerRow row;
      row.t = t_next;
      row.dt = dt;
      row.l2w_sq = cur.l2;
      row.hal_w_sq = 0.5 * (prev.hal + cur.hal);
      row.flux_wwh = 0.5 * (prev.fww + cur.fww);
      row.flux_hwh = 0.5 * (prev.fhw + cur.fhw);
      row.dwdt = (cur.l2 - prev.l2) / dt;
      row.energy_residual = std::abs(row.dwdt + 2.0 * row.hal_w_sq - 2.0 * (row.flux_wwh + row.flux_hwh));
      res.ledger.rows.push_back(row);
      res.max_divergence = std::max(res.max_divergence, divergence_residual(w));
      prev = cur;
    }
    t = t_next;
    if (landed) ++target;
    if (landed || (config.output_stride > 0 && res.steps % config.output_stride == 0))
      res.trajectory.push(t, w);
    if (config.checkpoint && config.checkpoint_every > 0 && res.steps % config.checkpoint_every == 0)
      config.checkpoint(t, w);
  }
  return res;
}

GlueResult glue(const Trajectory& w_picard, const Trajectory& w_long) {
  w_picard.validate();
  w_long.validate();
  if (!(w_picard.grid() == w_long.grid())) throw Error(ErrorKind::kGridMismatch, "glue: grids differ");
  const double tau = w_picard.times.back();
  const double tol = 1e-12 * tau;
  if (w_long.times.front() > 0.5 * tau + tol || w_long.times.back() < tau - tol)
    throw Error(ErrorKind::kOverlapNotSampled, "glue: long run does not cover [tau/2, tau]");

  GlueResult res;
  for (std::size_t i = 0; i < w_picard.size(); ++i) {
    const double t = w_picard.times[i];
    if (t < 0.5 * tau - tol) continue;
    const std::size_t j = w_long.find_time(t);
    if (j == static_cast<std::size_t>(-1)) continue;
    const double diff = std::sqrt(l2_sq(w_picard.fields[i] - w_long.fields[j]));
    const double ref = std::sqrt(l2_sq(w_picard.fields[i]));
    res.discrepancy = std::max(res.discrepancy, ref > 0.0 ? diff / ref : diff);
    ++res.compared;
  }
  if (res.compared == 0) throw Error(ErrorKind::kOverlapNotSampled, "glue: no shared nodes in [tau/2, tau]");

  res.trajectory = w_picard;
  res.trajectory.provenance = Provenance::kGlued;
  for (std::size_t j = 0; j < w_long.size(); ++j)
    if (w_long.times[j] > tau + tol) res.trajectory.push(w_long.times[j], w_long.fields[j]);
  return res;
}

}  // namespace gnse
