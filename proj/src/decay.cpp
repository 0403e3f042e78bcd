// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#include "gnse/decay.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "gnse/error.hpp"
#include "gnse/semigroup.hpp"
#include "gnse/stats.hpp"

namespace gnse {

DecayFitResult fit_decay(std::span<const double> t, std::span<const double> values, Window window,
                         double predicted) {
  if (t.size() != values.size()) throw Error(ErrorKind::kSizeMismatch, "fit_decay: t/value mismatch");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < window.first || t[i] > window.second) continue;
    if (!(values[i] > 0.0)) throw Error(ErrorKind::kNonpositiveValues, "fit_decay: value <= 0 in window");
    x.push_back(std::log(t[i]));
    y.push_back(std::log(values[i]));
  }
  if (x.size() < 10) {
    std::ostringstream os;
    os << "fit_decay: " << x.size() << " points in [" << window.first << ", " << window.second
       << "], need 10";
    throw Error(ErrorKind::kEmptyWindow, os.str());
  }
  const LineFit line = fit_line(x, y);
  DecayFitResult res;
  res.slope = line.slope;
  res.intercept = line.intercept;
  res.slope_stderr = line.slope_stderr;
  res.r2 = line.r2;
  res.window = window;
  res.predicted = predicted;
  res.points = x.size();
  return res;
}

double ball_energy(const SpectralField& field, double radius) {
  const Grid& grid = field.grid();
  double sum = 0.0;
  for (int c = 0; c < field.dim(); ++c) {
    const auto comp = field.component(c);
    for (std::size_t k = 0; k < grid.size(); ++k)
      if (grid.xi_norm(k) <= radius) sum += std::norm(comp[k]);
  }
  return grid.volume() * sum;
}

const char* to_string(RadiusLaw law) {
  return law == RadiusLaw::kAlgebraic ? "algebraic" : "critical_log";
}

double splitting_radius(RadiusLaw law, int d, double alpha, double t) {
  if (law == RadiusLaw::kAlgebraic) {
    if (!(t > 0.0)) throw Error(ErrorKind::kNegativeTime, "algebraic radius needs t > 0");
    return std::pow(d / t, 1.0 / (2.0 * alpha));
  }
  if (!(t > std::numbers::e)) throw Error(ErrorKind::kInvalidArgument, "critical-log radius needs t > e");
  return std::pow(2.0 / 3.0 * t * std::log(t), -1.0 / (2.0 * alpha));
}

SplittingDiagnostic splitting_report(const Trajectory& w, const RegimeParams& regime, RadiusLaw law,
                                     std::optional<Window> fit_window) {
  w.validate();
  SplittingDiagnostic diag;
  diag.law = law;
  const double t_min = law == RadiusLaw::kCriticalLog ? std::numbers::e : 0.0;
  std::vector<double> loglog_t, w_sq;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double t = w.times[i];
    if (t <= t_min) continue;
    SplittingRecord rec;
    rec.t = t;
    rec.radius = splitting_radius(law, regime.d, regime.alpha, t);
    rec.ball = ball_energy(w.fields[i], rec.radius);
    rec.total = l2_sq(w.fields[i]);
    rec.ratio = rec.total > 0.0 ? rec.ball / rec.total : 0.0;
    diag.records.push_back(rec);
  }
  if (diag.records.empty()) throw Error(ErrorKind::kEmptyWindow, "splitting_report: no nodes in range");
  if (law == RadiusLaw::kCriticalLog) {
    const Window win = fit_window.value_or(Window{std::numbers::e, w.times.back()});
    std::vector<double> x, y;
    for (const auto& rec : diag.records) {
      if (rec.t < win.first || rec.t > win.second || !(rec.total > 0.0)) continue;
      x.push_back(std::log(rec.t));
      y.push_back(rec.total);
    }
    // fit_decay in the variable ln t with window given in ln t.
    if (x.size() >= 10) {
      diag.log_fit = fit_decay(x, y, {std::log(win.first), std::log(win.second)});
      diag.log_fit->window = win;
    }
  }
  return diag;
}

PointwiseReport pointwise_bound_check(const Trajectory& w, const RegimeParams& regime, double T0) {
  w.validate();
  PointwiseReport rep;
  const Grid& grid = w.grid();
  const double volume = grid.volume();
  double integral = 0.0;
  double prev_t = 0.0, prev_e = 0.0;
  bool started = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double t = w.times[i];
    if (t < T0) continue;
    const double e = l2_sq(w.fields[i]);
    if (started) integral += 0.5 * (t - prev_t) * (e + prev_e);
    started = true;
    prev_t = t;
    prev_e = e;
    if (t <= T0) continue;
    const double denom_t = integral + std::pow(t, 1.0 + regime.s / regime.alpha);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double xn = grid.xi_norm(k);
      if (xn == 0.0) continue;
      double mag2 = 0.0;
      for (int c = 0; c < grid.dim(); ++c) mag2 += std::norm(w.fields[i].at(c, k));
      const double r = volume * std::sqrt(mag2) / (xn * denom_t);
      if (r > rep.max_ratio) {
        rep.max_ratio = r;
        rep.at_time = t;
        rep.at_xi = xn;
      }
    }
    ++rep.nodes;
  }
  return rep;
}

bool pointwise_stable(const PointwiseReport& a, const PointwiseReport& b, double factor) {
  if (!(a.max_ratio > 0.0) || !(b.max_ratio > 0.0)) return a.max_ratio == b.max_ratio;
  const double q = a.max_ratio / b.max_ratio;
  return q <= factor && q >= 1.0 / factor;
}

EnergyMonitor energy_monitor(const EnergyLedger& ledger, const RegimeParams& regime, Window calibration,
                             int run) {
  EnergyMonitor mon;
  mon.exponent = energy_forcing_exponent(regime);
  const auto lhs = [](const LedgerRow& r) { return r.dwdt + r.hal_w_sq; };
  bool any = false;
  for (const auto& r : ledger.rows) {
    if (r.t < calibration.first || r.t > calibration.second) continue;
    mon.C = std::max(mon.C, lhs(r) / std::pow(r.t, mon.exponent));
    any = true;
  }
  if (!any) return mon;
  const auto holds = [&](const LedgerRow& r) { return lhs(r) <= mon.C * std::pow(r.t, mon.exponent); };

  const auto& rows = ledger.rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].t < std::numbers::e) continue;
    if (i + run > rows.size()) break;
    bool ok = true;
    for (int j = 0; j < run && ok; ++j) ok = holds(rows[i + j]);
    if (ok) {
      mon.T0 = rows[i].t;
      mon.T0_found = true;
      break;
    }
  }
  if (!mon.T0_found) return mon;
  for (const auto& r : rows) {
    if (r.t < mon.T0) continue;
    ++mon.rows_after;
    if (holds(r)) ++mon.rows_holding;
  }
  mon.fraction = mon.rows_after ? static_cast<double>(mon.rows_holding) / mon.rows_after : 0.0;
  return mon;
}

std::string SeedRun::series_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "t,u_sq,w_sq,h_sq\n";
  for (std::size_t i = 0; i < times.size(); ++i)
    os << times[i] << ',' << u_sq[i] << ',' << w_sq[i] << ',' << h_sq[i] << '\n';
  return os.str();
}

SeedRun run_seed(const EnsembleConfig& config, std::uint64_t seed) {
  SeedRun run;
  run.seed = seed;
  try {
    const RegimeParams regime = validate_regime(config.regime.d, config.regime.alpha, config.regime.s);
    const Grid grid(regime.d, config.n, config.m);
    const SpectralField datum = synthesize_datum(regime, grid, config.amplitude);
    const PartitionOfUnity partition(grid);
    const SpectralField u0 = randomize(datum, partition, RandomSpec{config.distribution, seed}, config.member);
    const HeatFlow flow(u0, regime.alpha);

    const PicardResult picard = picard_solve_auto(u0, regime, config.picard);
    run.tau = picard.tau;
    run.picard_iterations = picard.iterations;
    run.picard_residual = picard.residuals.empty() ? 0.0 : picard.residuals.back();
    if (!picard.converged) throw Error(ErrorKind::kDiverged, "picard stage did not converge");

    const auto& nodes = picard.w.times;
    // Last Picard node at or before tau/2, so the overlap [tau/2, tau] is covered.
    std::size_t start = 0;
    while (start + 1 < nodes.size() && nodes[start + 1] <= 0.5 * run.tau) ++start;
    StepperConfig stepper = config.stepper;
    stepper.output_times.assign(nodes.begin() + start + 1, nodes.end());
    for (double t : logspace(run.tau, config.T_max, config.output_points)) stepper.output_times.push_back(t);
    const SimulationResult sim =
        simulate(picard.w.fields[start], nodes[start], config.T_max, stepper, regime, heat_provider(flow));
    run.ledger = sim.ledger;
    run.max_divergence = sim.max_divergence;
    run.steps = sim.steps;
    run.cfl_warnings = sim.cfl_warnings;
    const GlueResult glued = glue(picard.w, sim.trajectory);
    run.glue_discrepancy = glued.discrepancy;

    const Trajectory& w = glued.trajectory;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double t = w.times[i];
      if (t <= 0.0) continue;
      const SpectralField h = flow.at(t);
      run.times.push_back(t);
      run.h_sq.push_back(l2_sq(h));
      run.w_sq.push_back(l2_sq(w.fields[i]));
      run.u_sq.push_back(l2_sq(h + w.fields[i]));
    }

    run.monitor = energy_monitor(run.ledger, regime);
    if (config.fit_window) {
      run.window = *config.fit_window;
    } else {
      const double lo = std::max(std::numbers::e, run.monitor.T0_found ? run.monitor.T0 : std::numbers::e);
      run.window = {lo, std::min(config.T_max, 0.25 * grid.infrared_time(regime.alpha))};
    }
    run.under_resolved = run.window.second < 10.0 * run.window.first;
    const DecaySlopes pred = decay_exponents(regime);
    if (!run.under_resolved) {
      run.u_fit = fit_decay(run.times, run.u_sq, run.window, pred.u_sq_slope);
      run.w_fit = fit_decay(run.times, run.w_sq, run.window, pred.w_sq_slope);
      run.h_fit = fit_decay(run.times, run.h_sq, run.window, regime.s / regime.alpha);
      run.splitting = splitting_report(w, regime, config.radius_law, run.window);
      run.pointwise = pointwise_bound_check(w, regime, run.window.first);
    }
    run.ok = true;
  } catch (const std::exception& e) {
    run.ok = false;
    run.error = e.what();
  }
  return run;
}

EnsembleResult run_ensemble(const EnsembleConfig& config, const std::function<void(const SeedRun&)>& on_seed) {
  EnsembleResult res;
  res.predicted = decay_exponents(config.regime);
  res.runs.resize(config.seeds.size());
  std::atomic<std::size_t> next{0};
  std::mutex report;
  const auto worker = [&] {
    for (std::size_t i = next++; i < config.seeds.size(); i = next++) {
      res.runs[i] = run_seed(config, config.seeds[i]);
      if (on_seed) {
        std::lock_guard lock(report);
        on_seed(res.runs[i]);
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(config.jobs, static_cast<int>(config.seeds.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<double> u, wv, h;
  for (const auto& run : res.runs) {
    if (!run.ok || run.under_resolved) {
      ++res.failures;
      continue;
    }
    u.push_back(run.u_fit.slope);
    wv.push_back(run.w_fit.slope);
    h.push_back(run.h_fit.slope);
  }
  if (!u.empty()) {
    res.median_u = median(u);
    res.median_w = median(wv);
    res.median_h = median(h);
  }
  return res;
}

}  // namespace gnse
