// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gnse/decay.hpp"
#include "gnse/error.hpp"
#include "gnse/stats.hpp"
#include "test_util.hpp"

using namespace gnse;
using namespace gnse::testing;

namespace {

const RegimeParams kRef{2, 1.0, -0.5};

EnsembleConfig smoke_config() {
  EnsembleConfig cfg;
  cfg.regime = kRef;
  cfg.n = 32;
  cfg.m = 16;
  cfg.amplitude = 1e-2;
  cfg.T_max = 64.0;
  cfg.output_points = 30;
  cfg.picard = {0.05, 17, 30, 1e-8, std::nullopt, false};
  cfg.stepper.dt = 0.005;
  cfg.stepper.dt_growth = 0.01;
  return cfg;
}

}  // namespace

TEST_SUITE("decay") {

TEST_CASE("fit_decay on synthetic power laws") {
  const auto t = logspace(1.0, 1000.0, 40);
  std::vector<double> v, c, noisy;
  std::mt19937_64 gen(2);
  std::normal_distribution<double> normal(0.0, 0.05);
  for (double x : t) {
    v.push_back(3.0 / x);
    c.push_back(2.5);
    noisy.push_back(std::pow(x, -0.7) * (1.0 + normal(gen)));
  }
  DecayFitResult f = fit_decay(t, v, {1.0, 1000.0}, -1.0);
  CHECK(std::abs(f.slope + 1.0) <= 1e-12);
  CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.points == 40);
  CHECK(f.predicted == -1.0);
  CHECK(std::abs(fit_decay(t, c, {1.0, 1000.0}).slope) <= 1e-12);
  CHECK(std::abs(fit_decay(t, noisy, {1.0, 1000.0}).slope + 0.7) <= 0.05);
  for (double p : {-0.25, -1.5, -2.0}) {
    std::vector<double> w;
    for (double x : t) w.push_back(std::pow(x, p));
    CHECK(std::abs(fit_decay(t, w, {5.0, 500.0}).slope - p) <= 0.02);
  }
  CHECK_THROWS_AS(fit_decay(t, v, {1.0, 4.0}), Error);
  v[5] = 0.0;
  CHECK_THROWS_AS(fit_decay(t, v, {1.0, 1000.0}), Error);
}

TEST_CASE("ball energy") {
  const Grid g(2, 32, 2);
  const SpectralField f = random_field(g, 3);
  CHECK(ball_energy(f, 2.0 * g.nyquist_xi()) == doctest::Approx(l2_sq(f)).epsilon(1e-14));
  CHECK(ball_energy(f, 0.4 / g.box_multiplier()) == 0.0);
  double prev = 0.0;
  for (double r = 0.1; r < 12.0; r += 0.25) {
    const double b = ball_energy(f, r);
    CHECK(b >= prev);
    CHECK(b <= l2_sq(f) * (1 + 1e-14));
    prev = b;
  }
  const SpectralField m = single_mode(g, {4, 0, 0}, 1, Complex(1.0, 0.0));  // |xi| = 2
  CHECK(ball_energy(m, 1.999) == 0.0);
  CHECK(ball_energy(m, 2.0) == doctest::Approx(l2_sq(m)));
}

TEST_CASE("splitting radius laws") {
  CHECK(splitting_radius(RadiusLaw::kAlgebraic, 2, 1.0, 2.0) == doctest::Approx(1.0));
  CHECK(splitting_radius(RadiusLaw::kAlgebraic, 3, 1.25, 3.0) == doctest::Approx(1.0));
  const double t = 50.0;
  CHECK(splitting_radius(RadiusLaw::kCriticalLog, 2, 1.0, t) ==
        doctest::Approx(std::pow(2.0 / 3.0 * t * std::log(t), -0.5)));
  CHECK_THROWS_AS(splitting_radius(RadiusLaw::kCriticalLog, 2, 1.0, 2.0), Error);
  CHECK_THROWS_AS(splitting_radius(RadiusLaw::kAlgebraic, 2, 1.0, 0.0), Error);
  CHECK(std::string(to_string(RadiusLaw::kCriticalLog)) == "critical_log");
}

TEST_CASE("splitting report on a decaying flow") {
  const Grid g(2, 128, 32);
  const auto times = logspace(1.0, 200.0, 30);
  const Trajectory w = heat_trajectory(synthesize_datum(kRef, g, 1.0), times, 1.0);
  const SplittingDiagnostic alg = splitting_report(w, kRef, RadiusLaw::kAlgebraic);
  REQUIRE(alg.records.size() == times.size());
  for (const auto& r : alg.records) CHECK(r.ball <= r.total * (1 + 1e-14));
  CHECK(!alg.log_fit);
  const SplittingDiagnostic crit = splitting_report(w, kRef, RadiusLaw::kCriticalLog);
  REQUIRE(crit.log_fit);
  CHECK(crit.records.front().t > std::numbers::e);
  CHECK(crit.log_fit->slope < 0.0);
  // |c|^2 ~ |xi|^{-1} in d = 2: the continuum ball fraction at radius
  // sqrt(2/t) is erf(2) at every t.
  int checked = 0;
  for (const auto& r : alg.records) {
    if (r.radius < 4.0 / g.box_multiplier()) continue;
    CHECK(r.ratio == doctest::Approx(std::erf(2.0)).epsilon(0.02));
    ++checked;
  }
  CHECK(checked >= 10);
}

TEST_CASE("pointwise bound") {
  const Grid g(2, 32, 4);
  const auto times = logspace(1.0, 20.0, 12);
  const Trajectory zero = zero_trajectory(g, times);
  CHECK(pointwise_bound_check(zero, kRef, 2.0).max_ratio == 0.0);

  const SpectralField datum = synthesize_datum(kRef, g, 0.1);
  const Trajectory h = heat_trajectory(datum, times, 1.0);
  const Trajectory surrogate = duhamel_bilinear(h, h, 1.0);
  const PointwiseReport rep = pointwise_bound_check(surrogate, kRef, 2.0);
  CHECK(std::isfinite(rep.max_ratio));
  CHECK(rep.max_ratio > 0.0);
  CHECK(rep.at_time > 2.0);
  CHECK(pointwise_stable(rep, rep));
  PointwiseReport big = rep;
  big.max_ratio *= 3.5;
  CHECK(!pointwise_stable(rep, big));
}

TEST_CASE("energy monitor on a synthetic ledger") {
  EnergyLedger ledger;
  const double gamma = energy_forcing_exponent(kRef);
  for (double t = 1.0; t <= 100.0; t *= 1.02) {
    LedgerRow r;
    r.t = t;
    r.hal_w_sq = 1.0;
    // lhs = 2 t^gamma everywhere except a burst of violations around t = 40.
    const double shape = t <= 10 ? 1.0 + 0.05 * std::cos(t) : 0.9;
    r.dwdt = 2.0 * std::pow(t, gamma) * shape * (t > 40 && t < 42 ? 3.0 : 1.0) - 1.0;
    ledger.rows.push_back(r);
  }
  const EnergyMonitor mon = energy_monitor(ledger, kRef);
  CHECK(mon.exponent == doctest::Approx(gamma));
  CHECK(mon.C == doctest::Approx(2.1).epsilon(0.01));
  REQUIRE(mon.T0_found);
  CHECK(mon.T0 >= std::numbers::e);
  CHECK(mon.T0 < 3.0);
  CHECK(mon.rows_holding < mon.rows_after);
  CHECK(mon.fraction > 0.9);
}

TEST_CASE("pipeline smoke on a small grid") {
  EnsembleConfig cfg = smoke_config();
  const SeedRun run = run_seed(cfg, 1);
  REQUIRE_MESSAGE(run.ok, run.error);
  CHECK(!run.under_resolved);
  CHECK(run.glue_discrepancy < 1e-3);
  CHECK(run.times.size() == run.u_sq.size());
  CHECK(run.times.back() == doctest::Approx(cfg.T_max));
  CHECK(run.series_csv().rfind("t,u_sq,w_sq,h_sq\n", 0) == 0);
  CHECK(run.window.second == doctest::Approx(64.0));
  CHECK(run.h_fit.points >= 10);
  CHECK(run.max_divergence <= 1e-10);

  cfg.picard.max_iter = 1;
  cfg.picard.tol_residual = 1e-30;
  const SeedRun bad = run_seed(cfg, 1);
  CHECK(!bad.ok);
  CHECK(bad.error.find("did not converge") != std::string::npos);

  cfg = smoke_config();
  cfg.seeds = {1, 2, 3};
  cfg.jobs = 2;
  int seen = 0;
  const EnsembleResult ens = run_ensemble(cfg, [&](const SeedRun&) { ++seen; });
  CHECK(seen == 3);
  CHECK(ens.failures == 0);
  CHECK(ens.runs[0].u_fit.slope == run.u_fit.slope);
  std::vector<double> u;
  for (const auto& r : ens.runs) u.push_back(r.u_fit.slope);
  CHECK(ens.median_u == median(u));
  CHECK(ens.predicted.w_sq_slope == doctest::Approx(-1.0));
}

}  // TEST_SUITE
