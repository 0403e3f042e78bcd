// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "gnse/error.hpp"
#include "gnse/randomization.hpp"
#include "gnse/semigroup.hpp"
#include "gnse/stats.hpp"
#include "test_util.hpp"

using namespace gnse;
using namespace gnse::testing;

TEST_SUITE("semigroup") {

TEST_CASE("propagator identities") {
  const Grid g(2, 32, 2);
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const SpectralField f = random_field(g, 100 + i);
    const double alpha = 0.55 + 0.45 * unit(gen);
    const double t1 = unit(gen), t2 = unit(gen);
    CHECK(max_abs_diff(heat_propagate(f, 0.0, alpha), f) == 0.0);
    const SpectralField two = heat_propagate(heat_propagate(f, t1, alpha), t2, alpha);
    CHECK(max_abs_diff(two, heat_propagate(f, t1 + t2, alpha)) <= 1e-13 * max_abs(f));
    for (double order : {-0.5, 0.0, 1.0}) {
      CHECK(hom_sobolev_sq(heat_propagate(f, t1 + t2, alpha), order) <=
            hom_sobolev_sq(heat_propagate(f, t1, alpha), order));
    }
  }
  const SpectralField m = single_mode(g, {4, 0, 0}, 1, Complex(1.0, 0.0));  // |xi| = 2
  CHECK(max_abs_diff(heat_propagate(m, 0.5, 1.0), std::exp(-2.0) * m) <= 1e-16);
  CHECK_THROWS_AS(heat_propagate(m, -1e-3, 1.0), Error);
}

TEST_CASE("heat trajectories are exact and dissipative") {
  const Grid g(2, 32, 2);
  const SpectralField f = random_field(g, 7);
  const std::vector<double> only0{0.0};
  CHECK(max_abs_diff(heat_trajectory(f, only0, 1.0).fields[0], f) == 0.0);
  const auto times = logspace(1e-3, 10.0, 30);
  const Trajectory h = heat_trajectory(f, times, 0.8);
  const HeatFlow flow(f, 0.8);
  for (std::size_t i = 0; i < h.size(); ++i) {
    CHECK(max_abs_diff(h.fields[i], flow.at(times[i])) == 0.0);
    if (i > 0) CHECK(l2_sq(h.fields[i]) <= l2_sq(h.fields[i - 1]));
  }
  CHECK(h.provenance == Provenance::kHeatFlow);
}

TEST_CASE("heat flow of a threshold datum decays at rate s over 2 alpha") {
  const RegimeParams r{2, 1.0, -0.5};
  const Grid g(2, 128, 32);
  const auto [lo, hi] = resolved_window(g, r.alpha);
  const auto times = logspace(lo, hi, 24);
  const Trajectory h = heat_trajectory(synthesize_datum(r, g, 1.0), times, r.alpha);
  std::vector<double> lt, lv;
  for (std::size_t i = 0; i < h.size(); ++i) {
    lt.push_back(std::log(times[i]));
    lv.push_back(0.5 * std::log(l2_sq(h.fields[i])));
  }
  CHECK(fit_line(lt, lv).slope == doctest::Approx(r.s / (2 * r.alpha)).epsilon(0.05 / 0.25));
}

TEST_CASE("resolved window guard") {
  const Grid g(2, 64, 8);
  const auto [lo, hi] = resolved_window(g, 1.0);
  CHECK(lo == doctest::Approx(std::pow(g.dx(), 2.0)));
  CHECK(hi == doctest::Approx(16.0));
  CHECK_NOTHROW(require_resolved(g, 1.0, {lo, hi}));
  CHECK_THROWS_AS(require_resolved(g, 1.0, {0.5 * lo, hi}), Error);
  CHECK_THROWS_AS(require_resolved(g, 1.0, {lo, 2 * hi}), Error);
  CHECK_THROWS_AS(smoothing_slope(1.0, 0.0, 2.0, 2.0, g, {lo, 2 * hi}), Error);
  CHECK_THROWS_AS(smoothing_slope(1.0, 0.0, 2.0, 4.0, g, {lo, hi}), Error);
}

TEST_CASE("smoothing exponents") {
  CHECK(smoothing_prediction(2, 1.0, 1.0, 2.0, 2.0) == doctest::Approx(-0.5));
  CHECK(smoothing_prediction(2, 0.75, 0.0, 4.0, 2.0) == doctest::Approx(-1.0 / 3.0));
  const Grid g(2, 256, 16);
  SlopeFit fit = smoothing_slope(1.0, 0.0, 2.0, 2.0, g, smoothing_window(g, 1.0));
  CHECK(std::abs(fit.slope) <= 0.02);
  fit = smoothing_slope(1.0, 1.0, 2.0, 2.0, g, smoothing_window(g, 1.0));
  CHECK(fit.slope == doctest::Approx(-0.5).epsilon(0.03 / 0.5));
  fit = smoothing_slope(0.75, 0.0, 4.0, 2.0, g, smoothing_window(g, 0.75));
  CHECK(std::abs(fit.slope - fit.predicted) <= 0.03);
}

TEST_CASE("moment scaling hypotheses") {
  const RegimeParams r{2, 1.0, -0.5};
  // L^inf_T H^s: sigma = 0.
  CHECK(moment_scaling_prediction(r, {kInf, 0.0, SpatialNorm::hom_sobolev(r.s)}) == doctest::Approx(0.0));
  CHECK(moment_scaling_prediction(r, {2.0, 0.0, SpatialNorm::hom_sobolev(r.s + 0.5)}) == doctest::Approx(0.25));
  CHECK(moment_scaling_prediction(r, {kInf, 1.0, SpatialNorm::hom_sobolev(r.s + 1.0)}) == doctest::Approx(0.5));
  auto violates = [&](NormSpec n) {
    try {
      moment_scaling_prediction(r, n);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::kHypothesisViolation;
    }
    return false;
  };
  CHECK(violates({kInf, 0.0, SpatialNorm::hom_sobolev(r.s + 0.5)}));    // eta - 2 alpha rho > s
  CHECK(violates({2.0, 0.0, SpatialNorm::hom_sobolev(r.s + 1.5)}));     // eta - 2 alpha rho - 2 alpha / a > s
  CHECK(violates({2.0, -0.6, SpatialNorm::hom_sobolev(r.s)}));          // rho a <= -1
  CHECK(violates({8.0, 0.0, SpatialNorm::hom_sobolev(r.s)}));           // a > r_s
  CHECK(violates({2.0, 0.0, SpatialNorm::hom_sobolev_lp(r.s, 6.0)}));   // p > r_s
  // eta below s: the per-mode bound fails at low frequency.
  CHECK(violates({2.0, 0.0, SpatialNorm::hom_sobolev(r.s - r.alpha)}));
}

TEST_CASE("moment scaling of the heat flow in L^inf_T H^s is flat") {
  const RegimeParams r{2, 1.0, -0.5};
  const Grid g(2, 64, 8);
  const std::vector<double> Ts{1.0, 2.0, 4.0, 8.0};
  MomentScalingOptions opt;
  opt.nodes = 8;
  const MomentScalingResult res =
      hflow_moment_scaling(r, g, {kInf, 0.0, SpatialNorm::hom_sobolev(r.s)}, Ts, 8, opt);
  CHECK(res.sigma == 0.0);
  CHECK(std::abs(res.sigma_hat) <= 0.05);
  CHECK(res.r_s == doctest::Approx(4.0));
  CHECK(res.last_samples.size() == 8);

  opt.random.distribution = Distribution::kUnit;
  const MomentScalingResult unit =
      hflow_moment_scaling(r, g, {2.0, 0.0, SpatialNorm::hom_sobolev(r.s + 0.5)}, Ts, 4, opt);
  for (double v : unit.last_samples) CHECK(v == unit.last_samples.front());
}

}  // TEST_SUITE
