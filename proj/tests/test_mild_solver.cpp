// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "gnse/error.hpp"
#include "gnse/mild_solver.hpp"
#include "gnse/randomization.hpp"
#include "gnse/semigroup.hpp"
#include "gnse/stats.hpp"
#include "test_util.hpp"

using namespace gnse;
using namespace gnse::testing;

namespace {

const RegimeParams kRef{2, 1.0, -0.5};

SpectralField small_datum(const Grid& g, double amplitude, std::uint64_t seed = 1) {
  return randomize(synthesize_datum(kRef, g, amplitude), PartitionOfUnity(g),
                   {Distribution::kGaussian, seed}, 0);
}

Trajectory heat_on_nodes(const SpectralField& datum, double tau, int nodes) {
  return heat_trajectory(datum, picard_nodes(tau, nodes), kRef.alpha);
}

Trajectory plus(const Trajectory& a, const Trajectory& b) { return a - scaled(b, -1.0); }

double linf_l2(const Trajectory& t) {
  double out = 0.0;
  for (const auto& f : t.fields) out = std::max(out, std::sqrt(l2_sq(f)));
  return out;
}

}  // namespace

TEST_SUITE("mild_solver") {

TEST_CASE("picard nodes cluster quadratically") {
  const auto nodes = picard_nodes(0.1, 17);
  REQUIRE(nodes.size() == 17);
  CHECK(nodes.front() == 0.0);
  CHECK(nodes.back() == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(nodes[4] == doctest::Approx(0.1 * 0.0625).epsilon(1e-15));
  CHECK_THROWS_AS(picard_nodes(0.1, 15), Error);
  CHECK_THROWS_AS(picard_nodes(0.0, 33), Error);
}

TEST_CASE("Duhamel quadrature of a constant integrand") {
  const Grid g(2, 16, 1);
  const SpectralField c = random_field(g, 3);
  const double alpha = 1.0, T = 0.5;
  // Closed form: c(xi) (1 - e^{-t |xi|^{2 alpha}}) / |xi|^{2 alpha}.
  auto exact = [&](double t) {
    SpectralField out = c;
    for (int comp = 0; comp < 2; ++comp)
      for (std::size_t k = 1; k < g.size(); ++k) {
        const double lam = std::pow(g.xi_norm(k), 2 * alpha);
        out.at(comp, k) *= (1 - std::exp(-t * lam)) / lam;
      }
    return out;
  };
  auto error = [&](int M) {
    Trajectory integrand;
    for (int j = 0; j <= M; ++j) integrand.push(T * j / M, c);
    const Trajectory m = duhamel_integrate(integrand, alpha);
    CHECK(max_abs(m.fields.front()) == 0.0);
    return std::sqrt(l2_sq(m.fields.back() - exact(T)));
  };
  const double e1 = error(16), e2 = error(32), e3 = error(64);
  CHECK(e3 < 1e-2 * std::sqrt(l2_sq(exact(T))));
  CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.05));
  CHECK(std::log2(e2 / e3) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("K on trivial inputs and quadratic scaling") {
  const Grid g(2, 32, 2);
  const auto nodes = picard_nodes(0.1, 17);
  const Trajectory zero = zero_trajectory(g, nodes);
  CHECK(linf_l2(apply_K(zero, zero, 1.0)) == 0.0);
  const Trajectory h = heat_trajectory(small_datum(g, 1.0), nodes, 1.0);
  CHECK(linf_l2(duhamel_bilinear(zero, h, 1.0)) == 0.0);
  CHECK(linf_l2(duhamel_bilinear(h, zero, 1.0)) == 0.0);

  const Trajectory k0 = apply_K(zero, h, 1.0);
  CHECK(linf_l2(plus(k0, duhamel_bilinear(h, h, 1.0))) <= 1e-14 * linf_l2(k0));
  const Trajectory k0_double = apply_K(zero, scaled(h, 2.0), 1.0);
  CHECK(linf_l2(k0_double - scaled(k0, 4.0)) <= 1e-13 * linf_l2(k0_double));
  CHECK(max_abs(k0.fields.front()) == 0.0);
  for (const auto& f : k0.fields) CHECK(divergence_residual(f) <= 1e-10);

  // Expanded form of K agrees with the summed form.
  const Trajectory w = scaled(k0, 3.0);
  const Trajectory expanded =
      scaled(plus(plus(duhamel_bilinear(w, w, 1.0), duhamel_bilinear(w, h, 1.0)),
                  plus(duhamel_bilinear(h, w, 1.0), duhamel_bilinear(h, h, 1.0))),
             -1.0);
  CHECK(linf_l2(apply_K(w, h, 1.0) - expanded) <= 1e-12 * linf_l2(expanded));
}

TEST_CASE("zero heat flow converges immediately") {
  const Grid g(2, 16, 1);
  const Trajectory h = zero_trajectory(g, picard_nodes(0.1, 17));
  PicardConfig cfg;
  cfg.nodes = 17;
  const PicardResult res = picard_solve(h, kRef, cfg);
  CHECK(res.converged);
  CHECK(res.iterations == 1);
  CHECK(linf_l2(res.w) == 0.0);
}

TEST_CASE("small data contract geometrically") {
  const Grid g(2, 32, 2);
  PicardConfig cfg;
  cfg.tau = 0.1;
  cfg.nodes = 33;
  const Trajectory h = heat_on_nodes(small_datum(g, 0.05), cfg.tau, cfg.nodes);
  const PicardResult res = picard_solve(h, kRef, cfg);
  REQUIRE(res.converged);
  CHECK(res.residuals.back() <= cfg.tol_residual);
  for (double r : res.contraction_ratios) CHECK(r <= 0.75);
  CHECK(res.residuals.front() == doctest::Approx(picard_norm_value(duhamel_bilinear(h, h, 1.0), kRef, cfg)).epsilon(1e-12));
  CHECK(res.first_iterate_norm == res.residuals.front());

  // Independent residual of the returned iterate.
  const Trajectory rest = apply_K(res.w, h, kRef.alpha) - res.w;
  CHECK(picard_norm_value(rest, kRef, cfg) <= cfg.tol_residual);
  CHECK(linf_l2(rest) <= 10 * cfg.tol_residual);

  // t^mu ||w(t)||_2 stays bounded near 0 (mu = 0 here).
  std::vector<double> lt, lw;
  for (std::size_t j = 1; j < 9; ++j) {
    lt.push_back(std::log(res.w.times[j]));
    lw.push_back(0.5 * std::log(l2_sq(res.w.fields[j])));
  }
  CHECK(fit_line(lt, lw).slope >= -derive_exponents(kRef).mu - 0.1);
}

TEST_CASE("uniqueness norm restricts to the L^a L^p component") {
  PicardConfig cfg;
  cfg.uniqueness_norm = true;
  const auto norms = picard_norm(kRef, cfg);
  REQUIRE(norms.size() == 1);
  CHECK(norms[0].time_exponent == doctest::Approx(4.0));
  CHECK(norms[0].spatial.r == doctest::Approx(4.0));
  cfg.uniqueness_norm = false;
  CHECK(picard_norm(kRef, cfg).size() == classify_yspace(kRef).components.size());
}

TEST_CASE("large data diverge and report the heat-flow norm") {
  const Grid g(2, 32, 2);
  PicardConfig cfg;
  cfg.tau = 0.1;
  cfg.nodes = 17;
  cfg.max_iter = 40;
  const SpectralField big = small_datum(g, 40.0);
  const Trajectory h = heat_on_nodes(big, cfg.tau, cfg.nodes);
  try {
    picard_solve(h, kRef, cfg);
    FAIL("expected divergence");
  } catch (const PicardDivergence& e) {
    CHECK(e.kind() == ErrorKind::kDiverged);
    CHECK(e.h_norm() == doctest::Approx(picard_norm_value(h, kRef, cfg)));
    CHECK(e.residuals().size() >= 2);
  }
  const PicardResult shrunk = picard_solve_auto(big, kRef, cfg);
  CHECK(shrunk.converged);
  CHECK(shrunk.tau < cfg.tau);
}

TEST_CASE("contraction probe") {
  const Grid g(2, 32, 2);
  const auto nodes = picard_nodes(0.1, 17);
  PicardConfig cfg;
  const Trajectory h = heat_trajectory(small_datum(g, 0.05), nodes, 1.0);
  std::vector<double> samples;
  for (int i = 0; i < 4; ++i) {
    const Trajectory w1 = heat_trajectory(small_datum(g, 0.02, 10 + i), nodes, 1.0);
    const Trajectory w2 = heat_trajectory(small_datum(g, 0.02, 20 + i), nodes, 1.0);
    const double ck = contraction_probe(w1, w2, h, kRef, cfg);
    CHECK(std::isfinite(ck));
    samples.push_back(ck);
    if (i == 0) {
      const double scaled_ck = contraction_probe(scaled(w1, 3.0), scaled(w2, 3.0), scaled(h, 3.0), kRef, cfg);
      CHECK(scaled_ck == doctest::Approx(ck).epsilon(1e-10));
      CHECK(std::isfinite(contraction_probe(w1, zero_trajectory(g, nodes), h, kRef, cfg)));
      CHECK_THROWS_AS(contraction_probe(w1, w1, h, kRef, cfg), Error);
    }
  }
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  CHECK(*hi / *lo <= 2.0);
}

}  // TEST_SUITE
