// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#include "gnse/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gnse/error.hpp"

namespace gnse {

namespace {

std::string fmt_regime(int d, double alpha, double s) {
  std::ostringstream os;
  os.precision(17);
  os << "(d=" << d << ", alpha=" << alpha << ", s=" << s << ")";
  return os.str();
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::string SpatialNorm::describe() const {
  std::ostringstream os;
  auto r_str = [](double r) { return std::isinf(r) ? std::string("inf") : fmt_double(r); };
  switch (kind) {
    case Kind::kLp: os << "L^" << r_str(r); break;
    case Kind::kHomSobolev: os << "H^{" << fmt_double(order) << "}(hom)"; break;
    case Kind::kInhomSobolev: os << "W^{" << fmt_double(order) << "," << r_str(r) << "}"; break;
    case Kind::kHomSobolevLp: os << "W^{" << fmt_double(order) << "," << r_str(r) << "}(hom)"; break;
  }
  return os.str();
}

std::string NormSpec::describe() const {
  std::ostringstream os;
  os << "L^" << (std::isinf(time_exponent) ? std::string("inf") : fmt_double(time_exponent));
  if (weight != 0.0) os << "_{" << fmt_double(weight) << ";T}";
  else os << "_T";
  os << " " << spatial.describe();
  return os.str();
}

bool RegimeParams::is_critical() const {
  return std::abs(alpha - critical_alpha()) <= kEndpointTol * std::max(1.0, critical_alpha());
}

double RegimeParams::s_lower() const { return -alpha + std::max(1.0 - alpha, 0.0); }

double y4_extra_exponent(const RegimeParams& regime) {
  const double mu = std::max(-regime.s / regime.alpha + 1.0 / (2.0 * regime.alpha) - 1.0, 0.0);
  const double den = 2.0 * regime.alpha * (1.0 - mu) - 2.0 * regime.s - 3.0;
  return 2.0 * regime.d / den;
}

RegimeParams validate_regime(int d, double alpha, double s) {
  if (d < 2) {
    throw Error(ErrorKind::kDimensionTooSmall, "d must be >= 2, got " + std::to_string(d));
  }
  const double crit = (d + 2) / 4.0;
  if (!std::isfinite(alpha) || alpha <= 0.5 + kEndpointTol ||
      alpha > crit + kEndpointTol * std::max(1.0, crit)) {
    throw Error(ErrorKind::kAlphaOutOfRange,
                "alpha must lie in (1/2, (d+2)/4] = (0.5, " + fmt_double(crit) + "], got " +
                    fmt_regime(d, alpha, s));
  }
  RegimeParams regime{d, alpha, s};
  const double lower = regime.s_lower();
  if (!std::isfinite(s) || s <= lower + kEndpointTol || s >= -kEndpointTol) {
    throw Error(ErrorKind::kSOutOfRange,
                "s must lie in (-alpha + (1-alpha)_+, 0) = (" + fmt_double(lower) + ", 0), got " +
                    fmt_regime(d, alpha, s));
  }
  if (alpha > 1.0 && s < -1.0) {
    // The extra Lebesgue exponent of Y_{T,4} must stay a usable spatial exponent.
    const double e = y4_extra_exponent(regime);
    if (!std::isfinite(e) || e < 2.0 || e > 1e3) {
      throw Error(ErrorKind::kSOutOfRange,
                  "Y4 extra exponent " + fmt_double(e) + " leaves [2, 1000] for " +
                      fmt_regime(d, alpha, s));
    }
  }
  return regime;
}

double DerivedExponents::sigma(double weight, double time_exponent, double eta) const {
  const double inv_a = std::isinf(time_exponent) ? 0.0 : 1.0 / time_exponent;
  return (s - (eta - 2.0 * alpha * weight - 2.0 * alpha * inv_a)) / (2.0 * alpha);
}

int DerivedExponents::moment_order() const {
  int two_n = static_cast<int>(std::ceil(r_s - 1e-12));
  if (two_n % 2 != 0) ++two_n;
  return std::max(two_n, 2);
}

DerivedExponents derive_exponents(const RegimeParams& regime) {
  const double alpha = regime.alpha;
  const double s = regime.s;
  const double d = regime.d;
  DerivedExponents e;
  e.alpha = alpha;
  e.s = s;
  e.d = regime.d;
  e.mu = std::max(-s / alpha + 1.0 / (2.0 * alpha) - 1.0, 0.0);
  e.a = 4.0 * alpha / (2.0 * alpha * (e.mu + 1.0) - 1.0);
  e.p = 2.0 * d / (2.0 * alpha * (1.0 - e.mu) - 1.0);
  e.b = 4.0 * alpha / (1.0 - 2.0 * alpha * e.mu);
  e.q = 2.0 * d / (d + 1.0 - 2.0 * alpha * (1.0 - e.mu));
  e.lambda = 2.0 * d / (d + 1.0 - 2.0 * alpha * (e.mu + 1.0));
  e.r_s = std::max(e.a, e.p);
  return e;
}

std::string YSpaceCase::name() const { return "Y" + std::to_string(static_cast<int>(id)); }

YSpaceCase classify_yspace(const RegimeParams& regime) {
  const double alpha = regime.alpha;
  const double s = regime.s;
  const DerivedExponents e = derive_exponents(regime);
  YSpaceCase out;
  if (alpha <= 2.0 / 3.0) {
    out.id = YCase::kY1;
  } else if (alpha <= 1.0) {
    out.id = (s >= -alpha / 2.0) ? YCase::kY1 : YCase::kY2;
  } else {
    out.id = (s >= -1.0) ? YCase::kY3 : YCase::kY4;
  }

  auto& c = out.components;
  c.push_back({e.a, 0.0, SpatialNorm::lp(e.p)});
  c.push_back({e.a, 0.0, SpatialNorm::lp(e.lambda)});
  c.push_back({e.a, 0.0, SpatialNorm::lp(e.q)});
  switch (out.id) {
    case YCase::kY1:
      c.push_back({e.b, 0.0, SpatialNorm::inhom_sobolev(1.0 - alpha * (2.0 * e.mu + 1.0), e.p)});
      c.push_back({8.0 * alpha / (1.0 - 2.0 * alpha * (e.mu - 1.0)),
                   (3.0 * e.mu + 1.0) / 4.0 - 1.0 / (8.0 * alpha),
                   SpatialNorm::inhom_sobolev(0.5, e.p)});
      break;
    case YCase::kY2:
      c.push_back({e.a, 1.0 - 1.0 / (2.0 * alpha),
                   SpatialNorm::inhom_sobolev(2.0 * alpha - 1.0, e.p)});
      break;
    case YCase::kY3:
    case YCase::kY4:
      c.push_back({e.b, 0.0, SpatialNorm::lp(e.p)});
      c.push_back({e.a, 1.0 / (2.0 * alpha), SpatialNorm::inhom_sobolev(1.0, e.p)});
      if (out.id == YCase::kY4) {
        c.push_back({e.a, 0.0, SpatialNorm::lp(y4_extra_exponent(regime))});
      }
      break;
  }
  return out;
}

std::vector<NormSpec> xspace_components(const RegimeParams& regime, XSpace which) {
  const DerivedExponents e = derive_exponents(regime);
  const double alpha = regime.alpha;
  if (which == XSpace::kX1) {
    const double te = 4.0 * alpha / (2.0 * alpha * (1.0 - e.mu) - 1.0);
    return {{te, e.mu, SpatialNorm::lp(e.p)}, {te, e.mu, SpatialNorm::lp(e.q)}};
  }
  const double rho = -regime.s / (2.0 * alpha);
  return {{kInf, rho, SpatialNorm::lp(2.0)}, {2.0, rho, SpatialNorm::inhom_sobolev(alpha, 2.0)}};
}

double ladder_sigma(int n) {
  const double p = std::pow(2.0, n);
  return (p - 2.0) / (p - 1.0);
}

double ladder_eta(int n) { return std::pow(2.0, n + 1) - 2.0; }

double ladder_intermediate_slope(const RegimeParams& regime, int n) {
  return (std::pow(2.0, n + 1) - 1.0) * (-(regime.d + 2.0) / (2.0 * regime.alpha) + 2.0);
}

DecayLadderClass classify_decay_ladder(const RegimeParams& regime) {
  if (regime.is_critical() || regime.alpha > regime.critical_alpha()) {
    throw Error(ErrorKind::kCriticalAlpha,
                "decay ladder needs alpha < (d+2)/4; use the logarithmic splitting path");
  }
  const double alpha = regime.alpha;
  const double s = regime.s;
  const double dd = regime.d + 2.0;
  const double final_slope = -dd / (2.0 * alpha) + 2.0 + 2.0 * s / alpha;

  DecayLadderClass out;
  // Descending through A_1^{(3)} ⊃ A_2^{(1,2,3)}, ...: at level n the point is
  // already known to satisfy alpha > sigma_n (d+2)/4 and s < eta_{n-1}(alpha - (d+2)/4).
  for (int n = 1; n <= kLadderCap; ++n) {
    if (alpha <= ladder_sigma(n + 1) * dd / 4.0) {
      out.n = n;
      out.j = 1;
      out.w_slope = final_slope;
      return out;
    }
    if (s >= ladder_eta(n) * (alpha - dd / 4.0)) {
      out.n = n;
      out.j = 2;
      out.w_slope = final_slope;
      return out;
    }
    out.intermediate.push_back({n, ladder_intermediate_slope(regime, n)});
  }
  out.n = kLadderCap;
  out.j = 3;
  out.w_slope = ladder_intermediate_slope(regime, kLadderCap);
  out.intermediate.pop_back();
  return out;
}

DecaySlopes decay_exponents(const RegimeParams& regime) {
  const double alpha = regime.alpha;
  const double s = regime.s;
  return {s / alpha, -(regime.d + 2.0) / (2.0 * alpha) + 2.0 + 2.0 * s / alpha};
}

double energy_forcing_exponent(const RegimeParams& regime) {
  return -(regime.d + 2.0) / (2.0 * regime.alpha) + 1.0 + 2.0 * regime.s / regime.alpha;
}

}  // namespace gnse
