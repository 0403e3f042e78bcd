// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#include "gnse/randomization.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <unordered_map>

#include "gnse/error.hpp"

namespace gnse {
namespace {

double smooth_f(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

std::int64_t encode(const CubeIndex& c) {
  constexpr std::int64_t kOff = 1 << 20;
  return ((c[0] + kOff) << 42) | ((c[1] + kOff) << 21) | (c[2] + kOff);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_interval(std::uint64_t& state) {
  state = splitmix64(state);
  return static_cast<double>(state >> 11) * 0x1.0p-53;
}

template <class Gen>
double sample(Distribution dist, Gen& gen) {
  switch (dist) {
    case Distribution::kGaussian:
      return std::normal_distribution<double>(0.0, 1.0)(gen);
    case Distribution::kRademacher:
      return (gen() >> 63) ? 1.0 : -1.0;
    case Distribution::kUnit:
      return 1.0;
  }
  return 0.0;
}

}  // namespace

double bump(double r) {
  if (r <= 0.75) return 1.0;
  if (r >= 1.0) return 0.0;
  const double x = (1.0 - r) / 0.25;
  const double a = smooth_f(x);
  return a / (a + smooth_f(1.0 - x));
}

PartitionOfUnity::PartitionOfUnity(const Grid& grid) : grid_(grid) {
  const int d = grid.dim();
  const std::size_t size = grid.size();
  std::unordered_map<std::int64_t, std::uint32_t> ids;
  offsets_.assign(size + 1, 0);
  entries_.reserve(size * 2);

  std::vector<CubeIndex> candidates;
  std::vector<double> bumps;
  for (std::size_t k = 0; k < size; ++k) {
    std::array<double, 3> xi{0.0, 0.0, 0.0};
    std::array<int, 3> base{0, 0, 0};
    for (int c = 0; c < d; ++c) {
      xi[c] = grid.xi(k, c);
      base[c] = static_cast<int>(std::floor(xi[c]));
    }
    candidates.clear();
    bumps.clear();
    double total = 0.0;
    for (int corner = 0; corner < (1 << d); ++corner) {
      CubeIndex cube{0, 0, 0};
      double r2 = 0.0;
      for (int c = 0; c < d; ++c) {
        cube[c] = base[c] + ((corner >> c) & 1);
        const double diff = xi[c] - cube[c];
        r2 += diff * diff;
      }
      const double phi = bump(std::sqrt(r2));
      if (phi > 0.0) {
        candidates.push_back(cube);
        bumps.push_back(phi);
        total += phi;
      }
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      auto [it, inserted] = ids.try_emplace(encode(candidates[i]),
                                            static_cast<std::uint32_t>(cubes_.size()));
      if (inserted) cubes_.push_back(candidates[i]);
      entries_.push_back({it->second, bumps[i] / total});
    }
    offsets_[k + 1] = entries_.size();
  }
}

CubeIndex PartitionOfUnity::canonical(std::uint32_t id) const {
  CubeIndex c = cubes_[id];
  for (int i = 0; i < 3; ++i) {
    if (c[i] > 0) return c;
    if (c[i] < 0) return {-c[0], -c[1], -c[2]};
  }
  return c;
}

double PartitionOfUnity::unity_residual() const {
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < offsets_.size(); ++k) {
    double sum = 0.0;
    for (const auto& e : entries(k)) sum += e.weight;
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

PartitionOfUnity build_partition(const Grid& grid) { return PartitionOfUnity(grid); }

const char* to_string(Distribution d) {
  switch (d) {
    case Distribution::kGaussian: return "gaussian";
    case Distribution::kRademacher: return "rademacher";
    case Distribution::kUnit: return "unit";
  }
  return "?";
}

Distribution distribution_from_string(const std::string& name) {
  if (name == "gaussian") return Distribution::kGaussian;
  if (name == "rademacher") return Distribution::kRademacher;
  if (name == "unit") return Distribution::kUnit;
  throw Error(ErrorKind::kInvalidArgument, "unknown distribution '" + name + "'");
}

double RandomSpec::draw(const CubeIndex& cube, std::uint64_t member) const {
  if (distribution == Distribution::kUnit) return 1.0;
  constexpr std::uint32_t kOff = 1u << 30;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(cube[0]) + kOff,
                    static_cast<std::uint32_t>(cube[1]) + kOff,
                    static_cast<std::uint32_t>(cube[2]) + kOff,
                    static_cast<std::uint32_t>(member), static_cast<std::uint32_t>(member >> 32)};
  std::mt19937_64 gen(seq);
  return sample(distribution, gen);
}

double RandomSpec::exact_moment(int n) const {
  if (distribution != Distribution::kGaussian) return 1.0;
  return std::pow(2.0, 0.5 * n) * std::tgamma(0.5 * (n + 1)) / std::sqrt(std::numbers::pi);
}

std::vector<double> randomization_multiplier(const PartitionOfUnity& partition,
                                             const RandomSpec& spec, std::uint64_t member) {
  std::vector<double> g(partition.cube_count());
  for (std::uint32_t id = 0; id < g.size(); ++id) g[id] = spec.draw(partition.canonical(id), member);
  const std::size_t size = partition.grid().size();
  std::vector<double> mult(size, 0.0);
  for (std::size_t k = 0; k < size; ++k) {
    double v = 0.0;
    for (const auto& e : partition.entries(k)) v += g[e.cube] * e.weight;
    mult[k] = v;
  }
  return mult;
}

SpectralField randomize(const SpectralField& datum, const PartitionOfUnity& partition,
                        const RandomSpec& spec, std::uint64_t member) {
  if (!(datum.grid() == partition.grid()))
    throw Error(ErrorKind::kGridMismatch, "randomize: partition built for another grid");
  const auto mult = randomization_multiplier(partition, spec, member);
  SpectralField out = datum;
  for (int c = 0; c < out.dim(); ++c) {
    auto comp = out.component(c);
    for (std::size_t k = 0; k < comp.size(); ++k) comp[k] *= mult[k];
  }
  return out;
}

MomentEstimate moment_check(const RandomSpec& spec, int n, std::size_t samples) {
  if (n < 1 || samples < 2) throw Error(ErrorKind::kInvalidArgument, "moment_check: need n >= 1, samples >= 2");
  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                    0x6d6f6d65u, static_cast<std::uint32_t>(n)};
  std::mt19937_64 gen(seq);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double v = std::pow(std::abs(sample(spec.distribution, gen)), 2 * n);
    sum += v;
    sum_sq += v * v;
  }
  MomentEstimate est;
  est.estimate = sum / samples;
  const double var = std::max(0.0, sum_sq / samples - est.estimate * est.estimate);
  est.std_error = std::sqrt(var / (samples - 1));
  est.exact = spec.exact_moment(2 * n);
  return est;
}

SpectralField synthesize_datum(const RegimeParams& regime, const Grid& grid, double amplitude,
                               std::uint64_t salt) {
  const int d = grid.dim();
  if (regime.d != d) throw Error(ErrorKind::kGridMismatch, "synthesize_datum: regime/grid dimension differ");
  SpectralField out(grid);
  const double power = -regime.s - 0.5 * d;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const std::size_t km = grid.mirror(k);
    if (grid.xi_norm(k) == 0.0 || grid.nyquist(k) || km < k) continue;
    CubeIndex lattice{0, 0, 0};
    for (int c = 0; c < d; ++c) lattice[c] = grid.wavenumber(k, c);
    std::uint64_t state = splitmix64(static_cast<std::uint64_t>(encode(lattice)) ^ splitmix64(salt));

    std::array<double, 3> v{0.0, 0.0, 0.0};
    double vnorm = 0.0;
    for (int attempt = 0; attempt < 16 && vnorm < 1e-3; ++attempt) {
      double dot = 0.0;
      for (int c = 0; c < d; ++c) {
        v[c] = 2.0 * unit_interval(state) - 1.0;
        dot += v[c] * grid.xi(k, c);
      }
      const double xn2 = grid.xi_norm(k) * grid.xi_norm(k);
      vnorm = 0.0;
      for (int c = 0; c < d; ++c) {
        v[c] -= dot * grid.xi(k, c) / xn2;
        vnorm += v[c] * v[c];
      }
      vnorm = std::sqrt(vnorm);
    }
    if (vnorm < 1e-3) continue;
    const double phase = 2.0 * std::numbers::pi * unit_interval(state);
    const Complex base = amplitude * std::pow(grid.xi_norm(k), power) * std::polar(1.0, phase);
    for (int c = 0; c < d; ++c) {
      out.at(c, k) = base * (v[c] / vnorm);
      out.at(c, km) = std::conj(out.at(c, k));
    }
  }
  return out;
}

SpectralField random_field(const Grid& grid, std::uint64_t seed, bool solenoidal, bool truncate) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  PhysicalField noise(grid);
  for (double& v : noise.data()) v = normal(gen);
  SpectralField out = to_spectral(noise);
  out.zero_nyquist();
  if (truncate) {
    for (int c = 0; c < out.dim(); ++c) {
      auto comp = out.component(c);
      for (std::size_t k = 0; k < comp.size(); ++k)
        if (!grid.dealias_keep(k)) comp[k] = 0.0;
    }
  }
  if (solenoidal) leray_project_inplace(out);
  out.zero_mean();
  return out;
}

}  // namespace gnse
