// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#include "gnse/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "gnse/error.hpp"

namespace gnse {

Grid::Grid(int d, int n, int m) : d_(d), n_(n), m_(m) {
  if (d != 2 && d != 3) throw Error(ErrorKind::kInvalidGrid, "only d = 2 or 3 is supported");
  if (n < 4 || (n & (n - 1)) != 0) {
    throw Error(ErrorKind::kInvalidGrid, "n must be a power of two >= 4");
  }
  if (m < 1) throw Error(ErrorKind::kInvalidGrid, "box multiplier m must be >= 1");

  size_ = 1;
  for (int c = 0; c < d; ++c) size_ *= static_cast<std::size_t>(n);

  auto t = std::make_shared<Tables>();
  t->xi.assign(d, std::vector<double>(size_));
  t->wavenumber.assign(d, std::vector<int>(size_));
  t->xi_norm.resize(size_);
  t->nyquist.resize(size_);
  t->keep.resize(size_);
  t->mirror.resize(size_);

  const int half = n / 2;
  const int cutoff = n / 3;
  std::vector<int> idx(d, 0);
  for (std::size_t k = 0; k < size_; ++k) {
    std::size_t rem = k;
    for (int c = d - 1; c >= 0; --c) {
      idx[c] = static_cast<int>(rem % n);
      rem /= n;
    }
    double norm_sq = 0.0;
    bool nyq = false;
    bool keep = true;
    std::size_t mirror = 0;
    for (int c = 0; c < d; ++c) {
      const int j = idx[c] < half ? idx[c] : idx[c] - n;
      t->wavenumber[c][k] = j;
      const double xi = static_cast<double>(j) / m;
      t->xi[c][k] = xi;
      norm_sq += xi * xi;
      if (j == -half) nyq = true;
      if (std::abs(j) > cutoff) keep = false;
      mirror = mirror * n + static_cast<std::size_t>((n - idx[c]) % n);
    }
    t->xi_norm[k] = std::sqrt(norm_sq);
    t->nyquist[k] = nyq ? 1 : 0;
    t->keep[k] = keep ? 1 : 0;
    t->mirror[k] = mirror;
  }
  tables_ = std::move(t);
}

double Grid::length() const { return 2.0 * std::numbers::pi * m_; }

double Grid::volume() const { return std::pow(length(), d_); }

double Grid::infrared_time(double alpha) const { return std::pow(static_cast<double>(m_), 2.0 * alpha); }

std::size_t Grid::flat_index(std::span<const int> lattice) const {
  std::size_t k = 0;
  for (int c = 0; c < d_; ++c) {
    int j = lattice[c];
    if (j < -n_ / 2 || j >= n_ / 2) throw Error(ErrorKind::kInvalidArgument, "lattice index out of range");
    k = k * n_ + static_cast<std::size_t>(j < 0 ? j + n_ : j);
  }
  return k;
}

// SpectralField ---------------------------------------------------------------

SpectralField::SpectralField(const Grid& grid)
    : grid_(grid), data_(static_cast<std::size_t>(grid.dim()) * grid.size()) {}

void require_same_grid(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw Error(ErrorKind::kGridMismatch, "fields live on different grids");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double factor) {
  for (auto& v : data_) v *= factor;
  return *this;
}

void SpectralField::zero_mean() {
  for (int c = 0; c < dim(); ++c) at(c, 0) = 0.0;
}

void SpectralField::zero_nyquist() {
  for (std::size_t k = 0; k < grid_.size(); ++k) {
    if (!grid_.nyquist(k)) continue;
    for (int c = 0; c < dim(); ++c) at(c, k) = 0.0;
  }
}

bool SpectralField::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& v) { return v == Complex{}; });
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double factor, SpectralField a) { return a *= factor; }

// PhysicalField ---------------------------------------------------------------

PhysicalField::PhysicalField(const Grid& grid)
    : grid_(grid), data_(static_cast<std::size_t>(grid.dim()) * grid.size()) {}

double PhysicalField::coordinate(std::size_t i, int c) const {
  std::size_t rem = i;
  for (int cc = grid_.dim() - 1; cc > c; --cc) rem /= grid_.modes();
  return grid_.dx() * static_cast<double>(rem % grid_.modes());
}

// Transforms ------------------------------------------------------------------

PhysicalField to_physical(const SpectralField& field) {
  const Grid& grid = field.grid();
  PhysicalField out(grid);
  std::vector<Complex> buf(grid.size());
  for (int c = 0; c < field.dim(); ++c) {
    auto src = field.component(c);
    std::copy(src.begin(), src.end(), buf.begin());
    detail::fft_inplace(grid, buf, +1);
    auto dst = out.component(c);
    for (std::size_t k = 0; k < grid.size(); ++k) dst[k] = buf[k].real();
  }
  return out;
}

SpectralField to_spectral(const PhysicalField& samples) {
  const Grid& grid = samples.grid();
  SpectralField out(grid);
  std::vector<Complex> buf(grid.size());
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (int c = 0; c < samples.dim(); ++c) {
    auto src = samples.component(c);
    for (std::size_t k = 0; k < grid.size(); ++k) buf[k] = src[k];
    detail::fft_inplace(grid, buf, -1);
    auto dst = out.component(c);
    for (std::size_t k = 0; k < grid.size(); ++k) dst[k] = buf[k] * scale;
  }
  return out;
}

// Multipliers -----------------------------------------------------------------

void leray_project_inplace(SpectralField& field) {
  const Grid& grid = field.grid();
  const int d = grid.dim();
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double n2 = grid.xi_norm(k) * grid.xi_norm(k);
    Complex dot = 0.0;
    for (int c = 0; c < d; ++c) dot += grid.xi(k, c) * field.at(c, k);
    dot /= n2;
    for (int c = 0; c < d; ++c) field.at(c, k) -= grid.xi(k, c) * dot;
  }
  field.zero_mean();
}

SpectralField leray_project(const SpectralField& field) {
  SpectralField out = field;
  leray_project_inplace(out);
  return out;
}

SpectralField apply_fractional_power(const SpectralField& field, double order) {
  SpectralField out = field;
  const Grid& grid = field.grid();
  if (order == 0.0) {
    out.zero_mean();
    return out;
  }
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double mult = std::pow(grid.xi_norm(k), order);
    for (int c = 0; c < field.dim(); ++c) out.at(c, k) *= mult;
  }
  out.zero_mean();
  return out;
}

SpectralField apply_bessel_power(const SpectralField& field, double order) {
  SpectralField out = field;
  if (order == 0.0) return out;
  const Grid& grid = field.grid();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double r = grid.xi_norm(k);
    const double mult = std::pow(1.0 + r * r, 0.5 * order);
    for (int c = 0; c < field.dim(); ++c) out.at(c, k) *= mult;
  }
  return out;
}

SpectralField partial(const SpectralField& field, int c) {
  SpectralField out = field;
  const Grid& grid = field.grid();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    // Nyquist derivatives are not representable as real fields.
    const Complex mult = grid.nyquist(k) ? Complex{} : Complex{0.0, grid.xi(k, c)};
    for (int cc = 0; cc < field.dim(); ++cc) out.at(cc, k) *= mult;
  }
  return out;
}

double divergence_residual(const SpectralField& field) {
  const Grid& grid = field.grid();
  double worst = 0.0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    Complex dot = 0.0;
    double mag_sq = 0.0;
    for (int c = 0; c < field.dim(); ++c) {
      dot += grid.xi(k, c) * field.at(c, k);
      mag_sq += std::norm(field.at(c, k));
    }
    if (mag_sq == 0.0) continue;
    worst = std::max(worst, std::abs(dot) / (grid.xi_norm(k) * std::sqrt(mag_sq)));
  }
  return worst;
}

double hermitian_residual(const SpectralField& field) {
  const Grid& grid = field.grid();
  double worst = 0.0;
  for (int c = 0; c < field.dim(); ++c) {
    for (std::size_t k = 0; k < grid.size(); ++k) {
      worst = std::max(worst, std::abs(field.at(c, grid.mirror(k)) - std::conj(field.at(c, k))));
    }
  }
  return worst;
}

double inner(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g);
  auto a = f.data();
  auto b = g.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  return f.grid().volume() * sum;
}

double l2_sq(const SpectralField& f) { return inner(f, f); }

double hom_sobolev_sq(const SpectralField& f, double order) {
  const Grid& grid = f.grid();
  double sum = 0.0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    double mag = 0.0;
    for (int c = 0; c < f.dim(); ++c) mag += std::norm(f.at(c, k));
    if (mag == 0.0) continue;
    sum += std::pow(grid.xi_norm(k), 2.0 * order) * mag;
  }
  return grid.volume() * sum;
}

// Trajectory ------------------------------------------------------------------

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::kHeatFlow: return "heat-flow";
    case Provenance::kPicard: return "picard";
    case Provenance::kEvolution: return "evolution";
    case Provenance::kGlued: return "glued";
    case Provenance::kSynthetic: return "synthetic";
  }
  return "unknown";
}

void Trajectory::push(double t, SpectralField field) {
  times.push_back(t);
  fields.push_back(std::move(field));
}

void Trajectory::validate() const {
  if (times.size() != fields.size()) throw Error(ErrorKind::kSizeMismatch, "times/fields length mismatch");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0)) throw Error(ErrorKind::kNegativeTime, "trajectory node time < 0");
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw Error(ErrorKind::kInvalidArgument, "trajectory node times must increase strictly");
    }
    if (!(fields[i].grid() == fields.front().grid())) {
      throw Error(ErrorKind::kGridMismatch, "trajectory fields live on different grids");
    }
  }
}

std::size_t Trajectory::find_time(double t, double rel_tol) const {
  const double tol = rel_tol * std::max(1.0, std::abs(t));
  auto it = std::lower_bound(times.begin(), times.end(), t - tol);
  if (it != times.end() && std::abs(*it - t) <= tol) return static_cast<std::size_t>(it - times.begin());
  return static_cast<std::size_t>(-1);
}

void require_same_nodes(const Trajectory& a, const Trajectory& b) {
  if (a.times != b.times) throw Error(ErrorKind::kNodeMismatch, "trajectories have different node times");
  if (!a.empty() && !(a.grid() == b.grid())) {
    throw Error(ErrorKind::kGridMismatch, "trajectories live on different grids");
  }
}

Trajectory operator-(const Trajectory& a, const Trajectory& b) {
  require_same_nodes(a, b);
  Trajectory out;
  out.provenance = a.provenance;
  out.regime = a.regime;
  out.times = a.times;
  out.fields.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.fields.push_back(a.fields[i] - b.fields[i]);
  return out;
}

Trajectory scaled(const Trajectory& a, double factor) {
  Trajectory out = a;
  for (auto& f : out.fields) f *= factor;
  return out;
}

Trajectory zero_trajectory(const Grid& grid, std::span<const double> times) {
  Trajectory out;
  for (double t : times) out.push(t, SpectralField(grid));
  return out;
}

}  // namespace gnse
