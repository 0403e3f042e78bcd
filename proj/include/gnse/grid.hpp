// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "gnse/norm_spec.hpp"
#include "gnse/params.hpp"

namespace gnse {

using Complex = std::complex<double>;

/// Periodic box [0, L)^d with L = 2*pi*m and n modes per dimension.
///
/// Frequencies are xi_j = j / m for lattice indices j in [-n/2, n/2)^d, stored
/// in FFTW order (index i holds j = i for i < n/2 and j = i - n otherwise,
/// last dimension fastest). Tables are shared between copies.
class Grid {
 public:
  Grid() = default;
  Grid(int d, int n, int m);

  int dim() const { return d_; }
  int modes() const { return n_; }
  int box_multiplier() const { return m_; }
  std::size_t size() const { return size_; }

  double length() const;
  double volume() const;
  double dxi() const { return 1.0 / m_; }
  double dx() const { return length() / n_; }
  /// Largest resolved |xi| along an axis, n / (2m).
  double nyquist_xi() const { return 0.5 * n_ / m_; }
  /// Time m^{2 alpha} beyond which the lowest box mode dominates the decay.
  double infrared_time(double alpha) const;

  double xi(std::size_t k, int c) const { return tables_->xi[c][k]; }
  double xi_norm(std::size_t k) const { return tables_->xi_norm[k]; }
  std::span<const double> xi_norms() const { return tables_->xi_norm; }
  int wavenumber(std::size_t k, int c) const { return tables_->wavenumber[c][k]; }
  bool nyquist(std::size_t k) const { return tables_->nyquist[k] != 0; }
  /// True if the mode survives two-thirds truncation (all |j_c| <= n/3).
  bool dealias_keep(std::size_t k) const { return tables_->keep[k] != 0; }
  /// Flat index of -xi.
  std::size_t mirror(std::size_t k) const { return tables_->mirror[k]; }
  std::size_t flat_index(std::span<const int> lattice) const;

  bool operator==(const Grid& other) const {
    return d_ == other.d_ && n_ == other.n_ && m_ == other.m_;
  }

 private:
  struct Tables {
    std::vector<std::vector<double>> xi;
    std::vector<double> xi_norm;
    std::vector<std::vector<int>> wavenumber;
    std::vector<unsigned char> nyquist;
    std::vector<unsigned char> keep;
    std::vector<std::size_t> mirror;
  };

  int d_ = 0;
  int n_ = 0;
  int m_ = 0;
  std::size_t size_ = 0;
  std::shared_ptr<const Tables> tables_;
};

/// d-component complex Fourier coefficients with
/// coeff(xi) = L^{-d} \int f(x) e^{-i xi.x} dx, so ||f||_{L^2}^2 = L^d sum |coeff|^2.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const Grid& grid);

  const Grid& grid() const { return grid_; }
  int dim() const { return grid_.dim(); }

  std::span<Complex> component(int c) {
    return {data_.data() + c * grid_.size(), grid_.size()};
  }
  std::span<const Complex> component(int c) const {
    return {data_.data() + c * grid_.size(), grid_.size()};
  }
  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

  Complex& at(int c, std::size_t k) { return data_[c * grid_.size() + k]; }
  const Complex& at(int c, std::size_t k) const { return data_[c * grid_.size() + k]; }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double factor);

  void zero_mean();
  void zero_nyquist();
  bool is_zero() const;

 private:
  Grid grid_;
  std::vector<Complex> data_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double factor, SpectralField a);

/// Real samples on the uniform physical grid x = L * i / n, component-major.
class PhysicalField {
 public:
  PhysicalField() = default;
  explicit PhysicalField(const Grid& grid);

  const Grid& grid() const { return grid_; }
  int dim() const { return grid_.dim(); }
  std::span<double> component(int c) { return {data_.data() + c * grid_.size(), grid_.size()}; }
  std::span<const double> component(int c) const {
    return {data_.data() + c * grid_.size(), grid_.size()};
  }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  /// Physical coordinate of sample `i` along dimension `c`.
  double coordinate(std::size_t i, int c) const;

 private:
  Grid grid_;
  std::vector<double> data_;
};

PhysicalField to_physical(const SpectralField& field);
SpectralField to_spectral(const PhysicalField& samples);

/// coeff(xi) <- (I - xi xi^T / |xi|^2) coeff(xi); mean forced to zero.
SpectralField leray_project(const SpectralField& field);
void leray_project_inplace(SpectralField& field);

/// coeff(xi) <- |xi|^order coeff(xi); the zero mode maps to zero for every order.
SpectralField apply_fractional_power(const SpectralField& field, double order);

/// coeff(xi) <- (1 + |xi|^2)^{order/2} coeff(xi).
SpectralField apply_bessel_power(const SpectralField& field, double order);

/// Spectral derivative d/dx_c of every component.
SpectralField partial(const SpectralField& field, int c);

/// max over xi != 0 of |xi . coeff(xi)| / (|xi| |coeff(xi)|), zero coefficients skipped.
double divergence_residual(const SpectralField& field);

/// max over xi of |coeff(-xi) - conj(coeff(xi))|.
double hermitian_residual(const SpectralField& field);

/// Plancherel pairing L^d sum Re(conj(f) g).
double inner(const SpectralField& f, const SpectralField& g);
double l2_sq(const SpectralField& f);
/// L^d sum |xi|^{2 order} |coeff|^2.
double hom_sobolev_sq(const SpectralField& f, double order);

void require_same_grid(const SpectralField& a, const SpectralField& b);

// Trajectories --------------------------------------------------------------

enum class Provenance { kHeatFlow, kPicard, kEvolution, kGlued, kSynthetic };

const char* to_string(Provenance p);

/// Spectral fields at strictly increasing, nonnegative node times on one grid.
struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralField> fields;
  Provenance provenance = Provenance::kSynthetic;
  std::optional<RegimeParams> regime;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  const Grid& grid() const { return fields.front().grid(); }
  void push(double t, SpectralField field);
  /// Throws unless times increase strictly, are >= 0 and every field shares a grid.
  void validate() const;
  /// Index of the node with time `t` (relative tolerance), or npos.
  std::size_t find_time(double t, double rel_tol = 1e-12) const;
};

Trajectory operator-(const Trajectory& a, const Trajectory& b);
Trajectory scaled(const Trajectory& a, double factor);
void require_same_nodes(const Trajectory& a, const Trajectory& b);

/// Trajectory of zero fields at the given node times.
Trajectory zero_trajectory(const Grid& grid, std::span<const double> times);

// Norms ---------------------------------------------------------------------

double spatial_norm(const SpectralField& field, const SpatialNorm& spec);
/// Evaluates several spatial norms, sharing transforms between entries with
/// the same multiplier.
std::vector<double> spatial_norms(const SpectralField& field, std::span<const SpatialNorm> specs);

double trajectory_norm(const Trajectory& traj, const NormSpec& spec);
std::vector<double> trajectory_norms(const Trajectory& traj, std::span<const NormSpec> specs);

double yspace_norm(const Trajectory& traj, const YSpaceCase& ycase);
double xspace_norm(const Trajectory& traj, const RegimeParams& regime, XSpace which);

/// Weighted time integral / maximum of precomputed node values v_j:
/// ||t^weight v(t)||_{L^time_exponent} over the node times.
double weighted_time_norm(std::span<const double> times, std::span<const double> values,
                          double time_exponent, double weight);

}  // namespace gnse
