// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "gnse/grid.hpp"

namespace gnse {

/// Two-thirds truncation: zeroes every mode with some |j_c| > n/3.
void dealias(SpectralField& field);
SpectralField dealiased(SpectralField field);

/// B(f, g) = P (f . grad) g, pseudo-spectral. f is Leray-projected first, both
/// inputs and the product are dealiased, and the result is projected.
SpectralField bilinear_B(const SpectralField& f, const SpectralField& g);

/// Divergence form P div(f (x) g) with the same dealiasing. Coincides with
/// bilinear_B when f is divergence-free.
SpectralField bilinear_B_divergence(const SpectralField& f, const SpectralField& g);

/// <B(u, u), u>. Rejects inputs whose divergence residual exceeds 1e-8.
double energy_flux(const SpectralField& u);

}  // namespace gnse
