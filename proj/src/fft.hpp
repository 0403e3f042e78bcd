// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <span>

#include "gnse/grid.hpp"

namespace gnse::detail {

/// In-place unnormalized d-dimensional DFT, sign -1 (forward) or +1 (backward).
/// Plans are cached per (d, n, sign); execution is thread-safe.
void fft_inplace(const Grid& grid, std::span<std::complex<double>> buffer, int sign);

}  // namespace gnse::detail
