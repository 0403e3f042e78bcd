// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#include "gnse/nonlinearity.hpp"

#include "gnse/error.hpp"

namespace gnse {

void dealias(SpectralField& field) {
  const Grid& grid = field.grid();
  for (int c = 0; c < field.dim(); ++c) {
    auto comp = field.component(c);
    for (std::size_t k = 0; k < comp.size(); ++k)
      if (!grid.dealias_keep(k)) comp[k] = 0.0;
  }
}

SpectralField dealiased(SpectralField field) {
  dealias(field);
  return field;
}

SpectralField bilinear_B(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g);
  const Grid& grid = f.grid();
  const int d = grid.dim();
  const std::size_t size = grid.size();

  SpectralField fs = leray_project(f);
  dealias(fs);
  const SpectralField gs = dealiased(g);
  const PhysicalField fp = to_physical(fs);

  PhysicalField product(grid);
  for (int j = 0; j < d; ++j) {
    const PhysicalField dg = to_physical(partial(gs, j));
    const auto fj = fp.component(j);
    for (int c = 0; c < d; ++c) {
      auto out = product.component(c);
      const auto in = dg.component(c);
      for (std::size_t i = 0; i < size; ++i) out[i] += fj[i] * in[i];
    }
  }
  SpectralField result = to_spectral(product);
  dealias(result);
  leray_project_inplace(result);
  return result;
}

SpectralField bilinear_B_divergence(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g);
  const Grid& grid = f.grid();
  const int d = grid.dim();
  const std::size_t size = grid.size();

  const PhysicalField fp = to_physical(dealiased(f));
  const PhysicalField gp = to_physical(dealiased(g));
  SpectralField result(grid);
  PhysicalField tensor(grid);
  for (int j = 0; j < d; ++j) {
    // Row j of f (x) g: components c hold f_j g_c; the divergence sums d_j over j.
    for (int c = 0; c < d; ++c) {
      auto out = tensor.component(c);
      const auto fj = fp.component(j);
      const auto gc = gp.component(c);
      for (std::size_t i = 0; i < size; ++i) out[i] = fj[i] * gc[i];
    }
    result += partial(to_spectral(tensor), j);
  }
  dealias(result);
  leray_project_inplace(result);
  return result;
}

double energy_flux(const SpectralField& u) {
  if (u.is_zero()) return 0.0;
  if (divergence_residual(u) > 1e-8)
    throw Error(ErrorKind::kInvalidArgument, "energy_flux needs a divergence-free field");
  return inner(bilinear_B(u, u), u);
}

}  // namespace gnse
