// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "gnse/error.hpp"

namespace gnse::detail {

namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int d, int n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::make_tuple(d, n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<int> dims(d, n);
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(n);
    std::vector<std::complex<double>> scratch(total);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft(d, dims.data(), buf, buf,
                                   sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw Error(ErrorKind::kInvalidGrid, "FFTW plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void fft_inplace(const Grid& grid, std::span<std::complex<double>> buffer, int sign) {
  if (buffer.size() != grid.size()) {
    throw Error(ErrorKind::kSizeMismatch, "FFT buffer does not match grid");
  }
  fftw_plan plan = cache().get(grid.dim(), grid.modes(), sign);
  auto* buf = reinterpret_cast<fftw_complex*>(buffer.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace gnse::detail
