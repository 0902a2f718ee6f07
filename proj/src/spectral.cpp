// Copyright 2026 The qas-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qas/spectral.hpp"

#include <bit>
#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace qas {

namespace {

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
struct BufferDeleter {
  void operator()(void* p) const { fftw_free(p); }
};

}  // namespace

SpectralPeak dominant_frequency(std::span<const double> series, double dt, int pad_factor) {
  if (series.size() < 4) throw std::invalid_argument("series too short for a periodogram");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (pad_factor < 1) throw std::invalid_argument("pad factor must be at least 1");

  const std::size_t n = series.size();
  const std::size_t padded = std::bit_ceil(n * static_cast<std::size_t>(pad_factor));
  const std::size_t bins = padded / 2 + 1;
  const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);

  std::unique_ptr<double, BufferDeleter> in(fftw_alloc_real(padded));
  std::unique_ptr<fftw_complex, BufferDeleter> out(
      reinterpret_cast<fftw_complex*>(fftw_alloc_complex(bins)));
  std::unique_ptr<fftw_plan_s, PlanDeleter> plan(fftw_plan_dft_r2c_1d(
      static_cast<int>(padded), in.get(), out.get(), FFTW_ESTIMATE));
  for (std::size_t i = 0; i < padded; ++i) in.get()[i] = i < n ? series[i] - mean : 0.0;
  fftw_execute(plan.get());

  std::vector<double> power(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    power[k] = out.get()[k][0] * out.get()[k][0] + out.get()[k][1] * out.get()[k][1];
  }
  std::size_t kmax = 1;
  for (std::size_t k = 1; k < bins; ++k) {
    if (power[k] > power[kmax]) kmax = k;
  }
  double shift = 0.0;
  if (kmax > 1 && kmax + 1 < bins) {
    const double a = power[kmax - 1];
    const double b = power[kmax];
    const double c = power[kmax + 1];
    const double denom = a - 2.0 * b + c;
    if (denom != 0.0) shift = 0.5 * (a - c) / denom;
  }
  SpectralPeak peak;
  peak.bin_width = 1.0 / (static_cast<double>(padded) * dt);
  peak.frequency = (static_cast<double>(kmax) + shift) * peak.bin_width;
  peak.angular_frequency = 2.0 * std::numbers::pi * peak.frequency;
  peak.power = power[kmax];
  return peak;
}

}  // namespace qas
