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

#pragma once

#include <span>

namespace qas {

struct SpectralPeak {
  double frequency = 0.0;          // cycles per unit time
  double angular_frequency = 0.0;  // 2 pi * frequency
  double power = 0.0;
  double bin_width = 0.0;          // of the zero-padded grid
};

/// Strongest non-DC peak of the mean-removed periodogram, zero-padded to at
/// least `pad_factor` times the series length (next power of two) and refined
/// by parabolic interpolation over the three bins around the maximum.
SpectralPeak dominant_frequency(std::span<const double> series, double dt, int pad_factor = 16);

}  // namespace qas
