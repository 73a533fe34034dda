// Copyright 2026 The starreg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

#include "core/register.hpp"

namespace starreg {

/// l = 1 + (q - 1) gamma_A / gamma_C.
double lopsidedness(const Register& reg, int q);

struct DiffusionParams {
  double d_const = 0.0;          // m^2/s
  std::vector<double> g_z;       // T/m
  double delta_small = 0.0;      // s
  double delta_big = 0.0;        // s
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
};

struct DiffusionPoint {
  double g_z = 0.0;
  double signal = 0.0;
  double std_error = 0.0;  // zero for the closed form
};

/// Throws InvalidArgument on nonpositive times, negative D or empty gradient list.
void validate(const DiffusionParams& p);

/// S = exp(-l^2 gamma_C^2 G^2 delta^2 D Delta).
std::vector<DiffusionPoint> diffusion_decay_closed_form(const Register& reg, int q, const DiffusionParams& p);

/// Mean of cos(l gamma_C d_z G delta) over Gaussian displacements with
/// variance 2 D Delta. The same displacement samples are reused for every
/// gradient and order, and the result depends only on (seed, trials).
std::vector<DiffusionPoint> diffusion_monte_carlo(const Register& reg, int q, const DiffusionParams& p,
                                                  int threads = 1);

/// Same as above for several orders from one set of displacement samples.
std::vector<std::vector<DiffusionPoint>> diffusion_monte_carlo(const Register& reg, const std::vector<int>& orders,
                                                               const DiffusionParams& p, int threads = 1);

/// Least-squares slope of -ln S against G^2 through the origin, over points
/// with S above `floor`.
double log_decay_slope(const std::vector<DiffusionPoint>& curve, double floor = 1e-3);

}  // namespace starreg
