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

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "core/register.hpp"

namespace starreg {

/// One atom of a discrete RF-amplitude distribution P(Omega_C, Omega_A).
struct RfiAtom {
  double omega_c = 0.0;  // rad/s
  double omega_a = 0.0;  // rad/s
  double weight = 0.0;
};

using RfiDistribution = std::vector<RfiAtom>;

/// Throws UnnormalizedDistribution unless weights are nonnegative and sum to 1 within tol.
void validate_distribution(const RfiDistribution& dist, double tol = 1e-10);

/// Phase multiplier of the ancilla amplitude: (q - 1) sgn(gamma_A gamma_C).
double rfi_ancilla_factor(const Register& reg, int q);

/// S(t_c, t_a) = sum P exp(i [Omega_C t_c + (q - 1) sgn(gamma_A gamma_C) Omega_A t_a]).
std::complex<double> rfi_signal(const Register& reg, int q, const RfiDistribution& dist, double t_c, double t_a);

/// Uniform sampling grid: t_c = i dt_c for i < n_c, t_a = k dt_a for k < n_a.
struct RfiGrid {
  int n_c = 0;
  double dt_c = 0.0;
  int n_a = 1;
  double dt_a = 0.0;
};

struct RfiMap {
  std::vector<double> omega_c;  // rad/s, ascending, one per row
  std::vector<double> omega_a;  // rad/s, ascending, one per column (single 0 entry when n_a = 1)
  Eigen::MatrixXd probability;  // nonnegative, sums to 1
};

/// 2-D discrete Fourier transform of the sampled signal. Frequency bins are
/// 2 pi k / (n dt) with negative bins folded to k - n; the ancilla axis is
/// divided by the phase multiplier. The real part is clipped at zero and
/// renormalized. An ancilla axis with n_a > 1 requires q != 1.
RfiMap rfi_map(const Register& reg, int q, const RfiDistribution& dist, const RfiGrid& grid);

/// Diagonal cut t_c = t_a = t for the shared-duration circuit.
std::vector<std::complex<double>> rfi_diagonal(const Register& reg, int q, const RfiDistribution& dist,
                                               const std::vector<double>& times);

/// Total-variation distance between a recovered map and a distribution,
/// with every atom assigned to its nearest bin.
double rfi_total_variation(const RfiMap& map, const RfiDistribution& dist);

}  // namespace starreg
