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

#include <vector>

#include "core/dynamics.hpp"
#include "core/register.hpp"
#include "core/space.hpp"

namespace starreg {

/// Kicked star: pi/2 x-kicks on every spin separated by free Ising
/// evolution exp(-i k I_z^C I_z^A), with chaoticity k = 2 pi J tau.
struct KickedTopSpec {
  double chaoticity = 0.0;
  double j_ca = 50.0;  // Hz; only fixes tau = k / (2 pi J)
  int n_kicks = 200;
  int average_window = 100;
  double theta = 0.0;  // initial coherent-state polar angle
  double phi = 0.0;    // initial coherent-state azimuth
};

void validate(const KickedTopSpec& spec);

/// Kick interval tau = k / (2 pi J) in seconds.
double kick_interval(const KickedTopSpec& spec);

/// One period: coupling evolution after an instantaneous pi/2 x-kick.
Operator kicked_top_step(const Register& reg, const KickedTopSpec& spec, Backend backend);

/// Every spin along (sin th cos ph, sin th sin ph, cos th). In the symmetric
/// backend the state lives in the maximal-j block.
State coherent_product_state(const Register& reg, double theta, double phi, Backend backend);

/// Von Neumann entropy (bits) of the reduced central-spin state.
/// Eigenvalues below 1e-14 contribute zero.
double central_entropy(const State& state);

/// Central entropy after each kick 1 .. n_kicks, starting from the coherent
/// state at (spec.theta, spec.phi). Pure-state evolution.
std::vector<double> entropy_series(const Register& reg, const KickedTopSpec& spec, Backend backend = Backend::kSymmetric);

/// Mean and standard deviation over the trailing average_window kicks.
struct WindowStats {
  double mean = 0.0;
  double stddev = 0.0;
};
WindowStats trailing_window(const std::vector<double>& series, int window);

struct PhaseGrid {
  int n_theta = 64;  // theta_i = pi i / (n_theta - 1), endpoints included
  int n_phi = 64;    // phi_j = 2 pi j / n_phi
};

struct EntropyMap {
  std::vector<double> theta;
  std::vector<double> phi;
  Eigen::MatrixXd values;  // rows theta, columns phi; trailing-window mean entropy in bits
  double mean() const { return values.mean(); }
};

EntropyMap phase_space_map(const Register& reg, const KickedTopSpec& spec, const PhaseGrid& grid,
                           Backend backend = Backend::kSymmetric, int threads = 1);

struct SizeSweepRow {
  int n_ancilla = 0;
  bool even = false;
  double mean_entropy = 0.0;
  double osc_amplitude = 0.0;  // standard deviation over the trailing window
};

/// Trailing-window entropy for each ancilla count, with the register
/// template supplying everything except n_total.
std::vector<SizeSweepRow> size_sweep(const RegisterSpec& base, const KickedTopSpec& spec,
                                     const std::vector<int>& ancilla_counts, Backend backend = Backend::kSymmetric,
                                     int threads = 1);

}  // namespace starreg
