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

#include <optional>
#include <string>

#include "core/dynamics.hpp"
#include "core/register.hpp"
#include "core/space.hpp"

namespace starreg {

/// Encoded probe: `state` is `base` rotated by theta0 about the in-plane
/// axis at azimuth phi0 + pi/2.
struct ProbeState {
  State state;
  State base;
  double theta0 = 0.0;
  double phi0 = 0.0;
  double epsilon_a = 0.0;
  bool correlated = true;
};

struct Observable {
  Operator op;
  std::string description;
};

struct QfiEstimate {
  double value = 0.0;
  std::string observable;
  double fd_step = 0.0;
};

struct FisherOptions {
  double fd_step = 1e-4;             // rad
  double probability_floor = 1e-12;  // outcomes below this are skipped
};

/// Anti-phase spin order rho_1 = (1 + 4 eps_A I_z^C I_z^A) / 2^N. The
/// default purity is the register's eps_A.
State prepare_correlated_probe(const Register& reg, Backend backend, std::optional<double> epsilon_a = {});

/// Reference probe with only the central spin polarized:
/// (1 + 2 eps I_z^C) / 2^N.
State prepare_uncorrelated_probe(const Register& reg, Backend backend, std::optional<double> epsilon_a = {});

/// exp(-i theta n.I^C) with n = (cos(phi0 + pi/2), sin(phi0 + pi/2), 0).
Operator encoding_rotation(const LayoutPtr& layout, double theta, double phi0);

ProbeState encode_parameter(const State& base, double theta0, double phi0, double epsilon_a, bool correlated = true);

/// Classical Fisher information of the outcome distribution of `observable`
/// with respect to theta at theta0. Outcomes are the distinct eigenvalues of
/// the observable; derivatives use a symmetric finite difference.
QfiEstimate qfi_classical_fisher(const ProbeState& probe, const Observable& observable, const FisherOptions& options = {});

/// Heuristic optimal measurement: the central spin component along the
/// theta-derivative direction t = (cos th cos ph, cos th sin ph, -sin th),
/// times I_z^A for correlated probes. Not a general SLD solver.
Observable sld_observable(const ProbeState& probe);

/// 1 / (copies * F). Throws NonpositiveFisher when F <= 0.
double cramer_rao(double fisher, int copies);

/// F of the correlated probe over F of the uncorrelated reference, both at
/// the same purity and measured with sld_observable.
double amplification_ratio(const Register& reg, double theta0, double phi0, Backend backend = Backend::kSymmetric,
                           std::optional<double> epsilon_a = {}, const FisherOptions& options = {});

}  // namespace starreg
