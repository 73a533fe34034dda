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

#include <Eigen/Dense>

#include "core/register.hpp"
#include "core/space.hpp"

namespace starreg {

enum class ResetModel {
  kExponential,  // ancillas and central relax with exp(-tau_HB / T1)
  kFull,         // ancillas fully rethermalized every round; central still exponential
};

struct HbacSchedule {
  int iterations = 10;
  double tau_hb = 0.0;  // s
  ResetModel reset_model = ResetModel::kExponential;
};

struct HbacSeries {
  std::vector<double> m;          // M_n for n = 0 .. iterations (M_0 = 1)
  std::vector<double> iz_central; // <I_z^C> after each reset
};

/// Ideal compression followed by a heat-bath reset, repeated. Compression
/// permutes populations inside every symmetry block so that
/// sign(eps_C) <I_z^C> is maximal. The reset mixes the ancillas (probability
/// 1 - exp(-tau/T1a)) and then the central spin (1 - exp(-tau/T1c)) back to
/// their thermal states. Requires t1_c and t1_a (MissingRelaxationTimes).
HbacSeries hbac_run(const Register& reg, const HbacSchedule& schedule, Backend backend = Backend::kSymmetric);

/// Same iteration with compression allowed to permute all 2^N populations
/// freely. Bounds hbac_run from above.
HbacSeries hbac_sorting_ceiling(const Register& reg, const HbacSchedule& schedule);

/// Reorders block populations (central index slow) for maximal
/// sign * (P(c=0) - P(c=1)). The largest values go to the favoured central
/// state; inside each half they follow `rank`, a position order by
/// decreasing thermal ancilla population.
Eigen::VectorXd compress_block(const Eigen::VectorXd& pops, int anc_dim, double sign,
                               const std::vector<int>& rank);

}  // namespace starreg
