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

#include <Eigen/Dense>

namespace starreg {

/// Binomial coefficient C(n, k); zero when k < 0 or k > n. Exact for n <= 63.
std::uint64_t binomial(int n, int k);

/// Schur-Weyl multiplicity of total spin j = two_j/2 among n spin-1/2 ancillas.
std::uint64_t dicke_multiplicity(int n, int two_j);

/// Spin-j matrices in the |j, m> basis ordered m = j, j-1, ..., -j.
struct SpinMatrices {
  Eigen::MatrixXcd x;
  Eigen::MatrixXcd y;
  Eigen::MatrixXcd z;
};

SpinMatrices spin_matrices(int two_j);

}  // namespace starreg
