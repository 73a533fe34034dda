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

#include "core/dicke.hpp"

#include <cmath>
#include <complex>

#include "core/error.hpp"

namespace starreg {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  require(n <= 63, ErrorCode::kInvalidArgument, "binomial: n too large for an exact 64-bit result");
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  // r * (n - k + i) / i stays integral at every step.
  for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return static_cast<std::uint64_t>(r);
}

std::uint64_t dicke_multiplicity(int n, int two_j) {
  if (two_j < 0 || two_j > n || (n - two_j) % 2 != 0) return 0;
  const int k = (n - two_j) / 2;
  return binomial(n, k) - binomial(n, k - 1);
}

SpinMatrices spin_matrices(int two_j) {
  require(two_j >= 0, ErrorCode::kInvalidArgument, "spin_matrices: negative spin");
  const int d = two_j + 1;
  const double j = 0.5 * two_j;
  SpinMatrices s;
  s.z = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd raise = Eigen::MatrixXcd::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    const double m = j - a;
    s.z(a, a) = m;
    if (a > 0) raise(a - 1, a) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  s.x = 0.5 * (raise + raise.adjoint());
  s.y = std::complex<double>(0.0, -0.5) * (raise - raise.adjoint());
  return s;
}

}  // namespace starreg
