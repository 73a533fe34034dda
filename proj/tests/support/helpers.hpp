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

#include <cmath>
#include <random>
#include <vector>

#include "core/dynamics.hpp"
#include "core/register.hpp"
#include "core/space.hpp"
#include "prep/state_prep.hpp"

namespace starreg::testing {

inline Register make_register(int n, double gc = kGammaP31, double ga = kGammaH1, double j = 11.0) {
  RegisterSpec s;
  s.n_total = n;
  s.gamma_c = gc;
  s.gamma_a = ga;
  s.j_ca = j;
  s.b0 = 11.7;
  s.temperature = 298.0;
  return Register(s);
}

/// Register with exaggerated purity so that population differences are not
/// lost below comparison tolerances.
inline Register make_hot_register(int n, double j = 11.0) {
  RegisterSpec s;
  s.n_total = n;
  s.gamma_c = kGammaP31;
  s.gamma_a = kGammaH1;
  s.j_ca = j;
  s.b0 = 11.7;
  s.temperature = 0.3;
  return Register(s);
}

/// Expectation values of the collective moments <A>, <B>, <A B> over
/// A in {1, I^C_x,y,z} and B in {1, I^A_x,y,z, (I^A_z)^2}.
inline std::vector<double> collective_moments(const State& st) {
  const LayoutPtr& l = st.layout_ptr();
  const OperatorSet o = operator_set(l);
  const Operator id = Operator::identity(l);
  const std::vector<Operator> a = {id, o.ix_c, o.iy_c, o.iz_c};
  const std::vector<Operator> b = {id, o.ix_a, o.iy_a, o.iz_a, o.iz_a * o.iz_a, o.ix_a * o.ix_a};
  std::vector<double> out;
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(expectation(st, x * y));
  for (const auto& e : coherence_decompose(st).entries) out.push_back(e.weight);
  return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = a.size() == b.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline std::array<double, 3> random_axis(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::array<double, 3> v{n(rng), n(rng), n(rng)};
  const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / r, v[1] / r, v[2] / r};
}

}  // namespace starreg::testing
