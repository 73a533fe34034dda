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

#include <array>
#include <vector>

#include "core/register.hpp"
#include "core/space.hpp"

namespace starreg {

enum class Axis { kX, kY, kZ };
enum class Target { kCentral, kAncillas, kBoth };

/// Collective spin operators of a register in one representation.
struct OperatorSet {
  Operator ix_c, iy_c, iz_c;
  Operator ix_a, iy_a, iz_a;
  Backend representation;
};

LayoutPtr make_layout(const Register& reg, Backend backend);

Operator central_op(const LayoutPtr& layout, Axis axis);
/// Collective ancilla operator sum_k I^{A,k}.
Operator ancilla_op(const LayoutPtr& layout, Axis axis);
/// Single-ancilla operator I^{A,k}; dense backend only (SymmetryViolation otherwise).
Operator ancilla_spin_op(const LayoutPtr& layout, int k, Axis axis);
OperatorSet operator_set(const LayoutPtr& layout);

/// Diagonal operator whose entries are supplied per (block, position).
template <typename F>
Operator diagonal_op(const LayoutPtr& layout, F&& value) {
  Operator op(layout);
  for (std::size_t b = 0; b < layout->size(); ++b) {
    const Block& blk = layout->block(b);
    for (int p = 0; p < blk.dim(); ++p) op.block(b)(p, p) = value(blk, p);
  }
  return op;
}

/// H0 = w_C I_z^C + w_A I_z^A + 2 pi J I_z^C I_z^A.
Operator static_hamiltonian(const Register& reg, Backend backend);

struct RotatingFrameParams {
  double nu_c = 0.0;        // Hz
  double nu_a = 0.0;        // Hz
  double omega_rf_c = 0.0;  // rad/s
  double omega_rf_a = 0.0;  // rad/s
  double phi_c = 0.0;       // rad
  double phi_a = 0.0;       // rad
};

/// Validates amplitudes and reduces phases into [0, 2 pi).
RotatingFrameParams normalized(const RotatingFrameParams& p);

/// -2 pi nu_C I_z^C - 2 pi nu_A I_z^A + 2 pi J I_z^C I_z^A
///   + Omega_C (I_x^C cos phi_C + I_y^C sin phi_C) + Omega_A (I_x^A cos phi_A + I_y^A sin phi_A).
Operator rotating_frame_hamiltonian(const Register& reg, const RotatingFrameParams& params, Backend backend);

/// Spectral decomposition of a Hermitian block operator, reusable for
/// propagators at many times.
class HermitianEigensystem {
 public:
  explicit HermitianEigensystem(const Operator& h);

  /// exp(-i H t).
  Operator propagator(double t) const;
  const LayoutPtr& layout_ptr() const noexcept { return layout_; }
  const std::vector<Eigen::VectorXd>& eigenvalues() const noexcept { return values_; }
  const std::vector<Eigen::MatrixXcd>& eigenvectors() const noexcept { return vectors_; }

 private:
  LayoutPtr layout_;
  std::vector<Eigen::VectorXd> values_;
  std::vector<Eigen::MatrixXcd> vectors_;
};

/// exp(-i H t); throws NonHermitianObservable when H is not Hermitian.
Operator propagator(const Operator& h, double t);

/// U rho U^dagger.
State apply_unitary(const Operator& u, const State& state);

State evolve(const State& state, const Operator& h, double duration);

/// exp(-i angle n.I) on the chosen spin family.
Operator rotation_operator(const LayoutPtr& layout, const std::array<double, 3>& axis, double angle, Target target);

State collective_rotation(const State& state, const std::array<double, 3>& axis, double angle, Target target);

/// Real expectation value sum_b d_b tr(rho_b O_b).
double expectation(const State& state, const Operator& op, double tol = 1e-10);

/// All eigenvalues of a Hermitian operator with multiplicities expanded.
std::vector<double> eigenvalue_multiset(const Operator& h);

}  // namespace starreg
