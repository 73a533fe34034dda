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

#include "core/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/dicke.hpp"
#include "core/error.hpp"

namespace starreg {

namespace {

Eigen::Matrix2cd half_pauli(Axis axis) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  switch (axis) {
    case Axis::kX: m(0, 1) = m(1, 0) = 0.5; break;
    case Axis::kY: m(0, 1) = cplx(0, -0.5); m(1, 0) = cplx(0, 0.5); break;
    case Axis::kZ: m(0, 0) = 0.5; m(1, 1) = -0.5; break;
  }
  return m;
}

// Collective ancilla operator on the full bit-string space.
Eigen::MatrixXcd dense_collective(int n, Axis axis) {
  const int d = 1 << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    for (int k = 0; k < n; ++k) {
      const int bit = 1 << (n - 1 - k);
      const bool down = (a & bit) != 0;
      switch (axis) {
        case Axis::kZ: m(a, a) += down ? -0.5 : 0.5; break;
        case Axis::kX: m(a ^ bit, a) += 0.5; break;
        case Axis::kY: m(a ^ bit, a) += down ? cplx(0, -0.5) : cplx(0, 0.5); break;
      }
    }
  }
  return m;
}

Eigen::Matrix2cd spin_half_rotation(const std::array<double, 3>& n, double angle) {
  const double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle);
  Eigen::Matrix2cd r;
  r(0, 0) = cplx(c, -s * n[2]);
  r(1, 1) = cplx(c, s * n[2]);
  r(0, 1) = cplx(-s * n[1], -s * n[0]);
  r(1, 0) = cplx(s * n[1], -s * n[0]);
  return r;
}

Eigen::MatrixXcd spin_j_rotation(int two_j, const std::array<double, 3>& n, double angle) {
  if (two_j == 0) return Eigen::MatrixXcd::Identity(1, 1);
  const SpinMatrices s = spin_matrices(two_j);
  const Eigen::MatrixXcd gen = n[0] * s.x + n[1] * s.y + n[2] * s.z;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gen);
  Eigen::VectorXcd phase(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phase.size(); ++i) phase(i) = std::polar(1.0, -angle * es.eigenvalues()(i));
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

std::array<double, 3> unit_axis(const std::array<double, 3>& axis) {
  const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  require(std::isfinite(norm) && norm > 0.0, ErrorCode::kInvalidArgument, "rotation axis must be a nonzero vector");
  require(std::abs(norm - 1.0) < 1e-9, ErrorCode::kInvalidArgument, "rotation axis must be a unit vector");
  return {axis[0] / norm, axis[1] / norm, axis[2] / norm};
}

}  // namespace

LayoutPtr make_layout(const Register& reg, Backend backend) { return Layout::create(reg.n_total(), backend); }

Operator central_op(const LayoutPtr& layout, Axis axis) {
  Operator op(layout);
  const Eigen::MatrixXcd p = half_pauli(axis);
  for (std::size_t b = 0; b < layout->size(); ++b)
    op.block(b) = kron(p, Eigen::MatrixXcd::Identity(layout->block(b).anc_dim, layout->block(b).anc_dim));
  return op;
}

Operator ancilla_op(const LayoutPtr& layout, Axis axis) {
  Operator op(layout);
  const Eigen::MatrixXcd id2 = Eigen::MatrixXcd::Identity(2, 2);
  for (std::size_t b = 0; b < layout->size(); ++b) {
    const Block& blk = layout->block(b);
    Eigen::MatrixXcd a;
    if (layout->backend() == Backend::kDense) {
      a = dense_collective(layout->n_ancilla(), axis);
    } else {
      const SpinMatrices s = spin_matrices(blk.two_j);
      a = axis == Axis::kX ? s.x : axis == Axis::kY ? s.y : s.z;
    }
    op.block(b) = kron(id2, a);
  }
  return op;
}

Operator ancilla_spin_op(const LayoutPtr& layout, int k, Axis axis) {
  require(layout->backend() == Backend::kDense, ErrorCode::kSymmetryViolation,
          "single-ancilla operators break permutation symmetry; use the dense backend");
  const int n = layout->n_ancilla();
  require(k >= 0 && k < n, ErrorCode::kIndexOutOfRange, "ancilla index " + std::to_string(k) + " out of range");
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(1, 1);
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXcd f = i == k ? Eigen::MatrixXcd(half_pauli(axis)) : Eigen::MatrixXcd::Identity(2, 2);
    a = kron(a, f);
  }
  Operator op(layout);
  op.block(0) = kron(Eigen::MatrixXcd::Identity(2, 2), a);
  return op;
}

OperatorSet operator_set(const LayoutPtr& layout) {
  return OperatorSet{central_op(layout, Axis::kX), central_op(layout, Axis::kY), central_op(layout, Axis::kZ),
                     ancilla_op(layout, Axis::kX), ancilla_op(layout, Axis::kY), ancilla_op(layout, Axis::kZ),
                     layout->backend()};
}

Operator static_hamiltonian(const Register& reg, Backend backend) {
  const LayoutPtr layout = make_layout(reg, backend);
  const double wc = reg.omega_c(), wa = reg.omega_a(), jj = 2.0 * kPi * reg.spec().j_ca;
  return diagonal_op(layout, [&](const Block& blk, int p) {
    const double mc = p < blk.anc_dim ? 0.5 : -0.5;
    const double ma = 0.5 * blk.two_m_anc[p % blk.anc_dim];
    return cplx(wc * mc + wa * ma + jj * mc * ma, 0.0);
  });
}

RotatingFrameParams normalized(const RotatingFrameParams& p) {
  require(std::isfinite(p.nu_c) && std::isfinite(p.nu_a), ErrorCode::kInvalidArgument, "offsets must be finite");
  require(std::isfinite(p.omega_rf_c) && p.omega_rf_c >= 0.0, ErrorCode::kInvalidArgument,
          "omega_rf_c must be a nonnegative amplitude");
  require(std::isfinite(p.omega_rf_a) && p.omega_rf_a >= 0.0, ErrorCode::kInvalidArgument,
          "omega_rf_a must be a nonnegative amplitude");
  require(std::isfinite(p.phi_c) && std::isfinite(p.phi_a), ErrorCode::kInvalidArgument, "phases must be finite");
  RotatingFrameParams r = p;
  const auto wrap = [](double x) {
    double y = std::fmod(x, 2.0 * kPi);
    return y < 0.0 ? y + 2.0 * kPi : y;
  };
  r.phi_c = wrap(p.phi_c);
  r.phi_a = wrap(p.phi_a);
  return r;
}

Operator rotating_frame_hamiltonian(const Register& reg, const RotatingFrameParams& params, Backend backend) {
  const RotatingFrameParams p = normalized(params);
  const LayoutPtr layout = make_layout(reg, backend);
  const OperatorSet ops = operator_set(layout);
  const double tp = 2.0 * kPi;
  Operator h = (-tp * p.nu_c) * ops.iz_c + (-tp * p.nu_a) * ops.iz_a + (tp * reg.spec().j_ca) * (ops.iz_c * ops.iz_a);
  if (p.omega_rf_c > 0.0)
    h += p.omega_rf_c * (std::cos(p.phi_c) * ops.ix_c + std::sin(p.phi_c) * ops.iy_c);
  if (p.omega_rf_a > 0.0)
    h += p.omega_rf_a * (std::cos(p.phi_a) * ops.ix_a + std::sin(p.phi_a) * ops.iy_a);
  return h;
}

HermitianEigensystem::HermitianEigensystem(const Operator& h) : layout_(h.layout_ptr()) {
  require(h.is_hermitian(1e-10), ErrorCode::kNonHermitianObservable, "generator is not Hermitian");
  values_.reserve(h.size());
  vectors_.reserve(h.size());
  for (const auto& m : h.blocks()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    values_.push_back(es.eigenvalues());
    vectors_.push_back(es.eigenvectors());
  }
}

Operator HermitianEigensystem::propagator(double t) const {
  Operator u(layout_);
  for (std::size_t b = 0; b < values_.size(); ++b) {
    Eigen::VectorXcd phase(values_[b].size());
    for (Eigen::Index i = 0; i < phase.size(); ++i) phase(i) = std::polar(1.0, -t * values_[b](i));
    u.block(b).noalias() = vectors_[b] * phase.asDiagonal() * vectors_[b].adjoint();
  }
  return u;
}

Operator propagator(const Operator& h, double t) { return HermitianEigensystem(h).propagator(t); }

State apply_unitary(const Operator& u, const State& state) {
  state.require_compatible(u, "apply_unitary");
  State r(state.layout_ptr());
  for (std::size_t b = 0; b < state.size(); ++b) {
    const Eigen::MatrixXcd tmp = u.block(b) * state.block(b);
    r.block(b).noalias() = tmp * u.block(b).adjoint();
  }
  return r;
}

State evolve(const State& state, const Operator& h, double duration) {
  state.require_compatible(h, "evolve");
  require(std::isfinite(duration), ErrorCode::kInvalidArgument, "evolution time must be finite");
  if (duration == 0.0) return state;
  return apply_unitary(propagator(h, duration), state);
}

Operator rotation_operator(const LayoutPtr& layout, const std::array<double, 3>& axis, double angle, Target target) {
  require(std::isfinite(angle), ErrorCode::kInvalidArgument, "rotation angle must be finite");
  const std::array<double, 3> n = unit_axis(axis);
  const bool on_c = target != Target::kAncillas;
  const bool on_a = target != Target::kCentral;
  const Eigen::MatrixXcd rc = on_c ? Eigen::MatrixXcd(spin_half_rotation(n, angle)) : Eigen::MatrixXcd::Identity(2, 2);
  Operator u(layout);
  for (std::size_t b = 0; b < layout->size(); ++b) {
    const Block& blk = layout->block(b);
    Eigen::MatrixXcd ra;
    if (!on_a) {
      ra = Eigen::MatrixXcd::Identity(blk.anc_dim, blk.anc_dim);
    } else if (layout->backend() == Backend::kDense) {
      const Eigen::MatrixXcd r1 = spin_half_rotation(n, angle);
      ra = Eigen::MatrixXcd::Identity(1, 1);
      for (int k = 0; k < layout->n_ancilla(); ++k) ra = kron(ra, r1);
    } else {
      ra = spin_j_rotation(blk.two_j, n, angle);
    }
    u.block(b) = kron(rc, ra);
  }
  return u;
}

State collective_rotation(const State& state, const std::array<double, 3>& axis, double angle, Target target) {
  return apply_unitary(rotation_operator(state.layout_ptr(), axis, angle, target), state);
}

double expectation(const State& state, const Operator& op, double tol) {
  state.require_compatible(op, "expectation");
  require(op.is_hermitian(tol), ErrorCode::kNonHermitianObservable, "observable is not Hermitian");
  cplx acc = 0.0;
  for (std::size_t b = 0; b < state.size(); ++b) {
    const cplx t = state.block(b).cwiseProduct(op.block(b).transpose()).sum();
    acc += static_cast<double>(state.layout().block(b).multiplicity) * t;
  }
  require(std::abs(acc.imag()) <= tol * std::max(1.0, std::abs(acc.real())), ErrorCode::kNonHermitianObservable,
          "expectation value has an imaginary part " + std::to_string(acc.imag()));
  return acc.real();
}

std::vector<double> eigenvalue_multiset(const Operator& h) {
  const HermitianEigensystem es(h);
  std::vector<double> out;
  for (std::size_t b = 0; b < h.size(); ++b) {
    const auto mult = h.layout().block(b).multiplicity;
    for (std::uint64_t c = 0; c < mult; ++c)
      for (Eigen::Index i = 0; i < es.eigenvalues()[b].size(); ++i) out.push_back(es.eigenvalues()[b](i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace starreg
