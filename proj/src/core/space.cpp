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

#include "core/space.hpp"

#include <bit>
#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "core/dicke.hpp"
#include "core/error.hpp"

namespace starreg {

std::string_view backend_name(Backend backend) noexcept {
  return backend == Backend::kDense ? "dense" : "symmetric";
}

std::shared_ptr<const Layout> Layout::create(int n_total, Backend backend) {
  require(n_total >= 2, ErrorCode::kInvalidSpec, "register.n_total: must be at least 2");
  if (backend == Backend::kDense) {
    require(n_total <= kDenseMaxQubits, ErrorCode::kBackendLimit,
            "dense backend supports at most " + std::to_string(kDenseMaxQubits) + " qubits, got " +
                std::to_string(n_total));
  } else {
    require(n_total <= kSymmetricMaxQubits, ErrorCode::kBackendLimit,
            "symmetric backend supports at most " + std::to_string(kSymmetricMaxQubits) +
                " qubits, got " + std::to_string(n_total));
  }
  return std::shared_ptr<const Layout>(new Layout(n_total, backend));
}

Layout::Layout(int n_total, Backend backend) : n_total_(n_total), backend_(backend) {
  const int n = n_total - 1;
  if (backend == Backend::kDense) {
    Block b;
    b.two_j = -1;
    b.multiplicity = 1;
    b.anc_dim = 1 << n;
    b.two_m_anc.resize(b.anc_dim);
    for (int a = 0; a < b.anc_dim; ++a) b.two_m_anc[a] = n - 2 * std::popcount(static_cast<unsigned>(a));
    blocks_.push_back(std::move(b));
    return;
  }
  for (int two_j = n; two_j >= 0; two_j -= 2) {
    Block b;
    b.two_j = two_j;
    b.multiplicity = dicke_multiplicity(n, two_j);
    b.anc_dim = two_j + 1;
    b.two_m_anc.resize(b.anc_dim);
    for (int a = 0; a < b.anc_dim; ++a) b.two_m_anc[a] = two_j - 2 * a;
    blocks_.push_back(std::move(b));
  }
}

BlockMatrix::BlockMatrix(LayoutPtr layout) : layout_(std::move(layout)) {
  require(layout_ != nullptr, ErrorCode::kInvalidArgument, "null layout");
  blocks_.reserve(layout_->size());
  for (const Block& b : layout_->blocks()) blocks_.push_back(Eigen::MatrixXcd::Zero(b.dim(), b.dim()));
}

BlockMatrix::BlockMatrix(LayoutPtr layout, std::vector<Eigen::MatrixXcd> blocks)
    : layout_(std::move(layout)), blocks_(std::move(blocks)) {
  require(layout_ != nullptr, ErrorCode::kInvalidArgument, "null layout");
  require(blocks_.size() == layout_->size(), ErrorCode::kShapeMismatch,
          "block count " + std::to_string(blocks_.size()) + " does not match layout (" +
              std::to_string(layout_->size()) + ")");
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const int d = layout_->block(i).dim();
    require(blocks_[i].rows() == d && blocks_[i].cols() == d, ErrorCode::kShapeMismatch,
            "block " + std::to_string(i) + " must be " + std::to_string(d) + "x" + std::to_string(d));
  }
}

cplx BlockMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    t += static_cast<double>(layout_->block(i).multiplicity) * blocks_[i].trace();
  return t;
}

bool BlockMatrix::is_hermitian(double tol) const {
  for (const auto& m : blocks_)
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

double BlockMatrix::max_abs_diff(const BlockMatrix& other) const {
  require_compatible(other, "max_abs_diff");
  double d = 0.0;
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    d = std::max(d, (blocks_[i] - other.blocks_[i]).cwiseAbs().maxCoeff());
  return d;
}

void BlockMatrix::require_compatible(const BlockMatrix& other, std::string_view context) const {
  if (!layout_->same_as(other.layout())) {
    fail(ErrorCode::kShapeMismatch,
         std::string(context) + ": operands use different layouts (" +
             std::string(backend_name(backend())) + ", N=" + std::to_string(layout_->n_total()) +
             " vs " + std::string(backend_name(other.backend())) + ", N=" +
             std::to_string(other.layout().n_total()) + ")");
  }
}

Operator Operator::zero(LayoutPtr layout) { return Operator(std::move(layout)); }

Operator Operator::identity(LayoutPtr layout) {
  Operator op(std::move(layout));
  for (auto& m : op.blocks_) m.setIdentity();
  return op;
}

Operator Operator::adjoint() const {
  Operator r(*this);
  for (auto& m : r.blocks_) m.adjointInPlace();
  return r;
}

Operator& Operator::operator+=(const Operator& rhs) {
  require_compatible(rhs, "operator +");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += rhs.blocks_[i];
  return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
  require_compatible(rhs, "operator -");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= rhs.blocks_[i];
  return *this;
}

Operator& Operator::operator*=(cplx s) {
  for (auto& m : blocks_) m *= s;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  a.require_compatible(b, "operator *");
  Operator r(a.layout_ptr());
  for (std::size_t i = 0; i < a.size(); ++i) r.block(i).noalias() = a.block(i) * b.block(i);
  return r;
}

State State::pure(LayoutPtr layout, std::size_t block, const Eigen::VectorXcd& psi) {
  State s(std::move(layout));
  require(block < s.size(), ErrorCode::kIndexOutOfRange, "pure state: block index out of range");
  const Block& b = s.layout().block(block);
  require(b.multiplicity == 1, ErrorCode::kSymmetryViolation,
          "pure state requested in a block of multiplicity " + std::to_string(b.multiplicity));
  require(psi.size() == b.dim(), ErrorCode::kShapeMismatch, "pure state vector has wrong dimension");
  const double n = psi.norm();
  require(n > 0.0, ErrorCode::kInvalidArgument, "pure state vector is zero");
  const Eigen::VectorXcd v = psi / n;
  s.blocks_[block] = v * v.adjoint();
  return s;
}

double State::purity() const {
  double p = 0.0;
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    p += static_cast<double>(layout_->block(i).multiplicity) * blocks_[i].cwiseAbs2().sum();
  return p;
}

void State::validate(const Tolerances& tol) const {
  const cplx t = trace();
  require(std::abs(t - 1.0) <= tol.trace, ErrorCode::kInvalidArgument,
          "state trace is " + std::to_string(t.real()) + ", expected 1");
  require(is_hermitian(tol.hermitian), ErrorCode::kInvalidArgument, "state is not Hermitian");
  for (const auto& m : blocks_) {
    if (m.rows() == 0) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    require(es.eigenvalues().minCoeff() >= tol.psd_floor, ErrorCode::kInvalidArgument,
            "state has a negative eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
  }
}

std::vector<Eigen::VectorXd> State::populations() const {
  std::vector<Eigen::VectorXd> out;
  out.reserve(blocks_.size());
  for (const auto& m : blocks_) out.push_back(m.diagonal().real());
  return out;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

}  // namespace starreg
