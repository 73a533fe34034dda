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
#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace starreg {

using cplx = std::complex<double>;

enum class Backend { kSymmetric, kDense };

std::string_view backend_name(Backend backend) noexcept;

inline constexpr int kDenseMaxQubits = 14;
inline constexpr int kSymmetricMaxQubits = 64;

/// Numerical acceptance thresholds shared by all state and operator checks.
struct Tolerances {
  double hermitian = 1e-10;
  double trace = 1e-10;
  double psd_floor = -1e-10;
};

/// One invariant sector of the register Hilbert space.
///
/// The basis inside a block is |c> (x) |a> with the central qubit as the
/// slow index: position = c * anc_dim + a. c = 0 is spin up. In the
/// symmetric backend |a> runs over |j, m> with m = j first; in the dense
/// backend |a> is the ancilla bit string (ancilla 0 is the most
/// significant bit, bit value 0 is spin up).
struct Block {
  int two_j = -1;                 // -1 marks the single dense block
  std::uint64_t multiplicity = 1;
  int anc_dim = 1;
  std::vector<int> two_m_anc;     // 2 * collective ancilla I_z per ancilla basis state

  int dim() const noexcept { return 2 * anc_dim; }
  int index(int c, int a) const noexcept { return c * anc_dim + a; }
  // Twice the eigenvalue of total I_z (central plus ancillas) at a block position.
  int two_m_total(int pos) const noexcept {
    const int c = pos / anc_dim;
    return (c == 0 ? 1 : -1) + two_m_anc[pos % anc_dim];
  }
};

/// Block structure of a register in one backend. Immutable and shared.
class Layout {
 public:
  /// Throws BackendLimit when the backend cannot hold n_total qubits.
  static std::shared_ptr<const Layout> create(int n_total, Backend backend);

  Backend backend() const noexcept { return backend_; }
  int n_total() const noexcept { return n_total_; }
  int n_ancilla() const noexcept { return n_total_ - 1; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  const Block& block(std::size_t b) const { return blocks_.at(b); }
  std::size_t size() const noexcept { return blocks_.size(); }

  bool same_as(const Layout& other) const noexcept {
    return backend_ == other.backend_ && n_total_ == other.n_total_;
  }

 private:
  Layout(int n_total, Backend backend);

  int n_total_;
  Backend backend_;
  std::vector<Block> blocks_;
};

using LayoutPtr = std::shared_ptr<const Layout>;

/// Block-diagonal matrix over a Layout. Weighted trace counts every block
/// with its multiplicity.
class BlockMatrix {
 public:
  explicit BlockMatrix(LayoutPtr layout);
  BlockMatrix(LayoutPtr layout, std::vector<Eigen::MatrixXcd> blocks);

  const Layout& layout() const noexcept { return *layout_; }
  const LayoutPtr& layout_ptr() const noexcept { return layout_; }
  Backend backend() const noexcept { return layout_->backend(); }
  std::size_t size() const noexcept { return blocks_.size(); }

  const Eigen::MatrixXcd& block(std::size_t b) const { return blocks_.at(b); }
  Eigen::MatrixXcd& block(std::size_t b) { return blocks_.at(b); }
  const std::vector<Eigen::MatrixXcd>& blocks() const noexcept { return blocks_; }

  cplx trace() const;
  bool is_hermitian(double tol) const;
  double max_abs_diff(const BlockMatrix& other) const;

  /// Throws ShapeMismatch unless both live on the same layout.
  void require_compatible(const BlockMatrix& other, std::string_view context) const;

 protected:
  LayoutPtr layout_;
  std::vector<Eigen::MatrixXcd> blocks_;
};

class Operator : public BlockMatrix {
 public:
  using BlockMatrix::BlockMatrix;

  static Operator zero(LayoutPtr layout);
  static Operator identity(LayoutPtr layout);

  Operator adjoint() const;
  Operator& operator+=(const Operator& rhs);
  Operator& operator-=(const Operator& rhs);
  Operator& operator*=(cplx s);
  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(cplx s, Operator a) { return a *= s; }
  friend Operator operator*(Operator a, cplx s) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);
};

/// Density operator. Each block holds the state of one copy of its sector,
/// so the physical trace is sum_b multiplicity_b * tr(block_b).
class State : public BlockMatrix {
 public:
  using BlockMatrix::BlockMatrix;

  /// Rank-1 state |psi><psi| placed in one block. The block must have
  /// multiplicity 1 (a pure state cannot be spread over identical copies).
  static State pure(LayoutPtr layout, std::size_t block, const Eigen::VectorXcd& psi);

  double purity() const;

  /// Throws InvalidArgument when trace, Hermiticity or positivity fail.
  void validate(const Tolerances& tol = {}) const;

  /// Diagonal entries of every block (one vector per block).
  std::vector<Eigen::VectorXd> populations() const;
};

/// Kronecker product with `a` as the slow index.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace starreg
