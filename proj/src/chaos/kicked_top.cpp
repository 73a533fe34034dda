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

#include "chaos/kicked_top.hpp"

#include <algorithm>
#include <cmath>

#include "core/dicke.hpp"
#include "core/error.hpp"
#include "util/parallel.hpp"

namespace starreg {

namespace {

// Single-spin coherent state (cos(th/2), e^{i ph} sin(th/2)) with |0> = up.
Eigen::Vector2cd spin_half_coherent(double theta, double phi) {
  return {cplx(std::cos(0.5 * theta), 0.0), std::polar(std::sin(0.5 * theta), phi)};
}

// Coherent state of the collective ancilla spin j = n/2 in the |j, m> basis
// ordered m = j first.
Eigen::VectorXcd collective_coherent(int n, double theta, double phi) {
  Eigen::VectorXcd v(n + 1);
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  for (int a = 0; a <= n; ++a)
    v(a) = std::polar(std::sqrt(static_cast<double>(binomial(n, a))) * std::pow(c, n - a) * std::pow(s, a), a * phi);
  return v;
}

Eigen::VectorXcd coherent_vector(const Layout& layout, double theta, double phi) {
  const Eigen::Vector2cd one = spin_half_coherent(theta, phi);
  if (layout.backend() == Backend::kSymmetric) return kron(one, collective_coherent(layout.n_ancilla(), theta, phi));
  Eigen::MatrixXcd v = one;
  for (int k = 0; k < layout.n_ancilla(); ++k) v = kron(v, one);
  return v;
}

double binary_entropy_of(const Eigen::Matrix2cd& rho_c) {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho_c, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double p = es.eigenvalues()(i);
    if (p > 1e-14) s -= p * std::log2(p);
  }
  return std::max(s, 0.0);
}

// Reduced central state of a pure vector laid out as c * anc_dim + a.
double pure_central_entropy(const Eigen::VectorXcd& psi, int anc_dim) {
  const Eigen::Map<const Eigen::MatrixXcd> m(psi.data(), anc_dim, 2);
  return binary_entropy_of(m.adjoint() * m);
}

}  // namespace

void validate(const KickedTopSpec& spec) {
  require(std::isfinite(spec.chaoticity) && spec.chaoticity >= 0.0, ErrorCode::kInvalidArgument,
          "chaos.k must be nonnegative");
  require(std::isfinite(spec.j_ca) && spec.j_ca > 0.0, ErrorCode::kInvalidArgument, "chaos.j_ca must be positive");
  require(spec.average_window >= 1 && spec.n_kicks >= spec.average_window, ErrorCode::kInvalidArgument,
          "chaos needs n_kicks >= average_window >= 1");
  require(std::isfinite(spec.theta) && std::isfinite(spec.phi), ErrorCode::kInvalidArgument,
          "initial angles must be finite");
}

double kick_interval(const KickedTopSpec& spec) { return spec.chaoticity / (2.0 * kPi * spec.j_ca); }

Operator kicked_top_step(const Register& reg, const KickedTopSpec& spec, Backend backend) {
  validate(spec);
  const LayoutPtr layout = make_layout(reg, backend);
  const Operator coupling = diagonal_op(layout, [&](const Block& blk, int p) {
    const double mc = p / blk.anc_dim == 0 ? 0.5 : -0.5;
    return std::polar(1.0, -spec.chaoticity * mc * 0.5 * blk.two_m_anc[p % blk.anc_dim]);
  });
  return coupling * rotation_operator(layout, {1.0, 0.0, 0.0}, 0.5 * kPi, Target::kBoth);
}

State coherent_product_state(const Register& reg, double theta, double phi, Backend backend) {
  require(std::isfinite(theta) && std::isfinite(phi), ErrorCode::kInvalidArgument, "coherent-state angles must be finite");
  const LayoutPtr layout = make_layout(reg, backend);
  return State::pure(layout, 0, coherent_vector(*layout, theta, phi));
}

double central_entropy(const State& state) {
  Eigen::Matrix2cd rho_c = Eigen::Matrix2cd::Zero();
  for (std::size_t b = 0; b < state.size(); ++b) {
    const Block& blk = state.layout().block(b);
    const Eigen::MatrixXcd& r = state.block(b);
    const double mult = static_cast<double>(blk.multiplicity);
    for (int c = 0; c < 2; ++c)
      for (int d = 0; d < 2; ++d)
        rho_c(c, d) += mult * r.block(c * blk.anc_dim, d * blk.anc_dim, blk.anc_dim, blk.anc_dim).trace();
  }
  return binary_entropy_of(rho_c);
}

std::vector<double> entropy_series(const Register& reg, const KickedTopSpec& spec, Backend backend) {
  const Operator step = kicked_top_step(reg, spec, backend);
  const Block& blk = step.layout().block(0);
  const Eigen::MatrixXcd& u = step.block(0);
  Eigen::VectorXcd psi = coherent_vector(step.layout(), spec.theta, spec.phi);
  std::vector<double> out;
  out.reserve(spec.n_kicks);
  for (int n = 0; n < spec.n_kicks; ++n) {
    psi = u * psi;
    out.push_back(pure_central_entropy(psi, blk.anc_dim));
  }
  return out;
}

WindowStats trailing_window(const std::vector<double>& series, int window) {
  require(window >= 1 && static_cast<std::size_t>(window) <= series.size(), ErrorCode::kInvalidArgument,
          "averaging window exceeds the series length");
  WindowStats w;
  const auto first = series.end() - window;
  for (auto it = first; it != series.end(); ++it) w.mean += *it;
  w.mean /= window;
  for (auto it = first; it != series.end(); ++it) w.stddev += (*it - w.mean) * (*it - w.mean);
  w.stddev = std::sqrt(w.stddev / window);
  return w;
}

EntropyMap phase_space_map(const Register& reg, const KickedTopSpec& spec, const PhaseGrid& grid, Backend backend,
                           int threads) {
  require(grid.n_theta >= 1 && grid.n_phi >= 1, ErrorCode::kInvalidArgument, "phase-space grid is empty");
  validate(spec);
  const Operator step = kicked_top_step(reg, spec, backend);
  const int anc_dim = step.layout().block(0).anc_dim;
  const Eigen::MatrixXcd& u = step.block(0);

  EntropyMap m;
  for (int i = 0; i < grid.n_theta; ++i) m.theta.push_back(grid.n_theta == 1 ? 0.0 : kPi * i / (grid.n_theta - 1));
  for (int j = 0; j < grid.n_phi; ++j) m.phi.push_back(2.0 * kPi * j / grid.n_phi);
  m.values.resize(grid.n_theta, grid.n_phi);
  const std::size_t cells = static_cast<std::size_t>(grid.n_theta) * grid.n_phi;
  parallel_for(cells, threads, [&](std::size_t cell) {
    const int i = static_cast<int>(cell / grid.n_phi), j = static_cast<int>(cell % grid.n_phi);
    Eigen::VectorXcd psi = coherent_vector(step.layout(), m.theta[i], m.phi[j]);
    double acc = 0.0;
    for (int n = 1; n <= spec.n_kicks; ++n) {
      psi = u * psi;
      if (n > spec.n_kicks - spec.average_window) acc += pure_central_entropy(psi, anc_dim);
    }
    m.values(i, j) = acc / spec.average_window;
  });
  return m;
}

std::vector<SizeSweepRow> size_sweep(const RegisterSpec& base, const KickedTopSpec& spec,
                                     const std::vector<int>& ancilla_counts, Backend backend, int threads) {
  require(!ancilla_counts.empty(), ErrorCode::kInvalidArgument, "ancilla count list is empty");
  for (int c : ancilla_counts) require(c >= 1, ErrorCode::kInvalidArgument, "ancilla counts must be at least 1");
  validate(spec);
  std::vector<SizeSweepRow> rows(ancilla_counts.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    RegisterSpec s = base;
    s.n_total = ancilla_counts[i] + 1;
    const WindowStats w = trailing_window(entropy_series(Register(s), spec, backend), spec.average_window);
    rows[i] = SizeSweepRow{ancilla_counts[i], ancilla_counts[i] % 2 == 0, w.mean, w.stddev};
  });
  return rows;
}

}  // namespace starreg
