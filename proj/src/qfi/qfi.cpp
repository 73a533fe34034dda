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

#include "qfi/qfi.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace starreg {

namespace {

State diagonal_probe(const Register& reg, Backend backend, double eps, bool correlated) {
  require(std::isfinite(eps), ErrorCode::kInvalidArgument, "probe purity must be finite");
  const LayoutPtr layout = make_layout(reg, backend);
  const double norm = std::ldexp(1.0, -reg.n_total());
  const Operator d = diagonal_op(layout, [&](const Block& blk, int p) -> cplx {
    const double mc = p / blk.anc_dim == 0 ? 0.5 : -0.5;
    const double ma = 0.5 * blk.two_m_anc[p % blk.anc_dim];
    return norm * (correlated ? 1.0 + 4.0 * eps * mc * ma : 1.0 + 2.0 * eps * mc);
  });
  return State(layout, d.blocks());
}

// Outcome bookkeeping for one observable: eigenvectors per block and the
// index of the distinct eigenvalue each one belongs to.
struct Outcomes {
  std::vector<Eigen::MatrixXcd> vectors;
  std::vector<std::vector<int>> group;
  int n_groups = 0;
};

Outcomes resolve_outcomes(const Operator& m) {
  require(m.is_hermitian(1e-10), ErrorCode::kNonHermitianObservable, "Fisher observable is not Hermitian");
  Outcomes out;
  std::vector<double> all;
  std::vector<Eigen::VectorXd> values;
  double scale = 0.0;
  for (std::size_t b = 0; b < m.size(); ++b) scale = std::max(scale, m.block(b).cwiseAbs().maxCoeff());
  const double tol = 1e-9 * std::max(1.0, scale);
  for (std::size_t b = 0; b < m.size(); ++b) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.block(b));
    require(es.info() == Eigen::Success, ErrorCode::kDegenerateObservable, "observable eigendecomposition failed");
    const Eigen::MatrixXcd resid = m.block(b) * es.eigenvectors() - es.eigenvectors() * es.eigenvalues().asDiagonal();
    require(resid.cwiseAbs().maxCoeff() <= tol, ErrorCode::kDegenerateObservable,
            "observable eigendecomposition residual exceeds tolerance");
    out.vectors.push_back(es.eigenvectors());
    values.push_back(es.eigenvalues());
    all.insert(all.end(), es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  }
  std::sort(all.begin(), all.end());
  std::vector<double> reps;
  for (double v : all)
    if (reps.empty() || v - reps.back() > tol) reps.push_back(v);
  out.n_groups = static_cast<int>(reps.size());
  for (const auto& v : values) {
    std::vector<int> g(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const auto it = std::lower_bound(reps.begin(), reps.end(), v(i) - tol);
      g[i] = static_cast<int>(it - reps.begin());
    }
    out.group.push_back(std::move(g));
  }
  return out;
}

Eigen::VectorXd outcome_probabilities(const Outcomes& o, const State& rho) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(o.n_groups);
  for (std::size_t b = 0; b < rho.size(); ++b) {
    const double mult = static_cast<double>(rho.layout().block(b).multiplicity);
    const Eigen::MatrixXcd& v = o.vectors[b];
    const Eigen::VectorXd diag = (v.adjoint() * rho.block(b) * v).diagonal().real();
    for (Eigen::Index i = 0; i < diag.size(); ++i) f(o.group[b][i]) += mult * diag(i);
  }
  return f;
}

}  // namespace

State prepare_correlated_probe(const Register& reg, Backend backend, std::optional<double> epsilon_a) {
  return diagonal_probe(reg, backend, epsilon_a.value_or(reg.epsilon_a()), true);
}

State prepare_uncorrelated_probe(const Register& reg, Backend backend, std::optional<double> epsilon_a) {
  return diagonal_probe(reg, backend, epsilon_a.value_or(reg.epsilon_a()), false);
}

Operator encoding_rotation(const LayoutPtr& layout, double theta, double phi0) {
  return rotation_operator(layout, {-std::sin(phi0), std::cos(phi0), 0.0}, theta, Target::kCentral);
}

ProbeState encode_parameter(const State& base, double theta0, double phi0, double epsilon_a, bool correlated) {
  require(std::isfinite(theta0) && std::isfinite(phi0), ErrorCode::kInvalidArgument, "encoding angles must be finite");
  return ProbeState{apply_unitary(encoding_rotation(base.layout_ptr(), theta0, phi0), base), base, theta0, phi0,
                    epsilon_a, correlated};
}

QfiEstimate qfi_classical_fisher(const ProbeState& probe, const Observable& observable, const FisherOptions& options) {
  require(std::isfinite(options.fd_step) && options.fd_step > 0.0, ErrorCode::kInvalidArgument,
          "finite-difference step must be positive");
  probe.state.require_compatible(observable.op, "qfi_classical_fisher");
  const Outcomes o = resolve_outcomes(observable.op);
  const auto at = [&](double theta) {
    return outcome_probabilities(o, apply_unitary(encoding_rotation(probe.base.layout_ptr(), theta, probe.phi0), probe.base));
  };
  const Eigen::VectorXd f = outcome_probabilities(o, probe.state);
  const Eigen::VectorXd df = (at(probe.theta0 + options.fd_step) - at(probe.theta0 - options.fd_step)) / (2.0 * options.fd_step);
  double fisher = 0.0;
  bool any = false;
  for (int i = 0; i < o.n_groups; ++i) {
    if (f(i) <= options.probability_floor) continue;
    any = true;
    fisher += df(i) * df(i) / f(i);
  }
  require(any, ErrorCode::kAllZeroProbabilities, "every outcome probability is below the floor");
  return QfiEstimate{fisher, observable.description, options.fd_step};
}

Observable sld_observable(const ProbeState& probe) {
  const LayoutPtr& layout = probe.state.layout_ptr();
  const double ct = std::cos(probe.theta0), st = std::sin(probe.theta0);
  const double cp = std::cos(probe.phi0), sp = std::sin(probe.phi0);
  Operator t = (ct * cp) * central_op(layout, Axis::kX) + (ct * sp) * central_op(layout, Axis::kY) +
               (-st) * central_op(layout, Axis::kZ);
  if (!probe.correlated) return Observable{t, "t.I^C"};
  return Observable{t * ancilla_op(layout, Axis::kZ), "(t.I^C) I_z^A"};
}

double cramer_rao(double fisher, int copies) {
  require(copies >= 1, ErrorCode::kInvalidArgument, "copies must be at least 1");
  require(std::isfinite(fisher) && fisher > 0.0, ErrorCode::kNonpositiveFisher,
          "Cramer-Rao bound needs positive Fisher information");
  return 1.0 / (static_cast<double>(copies) * fisher);
}

double amplification_ratio(const Register& reg, double theta0, double phi0, Backend backend,
                           std::optional<double> epsilon_a, const FisherOptions& options) {
  const double eps = epsilon_a.value_or(reg.epsilon_a());
  require(eps != 0.0, ErrorCode::kNonpositiveFisher, "amplification ratio is undefined at zero purity");
  const ProbeState corr = encode_parameter(prepare_correlated_probe(reg, backend, eps), theta0, phi0, eps, true);
  const ProbeState ref = encode_parameter(prepare_uncorrelated_probe(reg, backend, eps), theta0, phi0, eps, false);
  const double f_ref = qfi_classical_fisher(ref, sld_observable(ref), options).value;
  require(f_ref > 0.0, ErrorCode::kNonpositiveFisher, "uncorrelated reference has zero Fisher information");
  return qfi_classical_fisher(corr, sld_observable(corr), options).value / f_ref;
}

}  // namespace starreg
