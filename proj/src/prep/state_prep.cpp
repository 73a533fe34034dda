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

#include "prep/state_prep.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/dicke.hpp"
#include "core/error.hpp"

namespace starreg {

namespace {

int central_index(const Block& blk, int pos) { return pos / blk.anc_dim; }

void require_order(int n_total, int q) {
  const auto orders = coherence_orders(n_total);
  require(std::find(orders.begin(), orders.end(), q) != orders.end(), ErrorCode::kNoSuchOrder,
          "coherence order " + std::to_string(q) + " is not reachable for N=" + std::to_string(n_total));
}

// Sum of raw line intensities keyed by line label.
std::map<int, double> raw_lines(const State& state, Channel channel) {
  const Layout& layout = state.layout();
  const Operator op = channel == Channel::kCentral ? central_op(state.layout_ptr(), Axis::kX)
                                                   : ancilla_op(state.layout_ptr(), Axis::kX);
  std::map<int, double> lines;
  const int n = layout.n_ancilla();
  if (channel == Channel::kCentral) {
    for (int h = 0; h <= n; ++h) lines[h] = 0.0;
  } else {
    lines[0] = lines[1] = 0.0;
  }
  for (std::size_t b = 0; b < layout.size(); ++b) {
    const Block& blk = layout.block(b);
    const double mult = static_cast<double>(blk.multiplicity);
    const Eigen::MatrixXcd& rho = state.block(b);
    const Eigen::MatrixXcd& o = op.block(b);
    for (int x = 0; x < blk.dim(); ++x) {
      for (int y = 0; y < blk.dim(); ++y) {
        const double moment = std::norm(o(y, x));
        if (moment == 0.0) continue;
        const int cx = central_index(blk, x), cy = central_index(blk, y);
        const int mx = blk.two_m_anc[x % blk.anc_dim], my = blk.two_m_anc[y % blk.anc_dim];
        int label;
        if (channel == Channel::kCentral) {
          if (!(cx == 0 && cy == 1 && mx == my)) continue;
          label = (n - mx) / 2;
        } else {
          if (!(cx == cy && my == mx - 2)) continue;
          label = cx;
        }
        lines[label] += mult * moment * (rho(x, x).real() - rho(y, y).real());
      }
    }
  }
  return lines;
}

}  // namespace

State thermal_state(const Register& reg, Backend backend, ThermalModel model) {
  const LayoutPtr layout = make_layout(reg, backend);
  const double ec = reg.epsilon_c(), ea = reg.epsilon_a();
  const int n_total = reg.n_total(), n = reg.n_ancilla();
  State s(layout);
  for (std::size_t b = 0; b < layout->size(); ++b) {
    const Block& blk = layout->block(b);
    for (int p = 0; p < blk.dim(); ++p) {
      const double sc = p < blk.anc_dim ? 1.0 : -1.0;
      const int two_m = blk.two_m_anc[p % blk.anc_dim];
      double value;
      if (model == ThermalModel::kFirstOrder) {
        value = std::ldexp(1.0 + sc * ec + two_m * ea, -n_total);
      } else {
        const double tc = std::tanh(ec), ta = std::tanh(ea);
        const int up = (n + two_m) / 2, down = n - up;
        value = 0.5 * (1.0 + sc * tc) * std::pow(0.5 * (1.0 + ta), up) * std::pow(0.5 * (1.0 - ta), down);
      }
      s.block(b)(p, p) = value;
    }
  }
  return s;
}

State ground_state(const LayoutPtr& layout) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(layout->block(0).dim());
  psi(0) = 1.0;
  return State::pure(layout, 0, psi);
}

SubspacePopulations subspace_populations(const Register& reg, int h) {
  const int n = reg.n_ancilla();
  require(h >= 0 && h <= n, ErrorCode::kIndexOutOfRange,
          "subspace index h=" + std::to_string(h) + " outside [0, " + std::to_string(n) + "]");
  const double deg = static_cast<double>(binomial(n, h));
  const double m_h = 0.5 * n - h;
  const double scale = std::ldexp(deg, -reg.n_total());
  return {scale * (1.0 + reg.epsilon_c() + 2.0 * m_h * reg.epsilon_a()),
          scale * (1.0 - reg.epsilon_c() + 2.0 * m_h * reg.epsilon_a())};
}

Operator collective_cnot_operator(const LayoutPtr& layout) {
  Operator u(layout);
  const int n = layout->n_ancilla();
  for (std::size_t b = 0; b < layout->size(); ++b) {
    const Block& blk = layout->block(b);
    Eigen::MatrixXcd& m = u.block(b);
    for (int a = 0; a < blk.anc_dim; ++a) m(a, a) = 1.0;
    if (layout->backend() == Backend::kDense) {
      const int mask = blk.anc_dim - 1;
      for (int a = 0; a < blk.anc_dim; ++a) m(blk.index(1, a ^ mask), blk.index(1, a)) = 1.0;
    } else {
      // X^{(x)n} = i^n exp(-i pi J_x), which maps |j, m> to (-1)^{n/2 - j} |j, -m>.
      const double sign = ((n - blk.two_j) / 2) % 2 == 0 ? 1.0 : -1.0;
      for (int a = 0; a < blk.anc_dim; ++a) m(blk.index(1, blk.two_j - a), blk.index(1, a)) = sign;
    }
  }
  return u;
}

State collective_cnot(const State& state, CnotDirection /*direction*/) {
  return apply_unitary(collective_cnot_operator(state.layout_ptr()), state);
}

Operator central_hadamard_operator(const LayoutPtr& layout) {
  Eigen::MatrixXcd h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  h /= std::sqrt(2.0);
  Operator u(layout);
  for (std::size_t b = 0; b < layout->size(); ++b) {
    const int d = layout->block(b).anc_dim;
    u.block(b) = kron(h, Eigen::MatrixXcd::Identity(d, d));
  }
  return u;
}

State prepare_mssm(const State& state) {
  const LayoutPtr& layout = state.layout_ptr();
  return apply_unitary(collective_cnot_operator(layout) * central_hadamard_operator(layout), state);
}

State unprepare_mssm(const State& state) {
  const LayoutPtr& layout = state.layout_ptr();
  return apply_unitary(central_hadamard_operator(layout) * collective_cnot_operator(layout), state);
}

std::vector<int> coherence_orders(int n_total) {
  std::vector<int> q;
  for (int h = 0; h < n_total; ++h) q.push_back(n_total - 2 * h);
  return q;
}

int mssm_order(const Block& block, int pos) {
  const int two_m = block.two_m_anc[pos % block.anc_dim];
  return central_index(block, pos) == 0 ? 1 + two_m : 1 - two_m;
}

double CoherenceDecomposition::weight(int q) const {
  for (const auto& e : entries)
    if (e.q == q) return e.weight;
  fail(ErrorCode::kNoSuchOrder, "coherence order " + std::to_string(q) + " not present in decomposition");
}

CoherenceDecomposition coherence_decompose(const State& state) {
  CoherenceDecomposition d;
  double total = 0.0;
  for (int q : coherence_orders(state.layout().n_total())) {
    State f = coherence_filter(state, q);
    const double w = f.trace().real();
    if (w > 0.0) {
      for (std::size_t b = 0; b < f.size(); ++b) f.block(b) /= w;
    }
    total += w;
    d.entries.push_back(CoherenceEntry{q, w, std::move(f)});
  }
  d.p_diag = state.trace().real() - total;
  return d;
}

State coherence_filter(const State& state, int q) {
  require_order(state.layout().n_total(), q);
  State r(state.layout_ptr());
  for (std::size_t b = 0; b < state.size(); ++b) {
    const Block& blk = state.layout().block(b);
    for (int x = 0; x < blk.dim(); ++x) {
      if (mssm_order(blk, x) != q) continue;
      for (int y = 0; y < blk.dim(); ++y)
        if (mssm_order(blk, y) == q) r.block(b)(x, y) = state.block(b)(x, y);
    }
  }
  return r;
}

State coherence_sector(const State& state, int q) {
  const int n_total = state.layout().n_total();
  require(std::abs(q) <= n_total, ErrorCode::kNoSuchOrder,
          "coherence order " + std::to_string(q) + " exceeds N=" + std::to_string(n_total));
  State r(state.layout_ptr());
  for (std::size_t b = 0; b < state.size(); ++b) {
    const Block& blk = state.layout().block(b);
    for (int x = 0; x < blk.dim(); ++x) {
      for (int y = 0; y < blk.dim(); ++y) {
        const int diff = (blk.two_m_total(x) - blk.two_m_total(y)) / 2;
        if (diff == q || diff == -q) r.block(b)(x, y) = state.block(b)(x, y);
      }
    }
  }
  return r;
}

std::map<int, std::uint64_t> pascal_weights(int n_total) {
  require(n_total >= 2, ErrorCode::kInvalidSpec, "pascal_weights: N must be at least 2");
  std::map<int, std::uint64_t> w;
  for (int h = 0; h < n_total; ++h) w[n_total - 2 * h] = binomial(n_total - 1, h);
  return w;
}

StickSpectrum stick_spectrum(const Register& reg, const State& state, Channel channel) {
  require(state.layout().n_total() == reg.n_total(), ErrorCode::kShapeMismatch,
          "stick_spectrum: state and register sizes differ");
  const auto lines = raw_lines(state, channel);
  const auto reference = raw_lines(thermal_state(reg, state.backend()), channel);
  double scale = 0.0;
  for (const auto& [label, amp] : reference) scale = std::max(scale, std::abs(amp));
  if (scale == 0.0) scale = 1.0;

  const double j = reg.spec().j_ca;
  const int n = reg.n_ancilla();
  StickSpectrum s;
  for (const auto& [label, amp] : lines) {
    StickLine line;
    line.channel = channel;
    line.h = label;
    line.amplitude = amp / scale;
    line.frequency_hz = channel == Channel::kCentral ? j * (0.5 * n - label) : j * (label == 0 ? 0.5 : -0.5);
    s.lines.push_back(line);
  }
  return s;
}

}  // namespace starreg
