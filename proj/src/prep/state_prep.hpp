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
#include <map>
#include <vector>

#include "core/dynamics.hpp"
#include "core/register.hpp"
#include "core/space.hpp"

namespace starreg {

enum class ThermalModel {
  kFirstOrder,  // rho = (1 + 2 eps_C I_z^C + 2 eps_A I_z^A) / 2^N
  kExact,       // per-spin Boltzmann populations (1 +- tanh eps) / 2
};

State thermal_state(const Register& reg, Backend backend, ThermalModel model = ThermalModel::kFirstOrder);

/// All spins up, |0...0>.
State ground_state(const LayoutPtr& layout);

struct SubspacePopulations {
  double p0 = 0.0;  // central qubit in |0>
  double p1 = 0.0;  // central qubit in |1>
};

/// Total first-order thermal population of the (c, h) level family, where h
/// counts ancillas in |1> (m_h = (N-1)/2 - h).
SubspacePopulations subspace_populations(const Register& reg, int h);

enum class CnotDirection { kEntangle, kUntangle };

/// Central-controlled simultaneous flip of all ancillas.
Operator collective_cnot_operator(const LayoutPtr& layout);
/// The gate is self-inverse; `direction` only documents intent at call sites.
State collective_cnot(const State& state, CnotDirection direction = CnotDirection::kEntangle);

/// Hadamard (X + Z)/sqrt(2) on the central qubit.
Operator central_hadamard_operator(const LayoutPtr& layout);

/// Hadamard on the central qubit followed by the collective CNOT.
State prepare_mssm(const State& state);
/// Inverse circuit: CNOT then Hadamard. prepare_mssm is not an involution.
State unprepare_mssm(const State& state);

/// Coherence orders q_h = N - 2h for h = 0 .. N-1.
std::vector<int> coherence_orders(int n_total);

/// MSSM order of a basis position: the pair |0>|h> and |1>|N-1-h> shares
/// q_h = N - 2h.
int mssm_order(const Block& block, int pos);

struct CoherenceEntry {
  int q = 0;
  double weight = 0.0;
  State component;  // unit trace when weight > 0, zero otherwise
};

struct CoherenceDecomposition {
  std::vector<CoherenceEntry> entries;  // ordered by decreasing q
  double p_diag = 0.0;                  // mass outside every MSSM sector

  double weight(int q) const;
};

/// Resolves a state over the MSSM sectors: p_q is the trace of P_q rho P_q
/// where P_q projects onto the two level families joined by an order-q
/// coherence.
CoherenceDecomposition coherence_decompose(const State& state);

/// P_q rho P_q; its trace equals the weight p_q. Throws NoSuchOrder.
State coherence_filter(const State& state, int q);

/// Element-level projection onto density-matrix entries |x><y| whose total
/// magnetic quantum numbers differ by +-q. Throws NoSuchOrder when |q| > N.
State coherence_sector(const State& state, int q);

/// P(q_h) = C(N-1, h).
std::map<int, std::uint64_t> pascal_weights(int n_total);

enum class Channel { kCentral = 0, kAncilla = 1 };

struct StickLine {
  double frequency_hz = 0.0;  // offset from the channel Larmor frequency
  double amplitude = 0.0;
  Channel channel = Channel::kCentral;
  int h = 0;                  // ancilla level h (central lines) or central state c (ancilla lines)
};

struct StickSpectrum {
  std::vector<StickLine> lines;
};

/// Transition-moment weighted population differences, scaled so the
/// strongest line of the thermal spectrum of the same register is 1.
StickSpectrum stick_spectrum(const Register& reg, const State& state, Channel channel);

}  // namespace starreg
