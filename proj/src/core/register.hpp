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

#include <optional>
#include <string>

namespace starreg {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHbar = 1.054571817e-34;      // J s
inline constexpr double kBoltzmann = 1.380649e-23;    // J / K

// Gyromagnetic ratios in rad s^-1 T^-1.
inline constexpr double kGammaH1 = 26.7522e7;
inline constexpr double kGammaP31 = 10.8394e7;
inline constexpr double kGammaC13 = 6.7283e7;
inline constexpr double kGammaSi29 = -5.3190e7;

/// Physical description of a star register: one central spin uniformly
/// coupled to n_total - 1 indistinguishable ancillas.
struct RegisterSpec {
  int n_total = 2;
  double gamma_c = kGammaP31;
  double gamma_a = kGammaH1;
  double j_ca = 0.0;          // Hz
  double b0 = 11.7;           // T
  double temperature = 298.0; // K
  std::optional<double> t1_c; // s
  std::optional<double> t1_a; // s
  std::string label;
};

/// Validated register with derived quantities.
class Register {
 public:
  explicit Register(RegisterSpec spec);

  const RegisterSpec& spec() const noexcept { return spec_; }
  int n_total() const noexcept { return spec_.n_total; }
  int n_ancilla() const noexcept { return spec_.n_total - 1; }

  // Purity factors hbar*gamma*B0/(k T); sign follows gamma.
  double epsilon_c() const noexcept { return eps_c_; }
  double epsilon_a() const noexcept { return eps_a_; }

  // Larmor frequencies -gamma*B0 (rad/s).
  double omega_c() const noexcept { return -spec_.gamma_c * spec_.b0; }
  double omega_a() const noexcept { return -spec_.gamma_a * spec_.b0; }

  double gamma_ratio() const noexcept { return spec_.gamma_a / spec_.gamma_c; }

 private:
  RegisterSpec spec_;
  double eps_c_;
  double eps_a_;
};

/// Throws Error(kInvalidSpec) naming the offending field.
Register build_register(const RegisterSpec& spec);

}  // namespace starreg
