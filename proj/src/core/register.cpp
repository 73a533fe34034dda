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

#include "core/register.hpp"

#include <cmath>

#include "core/error.hpp"

namespace starreg {

namespace {

void check(bool ok, const char* field, const std::string& why) {
  if (!ok) fail(ErrorCode::kInvalidSpec, std::string("register.") + field + ": " + why);
}

}  // namespace

Register::Register(RegisterSpec spec) : spec_(std::move(spec)) {
  const RegisterSpec& s = spec_;
  check(s.n_total >= 2, "n_total", "must be at least 2 (one central spin plus ancillas)");
  check(std::isfinite(s.gamma_c) && s.gamma_c != 0.0, "gamma_c", "must be finite and nonzero");
  check(std::isfinite(s.gamma_a) && s.gamma_a != 0.0, "gamma_a", "must be finite and nonzero");
  check(std::isfinite(s.j_ca), "j_ca", "must be finite");
  check(std::isfinite(s.b0) && s.b0 > 0.0, "b0", "must be positive");
  check(std::isfinite(s.temperature) && s.temperature > 0.0, "temperature", "must be positive");
  if (s.t1_c) check(std::isfinite(*s.t1_c) && *s.t1_c > 0.0, "t1_c", "must be positive");
  if (s.t1_a) check(std::isfinite(*s.t1_a) && *s.t1_a > 0.0, "t1_a", "must be positive");

  const double scale = kHbar * s.b0 / (kBoltzmann * s.temperature);
  eps_c_ = scale * s.gamma_c;
  eps_a_ = scale * s.gamma_a;
}

Register build_register(const RegisterSpec& spec) { return Register(spec); }

}  // namespace starreg
