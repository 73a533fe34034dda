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

#include <string>
#include <utility>
#include <vector>

#include "core/space.hpp"
#include "runner/config.hpp"

namespace starreg {

/// Rectangular numeric table written as `<name>.csv`.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ExperimentResult {
  std::string experiment;
  std::vector<Table> tables;  // tables[0] is named after the experiment
  std::vector<std::pair<std::string, std::string>> metadata;
  std::string resolved_config;
};

/// Backend actually used: `auto` selects the symmetric backend unless the
/// experiment breaks permutation symmetry.
Backend resolve_backend(const ExperimentConfig& config);

/// Builds and checks every protocol input without running anything.
void plan_experiment(const ExperimentConfig& config);

/// Deterministic for a fixed config; thread count never changes the tables.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Comma-separated, header row, shortest round-trip numbers, LF endings.
std::string to_csv(const Table& table);

/// `# key = value` metadata lines followed by the resolved configuration.
std::string to_meta(const ExperimentResult& result);

/// Writes every table and `<experiment>.meta` into `dir` (created if needed).
/// Throws IoError.
void write_result(const ExperimentResult& result, const std::string& dir);

std::string format_number(double v);

}  // namespace starreg
