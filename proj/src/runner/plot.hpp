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

#include "runner/experiments.hpp"

namespace starreg {

enum class PlotKind { kLine, kHeatmap, kSticks };

/// Parses "line", "heatmap" or "sticks" (InvalidArgument otherwise).
PlotKind parse_plot_kind(const std::string& name);

/// Reads a CSV written by to_csv. Throws IoError or ParseError.
Table read_csv(const std::string& path);

/// Standalone SVG rendering of a table, no computation beyond scaling.
///   line:    first column on x, every other column as a series
///   heatmap: first two columns as the grid, last column as the value
///   sticks:  vertical lines from `frequency_hz` and `amplitude`
/// Throws ColumnMismatch when the columns do not fit the kind and
/// InvalidArgument for an empty table.
std::string render_svg(const Table& table, PlotKind kind);

/// read_csv + render_svg + write; returns the SVG path used (the CSV path
/// with an .svg extension when `svg_path` is empty).
std::string emit_plot(const std::string& csv_path, PlotKind kind, const std::string& svg_path = "");

}  // namespace starreg
