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
#include <string>
#include <variant>
#include <vector>

namespace starreg {

enum class ValueType { kInt, kUInt, kReal, kRealList, kIntList, kString, kBool, kChoice };

/// One documented configuration key. Keys without a default and not marked
/// required are optional and simply absent when unset.
struct KeyDef {
  std::string name;
  ValueType type = ValueType::kReal;
  bool required = false;
  std::string default_text;  // empty: no default
  std::vector<std::string> choices;
  std::string help;
};

using ConfigValue = std::variant<std::int64_t, std::uint64_t, double, std::vector<double>, std::vector<std::int64_t>,
                                 std::string, bool>;
using ConfigSection = std::map<std::string, ConfigValue>;

/// Parsed configuration. Section "" holds the global keys. Only keys that
/// appear in the text are stored; typed getters fall back to documented
/// defaults.
struct ExperimentConfig {
  std::map<std::string, ConfigSection> sections;

  bool operator==(const ExperimentConfig& other) const = default;

  std::string experiment() const;
  bool has(const std::string& section, const std::string& key) const;
  std::int64_t get_int(const std::string& section, const std::string& key) const;
  std::uint64_t get_uint(const std::string& section, const std::string& key) const;
  double get_real(const std::string& section, const std::string& key) const;
  std::vector<double> get_reals(const std::string& section, const std::string& key) const;
  std::vector<std::int64_t> get_ints(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key) const;
  bool get_bool(const std::string& section, const std::string& key) const;

 private:
  const ConfigValue& lookup(const std::string& section, const std::string& key, ConfigValue& scratch) const;
};

/// Experiment names accepted by the `experiment` key.
const std::vector<std::string>& experiment_names();

/// Documented keys of a section ("" for globals). Throws UnknownKey for an
/// unknown section name.
const std::vector<KeyDef>& section_schema(const std::string& section);

/// Strict line-oriented parse of `key = value` lines with `[section]`
/// headers and `#` comments. Throws ParseError (with line number),
/// UnknownKey (naming the nearest valid key) or MissingRequired. The result
/// is also checked semantically, so invalid registers or protocol settings
/// fail here with InvalidSpec or InvalidArgument.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Sets or replaces one key after parsing (command-line overrides), with the
/// same type and semantic checks as parse_config.
void set_config_value(ExperimentConfig& config, const std::string& section, const std::string& key,
                      const std::string& text);

/// Text form accepted by parse_config. With `resolved`, every key that has
/// a default is written out explicitly.
std::string render_config(const ExperimentConfig& config, bool resolved = false);

/// Structural and semantic check run by parse_config.
void validate_config(const ExperimentConfig& config);

/// Edit distance used for key suggestions.
std::size_t levenshtein(const std::string& a, const std::string& b);

}  // namespace starreg
