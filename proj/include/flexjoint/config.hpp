// Copyright 2026 The flexjoint Authors
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

// Scenario files: INI-style sections of `key = value` lines, `#` or `;`
// comments. Every value keeps the line it came from so that errors can point
// at it.

#ifndef FLEXJOINT_CONFIG_HPP_
#define FLEXJOINT_CONFIG_HPP_

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "flexjoint/harness.hpp"

namespace flexjoint {

// what() reads "<origin>:<line>: <message>"; line 0 means a command-line
// override or the file as a whole.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& origin, int line, const std::string& key, const std::string& message);
  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

struct ConfigEntry {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
  std::string origin;
};

// Syntax only. Rejects malformed lines and duplicate keys.
std::vector<ConfigEntry> parse_config(std::istream& in, const std::string& origin);

// "section.key=value"; replaces an existing entry or appends a new one.
void apply_override(std::vector<ConfigEntry>& entries, const std::string& assignment);

struct RunConfig {
  std::string scenario_id;
  ScenarioConfig scenario;
  std::vector<ControllerSelection> variants;
  std::string csv_path;
  std::string report_path;
  std::string json_path;
};

// Maps entries onto a scenario. Missing joint keys come from [model] set
// (default "kr300-joint1"). Unknown sections or keys and bad values throw
// ConfigError naming the key and line.
RunConfig build_config(const std::vector<ConfigEntry>& entries, const std::string& default_id);

// Reads, overrides and builds. The scenario id defaults to the file stem.
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides);

// "FB-FF", "R-FF + MB-FB", "C-FB" or "flatness:model_based".
ControllerSelection parse_variant(const std::string& text);

// Decimal or a fraction "1798/7".
double parse_number(const std::string& text);

}  // namespace flexjoint

#endif  // FLEXJOINT_CONFIG_HPP_
