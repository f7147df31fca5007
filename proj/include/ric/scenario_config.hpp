// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RIC_SCENARIO_CONFIG_HPP
#define RIC_SCENARIO_CONFIG_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ric/experiments.hpp"

namespace ric {

/// Malformed line, unknown key or violated constraint. `line` is 1-based,
/// 0 for overrides that did not come from a file.
class ConfigError : public std::runtime_error {
public:
  ConfigError(int line, std::string key, const std::string &what);

  int line() const { return line_; }
  const std::string &key() const { return key_; }

private:
  int line_;
  std::string key_;
};

/// Settings as written, before defaults are filled in.
struct ScenarioSettings {
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::map<std::string, Entry> entries;
  std::string section;

  /// Records key=value; unknown keys throw ConfigError.
  void set(const std::string &key, const std::string &value, int line);
};

struct ConfigDocument {
  std::vector<Scenario> scenarios;
  std::string out_dir; // "out" key, empty if absent
};

/// Raw per-section settings of a document, with settings that precede the
/// first section merged into every section.
struct ConfigSections {
  std::vector<ScenarioSettings> sections;
  std::string out_dir;
};

ConfigSections parse_config_sections(std::string_view text);

/// Keys accepted in configuration files and as overrides.
const std::vector<std::string> &config_keys();

/// Applies `settings` on top of `base` and validates the result.
Scenario apply_settings(const Scenario &base, const ScenarioSettings &settings);

/// Parses a document of `key = value` lines. Several pairs may share a
/// line; `#` starts a comment; `[name]` opens a new scenario section.
/// Omitted fields take the (3x3,1)^4 defaults: 20 channels, 20 errors,
/// 100 iterations, N0 = 1.
ConfigDocument parse_config_document(std::string_view text);

/// First scenario of the document.
Scenario parse_config(std::string_view text);

ConfigDocument load_config_file(const std::string &path);

} // namespace ric

#endif // RIC_SCENARIO_CONFIG_HPP
