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

#include "ric/scenario_config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ric {

ConfigError::ConfigError(int line, std::string key, const std::string &what)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (key.empty() ? std::string() : "key '" + key + "': ") + what),
      line_(line), key_(std::move(key)) {}

const std::vector<std::string> &config_keys() {
  static const std::vector<std::string> keys = {
      "preset", "label",    "K",          "M",         "N",       "D",
      "sigma2", "snr",      "N0",         "channels",  "errors",  "trials",
      "iterations", "iters", "seed",      "algorithms", "workers", "error_model",
      "rate_channel", "out"};
  return keys;
}

void ScenarioSettings::set(const std::string &key, const std::string &value, int line) {
  const auto &keys = config_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end())
    throw ConfigError(line, key, "unknown key");
  if (value.empty())
    throw ConfigError(line, key, "missing value");
  entries[key == "iters" ? "iterations" : key] = {value, line};
}

namespace {

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    out.push_back(cur);
  return out;
}

template <typename T> T parse_number(const ScenarioSettings::Entry &e, const std::string &key) {
  T value{};
  const char *first = e.value.data();
  const char *last = first + e.value.size();
  if constexpr (std::is_floating_point_v<T>) {
    // from_chars for double is unavailable on older libstdc++.
    try {
      std::size_t used = 0;
      value = std::stod(e.value, &used);
      if (used != e.value.size())
        throw ConfigError(e.line, key, "not a number: '" + e.value + "'");
    } catch (const std::logic_error &) {
      throw ConfigError(e.line, key, "not a number: '" + e.value + "'");
    }
  } else {
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
      throw ConfigError(e.line, key, "not an integer: '" + e.value + "'");
  }
  return value;
}

template <typename T>
std::vector<T> parse_list(const ScenarioSettings::Entry &e, const std::string &key) {
  std::vector<T> out;
  for (const auto &part : split(e.value, ','))
    out.push_back(parse_number<T>({part, e.line}, key));
  if (out.empty())
    throw ConfigError(e.line, key, "empty list");
  return out;
}

// "a = b", "a= b" and "a =b" all become "a=b"; spaces after commas vanish.
std::string normalize_line(std::string line) {
  std::string out;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == ' ' || c == '\t') {
      const bool after_sep = !out.empty() && (out.back() == '=' || out.back() == ',');
      std::size_t j = i;
      while (j < line.size() && (line[j] == ' ' || line[j] == '\t'))
        ++j;
      const bool before_sep = j < line.size() && (line[j] == '=' || line[j] == ',');
      if (!after_sep && !before_sep && !out.empty() && j < line.size())
        out.push_back(' ');
      i = j - 1;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

} // namespace

Scenario apply_settings(const Scenario &base, const ScenarioSettings &settings) {
  const auto &e = settings.entries;
  const auto has = [&](const char *k) { return e.count(k) > 0; };
  const auto at = [&](const char *k) -> const ScenarioSettings::Entry & { return e.at(k); };

  Scenario s = base;
  if (has("preset")) {
    try {
      s = preset_scenario(at("preset").value);
    } catch (const std::invalid_argument &ex) {
      throw ConfigError(at("preset").line, "preset", ex.what());
    }
  }
  const bool relabel = s.label.empty() || s.label == default_label(s.config);
  NetworkConfig &c = s.config;
  const int old_users = c.users;
  if (has("K"))
    c.users = parse_number<int>(at("K"), "K");
  if (has("M"))
    c.tx_antennas = parse_number<int>(at("M"), "M");
  if (has("N"))
    c.rx_antennas = parse_number<int>(at("N"), "N");
  if (c.users < 1)
    throw ConfigError(has("K") ? at("K").line : 0, "K", "K must be at least 1");
  if (has("D")) {
    auto d = parse_list<int>(at("D"), "D");
    if (d.size() == 1)
      d.assign(static_cast<std::size_t>(c.users), d.front());
    if (static_cast<int>(d.size()) != c.users)
      throw ConfigError(at("D").line, "D", "need 1 or K stream counts");
    c.streams = d;
  } else if (c.users != old_users) {
    c.streams.assign(static_cast<std::size_t>(c.users), c.streams.empty() ? 1 : c.streams.front());
  }
  if (has("sigma2")) {
    const auto list = parse_list<double>(at("sigma2"), "sigma2");
    c.sigma2 = list.front();
    s.sigma2_sweep = list.size() > 1 ? list : std::vector<double>{};
  }
  if (has("N0"))
    c.noise = parse_number<double>(at("N0"), "N0");
  if (has("snr"))
    s.snr_grid_db = parse_list<double>(at("snr"), "snr");
  if (has("channels"))
    s.channels_per_point = parse_number<int>(at("channels"), "channels");
  if (has("errors"))
    s.errors_per_channel = parse_number<int>(at("errors"), "errors");
  if (has("trials")) {
    // "C" sets the channel count, "CxE" both counts.
    const auto parts = split(at("trials").value, 'x');
    if (parts.empty() || parts.size() > 2)
      throw ConfigError(at("trials").line, "trials", "expected C or CxE");
    s.channels_per_point = parse_number<int>({parts[0], at("trials").line}, "trials");
    if (parts.size() == 2)
      s.errors_per_channel = parse_number<int>({parts[1], at("trials").line}, "trials");
  }
  if (has("iterations"))
    s.iterations = parse_number<int>(at("iterations"), "iterations");
  if (has("seed"))
    s.master_seed = parse_number<std::uint64_t>(at("seed"), "seed");
  if (has("workers"))
    s.workers = parse_number<int>(at("workers"), "workers");
  if (has("algorithms")) {
    s.algorithms.clear();
    for (const auto &name : split(at("algorithms").value, ',')) {
      try {
        s.algorithms.push_back(parse_solver_kind(name));
      } catch (const std::invalid_argument &ex) {
        throw ConfigError(at("algorithms").line, "algorithms", ex.what());
      }
    }
  }
  if (has("error_model")) {
    const auto &v = at("error_model").value;
    if (v == "truth_first")
      s.convention = ErrorConvention::kTruthFirst;
    else if (v == "estimate_first")
      s.convention = ErrorConvention::kEstimateFirst;
    else
      throw ConfigError(at("error_model").line, "error_model",
                        "expected truth_first or estimate_first");
  }
  if (has("rate_channel")) {
    const auto &v = at("rate_channel").value;
    if (v == "true")
      s.rate_channel = RateChannel::kTrue;
    else if (v == "estimated")
      s.rate_channel = RateChannel::kEstimated;
    else
      throw ConfigError(at("rate_channel").line, "rate_channel", "expected true or estimated");
  }

  if (has("label"))
    s.label = at("label").value;
  else if (!settings.section.empty())
    s.label = settings.section;
  else if (relabel)
    s.label = default_label(c);

  // Constraint checks, attributed to the key most likely at fault.
  const int cap = std::min(c.tx_antennas, c.rx_antennas);
  for (int d : c.streams)
    if (d < 1 || d > cap)
      throw ConfigError(has("D") ? at("D").line : 0, "D",
                        "stream count " + std::to_string(d) + " infeasible for min(M,N)=" +
                            std::to_string(cap));
  try {
    s.validate();
  } catch (const std::invalid_argument &ex) {
    throw ConfigError(0, "", ex.what());
  }
  return s;
}

ConfigSections parse_config_sections(std::string_view text) {
  ConfigSections doc;
  std::vector<ScenarioSettings> sections(1);
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    const std::string line = normalize_line(raw);
    if (line.empty())
      continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3)
        throw ConfigError(line_no, "", "malformed section header");
      ScenarioSettings next;
      next.section = line.substr(1, line.size() - 2);
      sections.push_back(std::move(next));
      continue;
    }
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos || eq == 0)
        throw ConfigError(line_no, "", "expected key=value, got '" + token + "'");
      const std::string key = token.substr(0, eq);
      const std::string value = token.substr(eq + 1);
      if (key == "out") {
        if (value.empty())
          throw ConfigError(line_no, key, "missing value");
        doc.out_dir = value;
        continue;
      }
      sections.back().set(key, value, line_no);
    }
  }

  // Settings before the first section apply to every section.
  if (sections.size() > 1) {
    const ScenarioSettings global = sections.front();
    sections.erase(sections.begin());
    for (auto &section : sections)
      for (const auto &[k, v] : global.entries)
        section.entries.emplace(k, v);
  }
  doc.sections = std::move(sections);
  return doc;
}

ConfigDocument parse_config_document(std::string_view text) {
  const ConfigSections raw = parse_config_sections(text);
  const Scenario defaults = preset_scenario("3x3_1_4");
  ConfigDocument doc;
  doc.out_dir = raw.out_dir;
  for (const auto &section : raw.sections)
    doc.scenarios.push_back(apply_settings(defaults, section));
  return doc;
}

Scenario parse_config(std::string_view text) { return parse_config_document(text).scenarios.front(); }

ConfigDocument load_config_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError(0, "", "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_document(buf.str());
}

} // namespace ric
