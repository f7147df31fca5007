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

// Command-line driver for the robust transceiver experiments.
//
//   ric_sim sweep          sum rate against SNR
//   ric_sim variance-table SINR variance across error draws
//   ric_sim approx         closed-form capacity against Monte Carlo
//   ric_sim converge       leakage-fraction traces
//   ric_sim selftest       invariant checks

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "ric/experiments.hpp"
#include "ric/scenario_config.hpp"
#include "ric/selftest.hpp"

namespace fs = std::filesystem;

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string scenario;
  std::string algorithms;
  std::string snr;
  std::optional<int> iters;
  std::string trials;
  std::optional<int> workers;
};

void add_flags(CLI::App *cmd, Flags &f) {
  cmd->add_option("--config", f.config, "key=value scenario file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--out", f.out, "output directory (default $RIC_OUT_DIR, then ./results)");
  cmd->add_option("--scenario", f.scenario, "preset name: 3x3_1_4, 4x4_2_3, 10x10_5_3, 6x8_4_2");
  cmd->add_option("--algorithms", f.algorithms, "comma list of EM, VM, MaxSINR");
  cmd->add_option("--snr", f.snr, "comma list of SNR points in dB");
  cmd->add_option("--iters", f.iters, "alternating iterations per design");
  cmd->add_option("--trials", f.trials, "channels per point, or CxE for channels x errors");
  cmd->add_option("--workers", f.workers, "worker threads");
}

// Flags override file settings key by key.
ric::ScenarioSettings with_flags(ric::ScenarioSettings s, const Flags &f) {
  const auto put = [&s](const char *key, const std::string &value) {
    if (!value.empty())
      s.set(key, value, 0);
  };
  put("preset", f.scenario);
  put("algorithms", f.algorithms);
  put("snr", f.snr);
  put("trials", f.trials);
  if (f.seed)
    put("seed", std::to_string(*f.seed));
  if (f.iters)
    put("iterations", std::to_string(*f.iters));
  if (f.workers)
    put("workers", std::to_string(*f.workers));
  return s;
}

struct Plan {
  std::vector<ric::Scenario> scenarios;
  fs::path out_dir;
};

// Leakage traces are taken at 10 dB unless an SNR is given.
ric::ScenarioSettings converge_defaults(ric::ScenarioSettings s) {
  if (!s.entries.count("snr"))
    s.set("snr", "10", 0);
  return s;
}

Plan make_plan(const Flags &f, bool converge) {
  ric::ConfigSections raw;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    std::stringstream buf;
    buf << in.rdbuf();
    raw = ric::parse_config_sections(buf.str());
  }
  Plan plan;
  const ric::Scenario defaults = ric::preset_scenario("3x3_1_4");
  if (raw.sections.empty())
    raw.sections.emplace_back();
  if (converge)
    for (auto &section : raw.sections)
      section = converge_defaults(section);
  if (converge && f.config.empty() && f.scenario.empty()) {
    for (const auto &name : ric::preset_names()) {
      ric::ScenarioSettings s = raw.sections.front();
      s.set("preset", name, 0);
      plan.scenarios.push_back(ric::apply_settings(defaults, with_flags(s, f)));
    }
  } else {
    for (const auto &section : raw.sections)
      plan.scenarios.push_back(ric::apply_settings(defaults, with_flags(section, f)));
  }

  if (!f.out.empty())
    plan.out_dir = f.out;
  else if (!raw.out_dir.empty())
    plan.out_dir = raw.out_dir;
  else if (const char *env = std::getenv("RIC_OUT_DIR"); env && *env)
    plan.out_dir = env;
  else
    plan.out_dir = "results";
  fs::create_directories(plan.out_dir);
  return plan;
}

template <typename Writer, typename Rows>
void write_csv(const fs::path &path, Writer writer, const Rows &rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  writer(out, rows);
  std::cout << "wrote " << path.string() << '\n';
}

int report_failures(int failed) {
  if (failed == 0)
    return 0;
  std::cerr << failed << " trial(s) failed numerically\n";
  return 3;
}

int run(const std::string &command, const Flags &f) {
  if (command == "selftest") {
    const ric::SelftestReport report = ric::run_selftest(f.seed.value_or(1));
    ric::print_report(std::cout, report);
    return report.ok() ? 0 : 1;
  }

  const Plan plan = make_plan(f, command == "converge");
  int failed = 0;
  if (command == "converge") {
    const auto kinds = plan.scenarios.front().algorithms;
    const auto result = ric::run_convergence(plan.scenarios, kinds);
    write_csv(plan.out_dir / "converge.csv", ric::write_trace_csv, result.traces);
    write_csv(plan.out_dir / "converge_final.csv", ric::write_rows_csv, result.rows);
    return report_failures(result.failed_trials);
  }

  ric::ExperimentResult all;
  for (const auto &scenario : plan.scenarios) {
    ric::ExperimentResult r;
    if (command == "sweep") {
      r = ric::run_sum_rate_sweep(scenario, scenario.algorithms);
    } else if (command == "variance-table") {
      r = ric::run_variance_table(scenario, scenario.algorithms);
    } else {
      const std::vector<double> sigmas = scenario.sigma2_sweep.empty()
                                             ? std::vector<double>{scenario.config.sigma2}
                                             : scenario.sigma2_sweep;
      r = ric::run_approx_accuracy(scenario, sigmas);
    }
    all.rows.insert(all.rows.end(), r.rows.begin(), r.rows.end());
    all.approx.insert(all.approx.end(), r.approx.begin(), r.approx.end());
    failed += r.failed_trials;
  }
  if (command == "sweep") {
    write_csv(plan.out_dir / "sweep.csv", ric::write_rows_csv, all.rows);
  } else if (command == "variance-table") {
    write_csv(plan.out_dir / "variance_table.csv", ric::write_rows_csv, all.rows);
  } else {
    write_csv(plan.out_dir / "approx.csv", ric::write_approx_csv, all.approx);
    write_csv(plan.out_dir / "approx_rows.csv", ric::write_rows_csv, all.rows);
  }
  return report_failures(failed);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Robust transceiver design experiments for the MIMO interference channel"};
  app.require_subcommand(1);
  Flags flags;
  std::string command;
  for (const char *name : {"sweep", "variance-table", "approx", "converge", "selftest"}) {
    CLI::App *sub = app.add_subcommand(name);
    add_flags(sub, flags);
    sub->callback([&command, name] { command = name; });
  }
  CLI11_PARSE(app, argc, argv);

  try {
    return run(command, flags);
  } catch (const ric::ConfigError &ex) {
    std::cerr << "config error: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception &ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
}
