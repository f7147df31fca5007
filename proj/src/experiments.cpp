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

#include "ric/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <stdexcept>
#include <thread>

#include "ric/sinr_metrics.hpp"

namespace ric {

namespace {

// Role tags for trial RNG streams. Channel and error draws are shared by all
// SNR points and algorithms of a run. Starting filters depend on the channel
// only, so with sigma2 = 0 every error draw of a channel yields the same design.
constexpr std::uint64_t kTagChannel = 1;
constexpr std::uint64_t kTagError = 2;
constexpr std::uint64_t kTagInit = 3;

// Runs fn(i) for i in [0, count). Each index writes only its own output slot,
// so results do not depend on scheduling.
void parallel_for(int count, int workers, const std::function<void(int)> &fn) {
  workers = std::clamp(workers, 1, std::max(count, 1));
  if (workers == 1) {
    for (int i = 0; i < count; ++i)
      fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++)
        fn(i);
    });
  for (auto &t : pool)
    t.join();
}

struct TrialDraw {
  ChannelSet channels;
  FilterSet initial;
};

TrialDraw draw_trial(const Scenario &s, const NetworkConfig &config, int channel, int error) {
  const auto c = static_cast<std::uint64_t>(channel);
  const auto e = static_cast<std::uint64_t>(error);
  RngStream base_rng(s.master_seed, RngStream::key({kTagChannel, c}));
  RngStream error_rng(s.master_seed, RngStream::key({kTagError, c, e}));
  RngStream init_rng(s.master_seed, RngStream::key({kTagInit, c}));

  LinkMatrices base(config.users, config.rx_antennas, config.tx_antennas);
  for (int k = 0; k < config.users; ++k)
    for (int j = 0; j < config.users; ++j)
      base(k, j) = sample_gaussian_matrix(config.rx_antennas, config.tx_antennas, 1.0, base_rng);

  TrialDraw draw;
  draw.channels = s.convention == ErrorConvention::kTruthFirst
                      ? resample_errors(config, base, error_rng)
                      : resample_truth(config, base, error_rng);
  draw.initial = init_filters(config, init_rng);
  return draw;
}

std::optional<SolveResult> try_solve(const NetworkConfig &config, const TrialDraw &draw,
                                     SolverKind kind, int iterations, bool leakage_trace) {
  SolveOptions options;
  options.iterations = iterations;
  options.record_trace = leakage_trace;
  options.trace_metrics = false;
  try {
    return alternate_solve(config, draw.channels, kind, options, draw.initial);
  } catch (const NumericFailure &) {
    return std::nullopt;
  } catch (const DegenerateStream &) {
    return std::nullopt;
  }
}

std::string kind_name(SolverKind k) { return std::string(to_string(k)); }

} // namespace

double snr_to_power(double snr_db, double noise) { return noise * std::pow(10.0, snr_db / 10.0); }

void Scenario::validate() const {
  NetworkConfig probe = config;
  probe.power = 1.0;
  probe.validate();
  if (snr_grid_db.empty())
    throw std::invalid_argument("SNR grid is empty");
  for (double s : sigma2_sweep)
    if (!(s >= 0.0))
      throw std::invalid_argument("error variance must be non-negative");
  if (channels_per_point < 1 || errors_per_channel < 1)
    throw std::invalid_argument("trial counts must be positive");
  if (iterations < 1)
    throw std::invalid_argument("iterations must be positive");
  if (workers < 1)
    throw std::invalid_argument("workers must be positive");
}

NetworkConfig Scenario::config_at(double snr_db) const { return config_at(snr_db, config.sigma2); }

NetworkConfig Scenario::config_at(double snr_db, double sigma2) const {
  NetworkConfig c = config;
  c.power = snr_to_power(snr_db, c.noise);
  c.sigma2 = sigma2;
  return c;
}

std::string default_label(const NetworkConfig &config) {
  std::string d;
  const bool uniform =
      std::all_of(config.streams.begin(), config.streams.end(),
                  [&](int x) { return x == config.streams.front(); });
  if (uniform && !config.streams.empty()) {
    d = std::to_string(config.streams.front());
  } else {
    d = "[";
    for (std::size_t i = 0; i < config.streams.size(); ++i)
      d += (i ? "," : "") + std::to_string(config.streams[i]);
    d += "]";
  }
  return "(" + std::to_string(config.tx_antennas) + "x" + std::to_string(config.rx_antennas) +
         "," + d + ")^" + std::to_string(config.users);
}

std::vector<std::string> preset_names() { return {"3x3_1_4", "4x4_2_3", "10x10_5_3", "6x8_4_2"}; }

Scenario preset_scenario(const std::string &name) {
  Scenario s;
  if (name == "3x3_1_4")
    s.config = NetworkConfig::uniform(4, 3, 3, 1, 1.0, 1.0, 0.1);
  else if (name == "4x4_2_3")
    s.config = NetworkConfig::uniform(3, 4, 4, 2, 1.0, 1.0, 0.1);
  else if (name == "10x10_5_3")
    s.config = NetworkConfig::uniform(3, 10, 10, 5, 1.0, 1.0, 0.1);
  else if (name == "6x8_4_2")
    s.config = NetworkConfig::uniform(2, 6, 8, 4, 1.0, 1.0, 0.1);
  else
    throw std::invalid_argument("unknown preset '" + name + "'");
  s.label = default_label(s.config);
  return s;
}

double ExperimentResult::value(const std::string &algorithm, double snr_db,
                               const std::string &statistic) const {
  for (const auto &r : rows)
    if (r.algorithm == algorithm && r.statistic == statistic && std::abs(r.snr_db - snr_db) < 1e-9)
      return r.value;
  throw std::out_of_range("no row for " + algorithm + "/" + statistic);
}

ExperimentResult run_sum_rate_sweep(const Scenario &scenario,
                                    const std::vector<SolverKind> &kinds) {
  scenario.validate();
  ExperimentResult result;
  const int trials = scenario.trials();
  for (double snr : scenario.snr_grid_db) {
    const NetworkConfig config = scenario.config_at(snr);
    // rates[trial][kind]; NaN marks a failed design.
    std::vector<std::vector<double>> rates(static_cast<std::size_t>(trials));
    parallel_for(trials, scenario.workers, [&](int t) {
      const TrialDraw draw =
          draw_trial(scenario, config, t / scenario.errors_per_channel, t % scenario.errors_per_channel);
      auto &slot = rates[static_cast<std::size_t>(t)];
      for (SolverKind kind : kinds) {
        const auto solved = try_solve(config, draw, kind, scenario.iterations, false);
        double rate = NAN;
        if (solved) {
          try {
            const LinkMatrices &scored = scenario.rate_channel == RateChannel::kTrue
                                             ? draw.channels.truth
                                             : draw.channels.estimated;
            rate = sum_rate(stream_sinrs(scored, solved->filters, config));
          } catch (const NumericFailure &) {
          }
        }
        slot.push_back(rate);
      }
    });
    for (std::size_t a = 0; a < kinds.size(); ++a) {
      double sum = 0.0;
      int ok = 0;
      for (const auto &row : rates)
        if (std::isfinite(row[a])) {
          sum += row[a];
          ++ok;
        }
      result.failed_trials += trials - ok;
      result.rows.push_back({scenario.label, kind_name(kinds[a]), snr, "avg_sum_rate",
                             ok ? sum / ok : NAN, ok});
    }
  }
  return result;
}

ExperimentResult run_variance_table(const Scenario &scenario,
                                    const std::vector<SolverKind> &kinds) {
  scenario.validate();
  ExperimentResult result;
  const int trials = scenario.trials();
  const int errors = scenario.errors_per_channel;
  for (double snr : scenario.snr_grid_db) {
    const NetworkConfig config = scenario.config_at(snr);
    // sinrs[trial][kind] -> per-stream estimated SINR, empty on failure.
    std::vector<std::vector<std::vector<double>>> sinrs(static_cast<std::size_t>(trials));
    parallel_for(trials, scenario.workers, [&](int t) {
      const TrialDraw draw = draw_trial(scenario, config, t / errors, t % errors);
      auto &slot = sinrs[static_cast<std::size_t>(t)];
      for (SolverKind kind : kinds) {
        std::vector<double> flat;
        if (const auto solved = try_solve(config, draw, kind, scenario.iterations, false)) {
          try {
            for (const auto &row : stream_sinrs(draw.channels.estimated, solved->filters, config))
              flat.insert(flat.end(), row.begin(), row.end());
          } catch (const NumericFailure &) {
            flat.clear();
          }
        }
        slot.push_back(std::move(flat));
      }
    });

    const int streams = config.total_streams();
    for (std::size_t a = 0; a < kinds.size(); ++a) {
      double total = 0.0;
      int groups = 0;
      int used = 0;
      for (int c = 0; c < scenario.channels_per_point; ++c) {
        for (int s = 0; s < streams; ++s) {
          double mean = 0.0, m2 = 0.0;
          int n = 0;
          for (int e = 0; e < errors; ++e) {
            const auto &v = sinrs[static_cast<std::size_t>(c * errors + e)][a];
            if (v.empty())
              continue;
            const double x = v[static_cast<std::size_t>(s)];
            ++n;
            const double delta = x - mean;
            mean += delta / n;
            m2 += delta * (x - mean);
          }
          if (s == 0)
            used += n;
          if (n >= 2) {
            total += m2 / (n - 1);
            ++groups;
          }
        }
      }
      result.failed_trials += trials - used;
      result.rows.push_back({scenario.label, kind_name(kinds[a]), snr, "avg_sinr_variance",
                             groups ? total / groups : NAN, used});
    }
  }
  return result;
}

ExperimentResult run_approx_accuracy(const Scenario &scenario,
                                     const std::vector<double> &sigma2_list) {
  scenario.validate();
  ExperimentResult result;
  const int trials = scenario.trials();
  for (double sigma2 : sigma2_list) {
    const std::string label = scenario.label + " sigma2=" + format_number(sigma2);
    for (double snr : scenario.snr_grid_db) {
      const NetworkConfig config = scenario.config_at(snr, sigma2);
      std::vector<std::pair<double, double>> values(static_cast<std::size_t>(trials), {NAN, NAN});
      parallel_for(trials, scenario.workers, [&](int t) {
        const TrialDraw draw = draw_trial(scenario, config, t / scenario.errors_per_channel,
                                          t % scenario.errors_per_channel);
        const auto solved = try_solve(config, draw, SolverKind::kEM, scenario.iterations, false);
        if (!solved)
          return;
        try {
          values[static_cast<std::size_t>(t)] = {
              approx_capacity(config, draw.channels.estimated, solved->filters),
              sum_rate(stream_sinrs(draw.channels.truth, solved->filters, config))};
        } catch (const NumericFailure &) {
        }
      });
      double theo = 0.0, num = 0.0;
      int ok = 0;
      for (const auto &[x, y] : values)
        if (std::isfinite(x) && std::isfinite(y)) {
          theo += x;
          num += y;
          ++ok;
        }
      result.failed_trials += trials - ok;
      ApproxRow row;
      row.snr_db = snr;
      row.sigma2 = sigma2;
      row.trials = ok;
      row.theoretical = ok ? theo / ok : NAN;
      row.numerical = ok ? num / ok : NAN;
      row.pct_error = std::abs(row.theoretical - row.numerical) / row.numerical * 100.0;
      result.approx.push_back(row);
      result.rows.push_back({label, "EM", snr, "approx_capacity", row.theoretical, ok});
      result.rows.push_back({label, "EM", snr, "numerical_capacity", row.numerical, ok});
      result.rows.push_back({label, "EM", snr, "pct_error", row.pct_error, ok});
    }
  }
  return result;
}

ExperimentResult run_convergence(const std::vector<Scenario> &scenarios,
                                 const std::vector<SolverKind> &kinds) {
  ExperimentResult result;
  for (const Scenario &scenario : scenarios) {
    scenario.validate();
    const double snr = scenario.snr_grid_db.front();
    const NetworkConfig config = scenario.config_at(snr);
    const int trials = scenario.trials();
    const auto points = static_cast<std::size_t>(scenario.iterations) + 1;
    for (SolverKind kind : kinds) {
      std::vector<std::vector<double>> traces(static_cast<std::size_t>(trials));
      parallel_for(trials, scenario.workers, [&](int t) {
        const TrialDraw draw = draw_trial(scenario, config, t / scenario.errors_per_channel,
                                          t % scenario.errors_per_channel);
        if (const auto solved = try_solve(config, draw, kind, scenario.iterations, true)) {
          auto &slot = traces[static_cast<std::size_t>(t)];
          for (const auto &rec : solved->trace)
            slot.push_back(rec.leakage_fraction);
        }
      });
      std::vector<double> mean(points, 0.0);
      int ok = 0;
      for (const auto &tr : traces) {
        if (tr.size() != points)
          continue;
        ++ok;
        for (std::size_t i = 0; i < points; ++i)
          mean[i] += tr[i];
      }
      result.failed_trials += trials - ok;
      for (std::size_t i = 0; i < points; ++i) {
        mean[i] = ok ? mean[i] / ok : NAN;
        result.traces.push_back(
            {scenario.label, kind_name(kind), static_cast<int>(i), mean[i]});
      }
      result.rows.push_back(
          {scenario.label, kind_name(kind), snr, "leakage_fraction", mean.back(), ok});
    }
  }
  return result;
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

namespace {

// Labels like "(3x3,1)^4" contain commas.
std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

} // namespace

void write_rows_csv(std::ostream &out, const std::vector<ResultRow> &rows) {
  out << "scenario,algorithm,snr_db,statistic,value,trials\n";
  for (const auto &r : rows)
    out << csv_field(r.scenario) << ',' << csv_field(r.algorithm) << ',' << format_number(r.snr_db)
        << ',' << r.statistic << ',' << format_number(r.value) << ',' << r.trials << '\n';
}

void write_trace_csv(std::ostream &out, const std::vector<TraceRow> &rows) {
  out << "scenario,algorithm,iteration,leakage_fraction\n";
  for (const auto &r : rows)
    out << csv_field(r.scenario) << ',' << csv_field(r.algorithm) << ',' << r.iteration << ','
        << format_number(r.leakage_fraction) << '\n';
}

void write_approx_csv(std::ostream &out, const std::vector<ApproxRow> &rows) {
  out << "snr_db,sigma2,theoretical,numerical,pct_error\n";
  for (const auto &r : rows)
    out << format_number(r.snr_db) << ',' << format_number(r.sigma2) << ','
        << format_number(r.theoretical) << ',' << format_number(r.numerical) << ','
        << format_number(r.pct_error) << '\n';
}

} // namespace ric
