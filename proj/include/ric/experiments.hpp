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

#ifndef RIC_EXPERIMENTS_HPP
#define RIC_EXPERIMENTS_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "ric/core_model.hpp"
#include "ric/solvers.hpp"

namespace ric {

/// Which channel realized rates are scored on.
enum class RateChannel {
  kTrue,      // SINR over G, what the link actually delivers
  kEstimated, // SINR over H, what the designer believes
};

/// One Monte Carlo experiment setting. SNR is P / N0 with N0 fixed by
/// `config.noise`; `config.power` is overwritten per SNR point.
struct Scenario {
  std::string label;
  NetworkConfig config;
  std::vector<double> snr_grid_db{0, 4, 8, 12, 16, 20, 24};
  std::vector<double> sigma2_sweep; // approximation-accuracy runs; empty means {config.sigma2}
  int channels_per_point = 20;
  int errors_per_channel = 20;
  int iterations = 100;
  std::uint64_t master_seed = 1;
  ErrorConvention convention = ErrorConvention::kTruthFirst;
  RateChannel rate_channel = RateChannel::kTrue;
  std::vector<SolverKind> algorithms{SolverKind::kEM, SolverKind::kVM, SolverKind::kMaxSinr};
  int workers = 1;

  void validate() const;
  int trials() const { return channels_per_point * errors_per_channel; }
  NetworkConfig config_at(double snr_db) const;
  NetworkConfig config_at(double snr_db, double sigma2) const;
};

double snr_to_power(double snr_db, double noise);

/// "(3x3,1)^4" style name; mixed stream counts print as a list.
std::string default_label(const NetworkConfig &config);

/// Named scenario presets: "3x3_1_4", "4x4_2_3", "10x10_5_3", "6x8_4_2".
Scenario preset_scenario(const std::string &name);
std::vector<std::string> preset_names();

struct ResultRow {
  std::string scenario;
  std::string algorithm;
  double snr_db = 0.0;
  std::string statistic;
  double value = 0.0;
  int trials = 0;
};

struct TraceRow {
  std::string scenario;
  std::string algorithm;
  int iteration = 0;
  double leakage_fraction = 0.0;
};

struct ApproxRow {
  double snr_db = 0.0;
  double sigma2 = 0.0;
  double theoretical = 0.0;
  double numerical = 0.0;
  double pct_error = 0.0;
  int trials = 0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<TraceRow> traces;
  std::vector<ApproxRow> approx;
  int failed_trials = 0;

  /// Value of the first row matching (algorithm, snr, statistic); throws if absent.
  double value(const std::string &algorithm, double snr_db, const std::string &statistic) const;
};

/// Average sum rate per (algorithm, SNR), filters redesigned for every
/// (channel, error) draw.
ExperimentResult run_sum_rate_sweep(const Scenario &scenario, const std::vector<SolverKind> &kinds);

/// Variance of the realized estimated-CSI SINR across error draws, per
/// (channel, stream), averaged over channels and streams.
ExperimentResult run_variance_table(const Scenario &scenario,
                                    const std::vector<SolverKind> &kinds);

/// Closed-form capacity estimate of EM designs against the Monte Carlo mean
/// of the true mutual information, for each error variance in `sigma2_list`.
ExperimentResult run_approx_accuracy(const Scenario &scenario,
                                     const std::vector<double> &sigma2_list);

/// Leakage-fraction traces averaged over trials, at the first SNR of each
/// scenario's grid.
ExperimentResult run_convergence(const std::vector<Scenario> &scenarios,
                                 const std::vector<SolverKind> &kinds);

/// CSV with header scenario,algorithm,snr_db,statistic,value,trials.
void write_rows_csv(std::ostream &out, const std::vector<ResultRow> &rows);
/// CSV with header scenario,algorithm,iteration,leakage_fraction.
void write_trace_csv(std::ostream &out, const std::vector<TraceRow> &rows);
/// CSV with header snr_db,sigma2,theoretical,numerical,pct_error.
void write_approx_csv(std::ostream &out, const std::vector<ApproxRow> &rows);

/// Nine significant digits, the serialization used by every CSV writer.
std::string format_number(double value);

} // namespace ric

#endif // RIC_EXPERIMENTS_HPP
