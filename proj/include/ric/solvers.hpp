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

#ifndef RIC_SOLVERS_HPP
#define RIC_SOLVERS_HPP

#include <optional>
#include <string_view>
#include <vector>

#include "ric/core_model.hpp"
#include "ric/sinr_metrics.hpp"
#include "ric/statistics_approx.hpp"

namespace ric {

enum class SolverKind { kEM, kVM, kMaxSinr };

std::string_view to_string(SolverKind kind);
/// Accepts "EM", "VM", "MaxSINR" (case-insensitive; "max-sinr" too).
SolverKind parse_solver_kind(std::string_view name);

/// Result of one column update.
struct FilterUpdate {
  ComplexVector direction;
  bool regularized = false;
};

/// Eigendecomposition of a receiver's all-streams covariance S, reused for
/// every shifted solve (S + shift I) x = rhs at that receiver.
///
/// If the shifted matrix has condition number above 1e12 the shift is
/// increased by 1e-9 trace(S) / N and `regularized` is set. Throws
/// NumericFailure if the system is still singular.
class ShiftedSystem {
public:
  explicit ShiftedSystem(const ComplexMatrix &total);

  /// normalize((S + shift I)^{-1} rhs). Zero rhs throws DegenerateStream.
  FilterUpdate solve(double shift, const ComplexVector &rhs) const;

  const Eigen::VectorXd &eigenvalues() const { return eig_.eigenvalues(); }

private:
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig_;
  double trace_ = 0.0;
};

FilterUpdate shifted_solve(const ComplexMatrix &total, double shift, const ComplexVector &rhs);

/// Omega = P s2 sum D - P s2 (mu1 + mu2) / mu1 + N0. Throws DegenerateStream
/// when mu1 is zero.
double em_omega(const MomentPair &moments, const NetworkConfig &config);

/// normalize((S + Omega I)^{-1} steering).
FilterUpdate em_update(const ComplexMatrix &total, const ComplexVector &steering, double omega);

/// Psi = beta / alpha, or nothing when |alpha| < 1e-12 (|beta| + 1).
std::optional<double> vm_psi(const VmCoefficients &coefficients);

/// normalize((S + Psi I)^{-1} steering).
FilterUpdate vm_update(const ComplexMatrix &total, const ComplexVector &steering, double psi);

/// Max-SINR receive column normalize((B + N0 I)^{-1} steering), B the
/// all-streams covariance.
FilterUpdate max_sinr_update(const ComplexMatrix &total, const ComplexVector &steering,
                             double noise);

/// Interference-plus-noise form normalize((B - b b^H + N0 I)^{-1} b), with
/// b b^H = desired. Collinear with max_sinr_update by the Searle identity.
FilterUpdate max_sinr_update_interference_form(const ComplexMatrix &total,
                                               const ComplexMatrix &desired,
                                               const ComplexVector &steering, double noise);

/// Sum over streams of u^H Q u + lambda (1 - u^H F u), with
/// Q = T + P s2 I and F = S - T + (P s2 sum D - P s2 + N0) I.
/// `multipliers`, when given, fixes lambda per stream; otherwise
/// lambda = u^H Q u at the current u.
double convergence_metric(const LinkMatrices &estimated, const FilterSet &filters,
                          const NetworkConfig &config,
                          const StreamValues *multipliers = nullptr);

struct IterationRecord {
  int iteration = 0;
  double leakage_fraction = 0.0;
  double metric = 0.0;
  double sum_rate = 0.0;
  StreamValues approx_mean;
};

using IterationTrace = std::vector<IterationRecord>;

struct SolveOptions {
  int iterations = 100;
  bool record_trace = true;
  bool trace_metrics = true; // false records the leakage fraction only
  bool keep_iterates = false;
  VarianceForm variance_form = VarianceForm::kGradient;
};

struct SolveResult {
  FilterSet filters;
  IterationTrace trace;
  std::vector<FilterSet> iterates; // state after each iteration, when kept
  int regularized_solves = 0;
  int retained_columns = 0; // degenerate or VM-skipped columns
  int metric_decreases = 0; // iterations where the convergence metric dropped
};

/// One half-iteration: recomputes every receive column of the network
/// described by (config, estimated, filters). Columns of the same receiver
/// see the pre-update values of each other.
std::vector<ComplexMatrix> update_receivers(const NetworkConfig &config,
                                            const LinkMatrices &estimated,
                                            const FilterSet &filters, SolverKind kind,
                                            const SolveOptions &options, SolveResult &stats);

/// Alternating original/reciprocal design starting from `initial`.
/// Filters are designed from the estimated channels; the true channels only
/// enter the leakage trace.
SolveResult alternate_solve(const NetworkConfig &config, const ChannelSet &channels,
                            SolverKind kind, const SolveOptions &options, FilterSet initial);

/// Same, starting from init_filters(config, rng).
SolveResult alternate_solve(const NetworkConfig &config, const ChannelSet &channels,
                            SolverKind kind, const SolveOptions &options, RngStream &rng);

} // namespace ric

#endif // RIC_SOLVERS_HPP
