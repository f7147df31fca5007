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

#ifndef RIC_STATISTICS_APPROX_HPP
#define RIC_STATISTICS_APPROX_HPP

#include <vector>

#include "ric/core_model.hpp"
#include "ric/covariance.hpp"

namespace ric {

/// Conditional means of the SINR numerator and denominator given H.
struct MomentPair {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double ratio = 0.0;
};

/// Which closed form of the linearized lower-bound variance to use.
///
/// kGradient is the first-order assembly grad^T Cov(e) grad, with the
/// own-link term excluded from the interference sums exactly as the partial
/// derivatives dictate. kPrinted keeps the sums over all K links in both the
/// identity shift of `a` and the squared stream-count weight; it is kept for
/// comparison only.
enum class VarianceForm { kGradient, kPrinted };

/// The three quadratic forms the variance and its stationarity condition are
/// built from.
struct LowerBoundForms {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double stream_weight = 0.0; // sum of (D^j)^2 over the links included
  double shift_a = 0.0;       // identity shift inside a, per unit ||u||^2
  double shift_c = 0.0;       // identity shift inside c, per unit ||u||^2
};

struct VarianceBreakdown {
  std::vector<double> grad;    // d SINR_lb / d e^{kj} at e = theta
  double variance = 0.0;       // grad^T Cov(e^k) grad
  double printed_variance = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// Coefficients of the variance stationarity condition
/// alpha S u + beta u = zeta T u, plus Psi = beta / alpha.
struct VmCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double zeta = 0.0;
};

/// mu1 = u^H [T + P s2 I] u and mu2 = u^H [S - T + (P s2 sum D - P s2 + N0) I] u.
MomentPair conditional_moments(const ComplexMatrix &total, const ComplexMatrix &desired,
                               const ComplexVector &u, const NetworkConfig &config);

/// mu1 / mu2.
double approx_mean_sinr(const MomentPair &moments);

LowerBoundForms lower_bound_forms(int k, const ComplexMatrix &total,
                                  const ComplexMatrix &desired, const ComplexVector &u,
                                  const NetworkConfig &config,
                                  VarianceForm form = VarianceForm::kGradient);

/// Gradient of the SINR lower bound with respect to the error norms
/// e^{k1..kK}, evaluated at their means.
std::vector<double> lb_gradient(int k, const ComplexMatrix &total, const ComplexMatrix &desired,
                                const ComplexVector &u, const NetworkConfig &config);

VarianceBreakdown approx_variance(int k, const ComplexMatrix &total,
                                  const ComplexMatrix &desired, const ComplexVector &u,
                                  const NetworkConfig &config);

/// Objective value of `form` at u; kGradient agrees with
/// approx_variance().variance.
double variance_objective(int k, const ComplexMatrix &total, const ComplexMatrix &desired,
                          const ComplexVector &u, const NetworkConfig &config, VarianceForm form);

VmCoefficients vm_coefficients(int k, const ComplexMatrix &total, const ComplexMatrix &desired,
                               const ComplexVector &u, const NetworkConfig &config,
                               VarianceForm form = VarianceForm::kGradient);

enum class OracleKind { kMeanSinr, kMeanNum, kMeanDen, kVarLowerBound };

/// Monte Carlo moment of stream (k, d) over fresh error draws E(k, .) on the
/// fixed estimate: G = H + E.
double mc_oracle(OracleKind kind, int k, int d, const LinkMatrices &estimated,
                 const FilterSet &filters, const NetworkConfig &config, int draws,
                 RngStream &rng);

} // namespace ric

#endif // RIC_STATISTICS_APPROX_HPP
