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

#ifndef RIC_COVARIANCE_HPP
#define RIC_COVARIANCE_HPP

#include <vector>

#include "ric/core_model.hpp"

namespace ric {

/// All-streams covariance S^k and per-stream desired covariances T_d^k seen
/// by one receiver.
struct CovariancePair {
  ComplexMatrix total;
  std::vector<ComplexMatrix> desired;
};

/// Squared Frobenius norms of the errors on every link into receiver k,
/// together with their chi-square moments.
struct ErrorNormVector {
  std::vector<double> norms;   // e[j] = ||E(k, j)||_F^2
  std::vector<double> theta;   // mean of each e[j], M N sigma^2
  double cov_diag = 0.0;       // variance of each e[j], M N sigma^4
};

/// T_d^k = P H(k,k) v_d v_d^H H(k,k)^H.
ComplexMatrix stream_covariance(int k, int d, const LinkMatrices &channels,
                                const FilterSet &filters, double power);

/// S^k = P sum_j sum_m H(k,j) v_m^j v_m^jH H(k,j)^H.
ComplexMatrix total_covariance(int k, const LinkMatrices &channels, const FilterSet &filters,
                               double power);

CovariancePair covariance_pair(int k, const LinkMatrices &channels, const FilterSet &filters,
                               double power);

/// Sample average of Y Y^H at receiver k for the fixed estimate `estimated`,
/// drawing symbols s ~ CN(0, P I), fresh errors E ~ CN(0, sigma2) and noise
/// Z ~ CN(0, N0 I) per sample. Converges to S^k + (P sigma2 sum D + N0) I.
ComplexMatrix estimate_received_autocorrelation(int k, const LinkMatrices &estimated,
                                                const FilterSet &filters,
                                                const NetworkConfig &config, int samples,
                                                RngStream &rng);

/// Closed-form limit of estimate_received_autocorrelation.
ComplexMatrix expected_received_autocorrelation(int k, const LinkMatrices &estimated,
                                                const FilterSet &filters,
                                                const NetworkConfig &config);

ErrorNormVector error_norm_vector(const ChannelSet &channels, int k, const NetworkConfig &config);

/// theta and cov_diag for a config, with norms left at the mean.
ErrorNormVector mean_error_norms(const NetworkConfig &config);

} // namespace ric

#endif // RIC_COVARIANCE_HPP
