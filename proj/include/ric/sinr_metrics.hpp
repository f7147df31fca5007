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

#ifndef RIC_SINR_METRICS_HPP
#define RIC_SINR_METRICS_HPP

#include <span>
#include <vector>

#include "ric/core_model.hpp"
#include "ric/covariance.hpp"

namespace ric {

/// Per-stream values indexed [receiver][stream].
using StreamValues = std::vector<std::vector<double>>;

struct MetricRecord {
  StreamValues sinr_true; // evaluated on G
  StreamValues sinr_est;  // evaluated on H
  StreamValues rate;      // log2(1 + sinr_est)
  double sum_rate = 0.0;
  double leakage_fraction = 0.0;
};

/// SINR of stream d at receiver k over the given per-link channels (pass G
/// for the true SINR, H for the estimated one).
double sinr(int k, int d, const LinkMatrices &channels, const FilterSet &filters, double power,
            double noise);

/// All streams at once.
StreamValues stream_sinrs(const LinkMatrices &channels, const FilterSet &filters,
                          const NetworkConfig &config);

/// Lower bound on the SINR in terms of error norms e[j] = ||E(k,j)||^2.
/// Returned unclamped, so it can be negative.
double sinr_lower_bound(int k, int d, const LinkMatrices &estimated, const FilterSet &filters,
                        const ErrorNormVector &errors, double power, double noise);

/// sum log2(1 + sinr).
double sum_rate(std::span<const double> sinrs);
double sum_rate(const StreamValues &sinrs);

/// Sum over streams of log2(1 + mu1/mu2) from the conditional moments.
double approx_capacity(const NetworkConfig &config, const LinkMatrices &estimated,
                       const FilterSet &filters);

/// Per-stream share of filter output energy due to interference,
/// u^H (B - b b^H) u / u^H (B + N0 I) u on the true channels, summed over
/// all streams.
double leakage_fraction(const LinkMatrices &truth, const FilterSet &filters,
                        const NetworkConfig &config);

MetricRecord evaluate_metrics(const ChannelSet &channels, const FilterSet &filters,
                              const NetworkConfig &config);

} // namespace ric

#endif // RIC_SINR_METRICS_HPP
