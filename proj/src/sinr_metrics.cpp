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

#include "ric/sinr_metrics.hpp"

#include <cmath>
#include <numeric>

#include "ric/statistics_approx.hpp"

namespace ric {

double sinr(int k, int d, const LinkMatrices &channels, const FilterSet &filters, double power,
            double noise) {
  const auto uk = static_cast<std::size_t>(k);
  const ComplexVector u = filters.suppressors.at(uk).col(d);
  const ComplexVector desired_v = filters.precoders.at(uk).col(d);
  const double desired = power * std::norm(u.dot(channels(k, k) * desired_v));
  double received = 0.0;
  for (int j = 0; j < channels.users(); ++j) {
    const ComplexMatrix &v = filters.precoders[static_cast<std::size_t>(j)];
    const ComplexVector proj = v.adjoint() * (channels(k, j).adjoint() * u);
    received += power * proj.squaredNorm();
  }
  const double den = received - desired + noise * u.squaredNorm();
  const double value = desired / den;
  if (!std::isfinite(value))
    throw NumericFailure("SINR is not finite");
  return value;
}

StreamValues stream_sinrs(const LinkMatrices &channels, const FilterSet &filters,
                          const NetworkConfig &config) {
  StreamValues out(static_cast<std::size_t>(config.users));
  for (int k = 0; k < config.users; ++k)
    for (int d = 0; d < config.streams_of(k); ++d)
      out[static_cast<std::size_t>(k)].push_back(
          sinr(k, d, channels, filters, config.power, config.noise));
  return out;
}

double sinr_lower_bound(int k, int d, const LinkMatrices &estimated, const FilterSet &filters,
                        const ErrorNormVector &errors, double power, double noise) {
  const auto uk = static_cast<std::size_t>(k);
  const ComplexVector u = filters.suppressors.at(uk).col(d);
  const double uu = u.squaredNorm();
  const double desired = power * std::norm(u.dot(estimated(k, k) * filters.precoders[uk].col(d)));
  double received = 0.0;
  double weighted_error = 0.0;
  for (int j = 0; j < estimated.users(); ++j) {
    const auto uj = static_cast<std::size_t>(j);
    const ComplexMatrix &v = filters.precoders[uj];
    received += power * (v.adjoint() * (estimated(k, j).adjoint() * u)).squaredNorm();
    weighted_error += errors.norms.at(uj) * static_cast<double>(v.cols());
  }
  const double own_error = power * errors.norms.at(uk) * uu;
  const double num = desired - own_error;
  const double den = received + power * uu * weighted_error - desired - own_error + noise * uu;
  if (den == 0.0 || !std::isfinite(den))
    throw NumericFailure("lower-bound SINR denominator vanished");
  return num / den;
}

double sum_rate(std::span<const double> sinrs) {
  double total = 0.0;
  for (double s : sinrs)
    total += std::log2(1.0 + s);
  return total;
}

double sum_rate(const StreamValues &sinrs) {
  double total = 0.0;
  for (const auto &row : sinrs)
    total += sum_rate(std::span<const double>(row));
  return total;
}

double approx_capacity(const NetworkConfig &config, const LinkMatrices &estimated,
                       const FilterSet &filters) {
  double total = 0.0;
  for (int k = 0; k < config.users; ++k) {
    const CovariancePair cov = covariance_pair(k, estimated, filters, config.power);
    for (int d = 0; d < config.streams_of(k); ++d) {
      const ComplexVector u = filters.suppressors[static_cast<std::size_t>(k)].col(d);
      const MomentPair mp = conditional_moments(cov.total,
                                                cov.desired[static_cast<std::size_t>(d)], u, config);
      total += std::log2(1.0 + approx_mean_sinr(mp));
    }
  }
  return total;
}

double leakage_fraction(const LinkMatrices &truth, const FilterSet &filters,
                        const NetworkConfig &config) {
  double total = 0.0;
  for (int k = 0; k < config.users; ++k) {
    const CovariancePair cov = covariance_pair(k, truth, filters, config.power);
    for (int d = 0; d < config.streams_of(k); ++d) {
      const ComplexVector u = filters.suppressors[static_cast<std::size_t>(k)].col(d);
      const double all = quadratic_form(cov.total, u);
      const double wanted = quadratic_form(cov.desired[static_cast<std::size_t>(d)], u);
      total += (all - wanted) / (all + config.noise * u.squaredNorm());
    }
  }
  return total;
}

MetricRecord evaluate_metrics(const ChannelSet &channels, const FilterSet &filters,
                              const NetworkConfig &config) {
  MetricRecord r;
  r.sinr_true = stream_sinrs(channels.truth, filters, config);
  r.sinr_est = stream_sinrs(channels.estimated, filters, config);
  r.rate.resize(r.sinr_est.size());
  for (std::size_t k = 0; k < r.sinr_est.size(); ++k)
    for (double s : r.sinr_est[k])
      r.rate[k].push_back(std::log2(1.0 + s));
  r.sum_rate = sum_rate(r.sinr_est);
  r.leakage_fraction = leakage_fraction(channels.truth, filters, config);
  return r;
}

} // namespace ric
