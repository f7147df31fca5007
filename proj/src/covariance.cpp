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

#include "ric/covariance.hpp"

#include <stdexcept>

namespace ric {

namespace {

void check_user(int k, const FilterSet &filters) {
  if (k < 0 || k >= static_cast<int>(filters.precoders.size()))
    throw std::out_of_range("user index out of range");
}

} // namespace

ComplexMatrix stream_covariance(int k, int d, const LinkMatrices &channels,
                                const FilterSet &filters, double power) {
  check_user(k, filters);
  const ComplexMatrix &v = filters.precoders[static_cast<std::size_t>(k)];
  if (d < 0 || d >= v.cols())
    throw std::out_of_range("stream index out of range");
  const ComplexVector steer = channels(k, k) * v.col(d);
  return power * steer * steer.adjoint();
}

ComplexMatrix total_covariance(int k, const LinkMatrices &channels, const FilterSet &filters,
                               double power) {
  check_user(k, filters);
  const auto rows = channels(k, k).rows();
  ComplexMatrix s = ComplexMatrix::Zero(rows, rows);
  for (int j = 0; j < channels.users(); ++j) {
    const ComplexMatrix hv = channels(k, j) * filters.precoders[static_cast<std::size_t>(j)];
    s.noalias() += hv * hv.adjoint();
  }
  s *= power;
  return 0.5 * (s + s.adjoint());
}

CovariancePair covariance_pair(int k, const LinkMatrices &channels, const FilterSet &filters,
                               double power) {
  CovariancePair out;
  out.total = total_covariance(k, channels, filters, power);
  const auto streams = filters.precoders[static_cast<std::size_t>(k)].cols();
  out.desired.reserve(static_cast<std::size_t>(streams));
  for (Eigen::Index d = 0; d < streams; ++d)
    out.desired.push_back(stream_covariance(k, static_cast<int>(d), channels, filters, power));
  return out;
}

ComplexMatrix estimate_received_autocorrelation(int k, const LinkMatrices &estimated,
                                                const FilterSet &filters,
                                                const NetworkConfig &config, int samples,
                                                RngStream &rng) {
  if (samples < 1)
    throw std::invalid_argument("need at least one sample");
  check_user(k, filters);
  const int n = config.rx_antennas;
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  ComplexVector y(n);
  for (int s = 0; s < samples; ++s) {
    y.setZero();
    for (int j = 0; j < config.users; ++j) {
      const ComplexMatrix &v = filters.precoders[static_cast<std::size_t>(j)];
      ComplexVector symbols(v.cols());
      for (Eigen::Index m = 0; m < v.cols(); ++m)
        symbols(m) = rng.complex_normal(config.power);
      const ComplexMatrix err =
          sample_gaussian_matrix(n, config.tx_antennas, config.sigma2, rng);
      y.noalias() += (estimated(k, j) + err) * (v * symbols);
    }
    for (int i = 0; i < n; ++i)
      y(i) += rng.complex_normal(config.noise);
    acc.noalias() += y * y.adjoint();
  }
  return acc / static_cast<double>(samples);
}

ComplexMatrix expected_received_autocorrelation(int k, const LinkMatrices &estimated,
                                                const FilterSet &filters,
                                                const NetworkConfig &config) {
  const double floor =
      config.power * config.sigma2 * config.total_streams() + config.noise;
  ComplexMatrix out = total_covariance(k, estimated, filters, config.power);
  out.diagonal().array() += floor;
  return out;
}

ErrorNormVector mean_error_norms(const NetworkConfig &config) {
  const double mn = static_cast<double>(config.tx_antennas) * config.rx_antennas;
  ErrorNormVector out;
  out.theta.assign(static_cast<std::size_t>(config.users), mn * config.sigma2);
  out.norms = out.theta;
  out.cov_diag = mn * config.sigma2 * config.sigma2;
  return out;
}

ErrorNormVector error_norm_vector(const ChannelSet &channels, int k, const NetworkConfig &config) {
  if (k < 0 || k >= config.users)
    throw std::out_of_range("receiver index out of range");
  ErrorNormVector out = mean_error_norms(config);
  for (int j = 0; j < config.users; ++j)
    out.norms[static_cast<std::size_t>(j)] = channels.error(k, j).squaredNorm();
  return out;
}

} // namespace ric
