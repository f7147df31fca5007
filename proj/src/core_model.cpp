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

#include "ric/core_model.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ric {

void NetworkConfig::validate() const {
  if (users < 1)
    throw std::invalid_argument("K must be at least 1");
  if (tx_antennas < 1 || rx_antennas < 1)
    throw std::invalid_argument("antenna counts must be at least 1");
  if (static_cast<int>(streams.size()) != users)
    throw std::invalid_argument("need one stream count per user, got " +
                                std::to_string(streams.size()) + " for K=" +
                                std::to_string(users));
  const int cap = std::min(tx_antennas, rx_antennas);
  for (int d : streams)
    if (d < 1 || d > cap)
      throw std::invalid_argument("stream count " + std::to_string(d) +
                                  " outside [1, min(M,N)=" + std::to_string(cap) + "]");
  if (!(power > 0.0))
    throw std::invalid_argument("power must be positive");
  if (!(noise > 0.0))
    throw std::invalid_argument("noise power must be positive");
  if (!(sigma2 >= 0.0))
    throw std::invalid_argument("error variance must be non-negative");
}

int NetworkConfig::total_streams() const { return std::accumulate(streams.begin(), streams.end(), 0); }

NetworkConfig NetworkConfig::reciprocal() const {
  NetworkConfig r = *this;
  std::swap(r.tx_antennas, r.rx_antennas);
  return r;
}

NetworkConfig NetworkConfig::uniform(int users, int tx, int rx, int d, double power,
                                     double noise, double sigma2) {
  NetworkConfig c;
  c.users = users;
  c.tx_antennas = tx;
  c.rx_antennas = rx;
  c.streams.assign(static_cast<std::size_t>(std::max(users, 0)), d);
  c.power = power;
  c.noise = noise;
  c.sigma2 = sigma2;
  return c;
}

LinkMatrices::LinkMatrices(int users, int rows, int cols)
    : users_(users),
      data_(static_cast<std::size_t>(users) * static_cast<std::size_t>(users),
            ComplexMatrix::Zero(rows, cols)) {}

std::size_t LinkMatrices::index(int k, int j) const {
  if (k < 0 || j < 0 || k >= users_ || j >= users_)
    throw std::out_of_range("link index out of range");
  return static_cast<std::size_t>(k) * static_cast<std::size_t>(users_) +
         static_cast<std::size_t>(j);
}

ComplexMatrix sample_gaussian_matrix(int rows, int cols, double variance, RngStream &rng) {
  if (!(variance >= 0.0))
    throw std::invalid_argument("variance must be non-negative");
  ComplexMatrix m(rows, cols);
  if (variance == 0.0) {
    m.setZero();
    return m;
  }
  // Row-major fill order so the draw sequence does not depend on storage order.
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m(r, c) = rng.complex_normal(variance);
  return m;
}

namespace {

LinkMatrices sample_links(const NetworkConfig &config, double variance, RngStream &rng) {
  LinkMatrices out(config.users, config.rx_antennas, config.tx_antennas);
  for (int k = 0; k < config.users; ++k)
    for (int j = 0; j < config.users; ++j)
      out(k, j) = sample_gaussian_matrix(config.rx_antennas, config.tx_antennas, variance, rng);
  return out;
}

} // namespace

ChannelSet sample_network(const NetworkConfig &config, RngStream &rng,
                          ErrorConvention convention) {
  config.validate();
  if (convention == ErrorConvention::kTruthFirst) {
    LinkMatrices truth = sample_links(config, 1.0, rng);
    return resample_errors(config, truth, rng);
  }
  LinkMatrices estimated = sample_links(config, 1.0, rng);
  return resample_truth(config, estimated, rng);
}

ChannelSet resample_errors(const NetworkConfig &config, const LinkMatrices &truth,
                           RngStream &rng) {
  ChannelSet out;
  out.truth = truth;
  out.error = sample_links(config, config.sigma2, rng);
  out.estimated = LinkMatrices(config.users, config.rx_antennas, config.tx_antennas);
  for (int k = 0; k < config.users; ++k)
    for (int j = 0; j < config.users; ++j)
      out.estimated(k, j) = truth(k, j) - out.error(k, j);
  return out;
}

ChannelSet resample_truth(const NetworkConfig &config, const LinkMatrices &estimated,
                          RngStream &rng) {
  ChannelSet out;
  out.estimated = estimated;
  out.error = sample_links(config, config.sigma2, rng);
  out.truth = LinkMatrices(config.users, config.rx_antennas, config.tx_antennas);
  for (int k = 0; k < config.users; ++k)
    for (int j = 0; j < config.users; ++j)
      out.truth(k, j) = estimated(k, j) + out.error(k, j);
  return out;
}

void normalize_columns(ComplexMatrix &m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const double n = m.col(c).norm();
    if (!(n > 0.0) || !std::isfinite(n))
      throw DegenerateStream("cannot normalize a zero or non-finite column");
    m.col(c) /= n;
  }
}

FilterSet init_filters(const NetworkConfig &config, RngStream &rng) {
  config.validate();
  FilterSet f;
  f.precoders.reserve(static_cast<std::size_t>(config.users));
  f.suppressors.reserve(static_cast<std::size_t>(config.users));
  for (int j = 0; j < config.users; ++j) {
    ComplexMatrix v = sample_gaussian_matrix(config.tx_antennas, config.streams_of(j), 1.0, rng);
    normalize_columns(v);
    f.precoders.push_back(std::move(v));
  }
  for (int k = 0; k < config.users; ++k) {
    ComplexMatrix u = sample_gaussian_matrix(config.rx_antennas, config.streams_of(k), 1.0, rng);
    normalize_columns(u);
    f.suppressors.push_back(std::move(u));
  }
  return f;
}

LinkMatrices reciprocal_links(const LinkMatrices &links) {
  const int users = links.users();
  if (users == 0)
    return {};
  const auto &sample = links(0, 0);
  LinkMatrices out(users, static_cast<int>(sample.cols()), static_cast<int>(sample.rows()));
  for (int k = 0; k < users; ++k)
    for (int j = 0; j < users; ++j)
      out(j, k) = links(k, j).adjoint();
  return out;
}

std::pair<ChannelSet, FilterSet> reciprocal_view(const ChannelSet &channels,
                                                 const FilterSet &filters) {
  ChannelSet rc{reciprocal_links(channels.estimated), reciprocal_links(channels.error),
                reciprocal_links(channels.truth)};
  FilterSet rf{filters.suppressors, filters.precoders};
  return {std::move(rc), std::move(rf)};
}

} // namespace ric
