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

#ifndef RIC_CORE_MODEL_HPP
#define RIC_CORE_MODEL_HPP

#include <utility>
#include <vector>

#include "ric/rng.hpp"
#include "ric/types.hpp"

namespace ric {

/// Scenario parameters of the K-user M x N MIMO interference channel.
///
/// Transmitters carry M antennas and receivers N. `power` is the per-stream
/// symbol power P, `noise` the receiver noise power N0, and `sigma2` the
/// per-entry variance of the channel-estimation error.
struct NetworkConfig {
  int users = 1;
  int tx_antennas = 1;
  int rx_antennas = 1;
  std::vector<int> streams{1};
  double power = 1.0;
  double noise = 1.0;
  double sigma2 = 0.0;

  /// Throws std::invalid_argument on any violated constraint.
  void validate() const;

  int total_streams() const;
  int streams_of(int user) const { return streams.at(static_cast<std::size_t>(user)); }

  /// Same network with transmit and receive roles swapped (M <-> N).
  NetworkConfig reciprocal() const;

  /// Convenience for the symmetric (M x N, d)^K family.
  static NetworkConfig uniform(int users, int tx, int rx, int d, double power,
                               double noise, double sigma2);
};

/// K x K grid of per-link matrices, indexed (receiver k, transmitter j).
class LinkMatrices {
public:
  LinkMatrices() = default;
  LinkMatrices(int users, int rows, int cols);

  int users() const { return users_; }
  ComplexMatrix &operator()(int k, int j) { return data_[index(k, j)]; }
  const ComplexMatrix &operator()(int k, int j) const { return data_[index(k, j)]; }

private:
  std::size_t index(int k, int j) const;

  int users_ = 0;
  std::vector<ComplexMatrix> data_;
};

/// Estimated, error and true channels for every (receiver, transmitter) pair.
/// truth(k, j) == estimated(k, j) + error(k, j) holds exactly.
struct ChannelSet {
  LinkMatrices estimated;
  LinkMatrices error;
  LinkMatrices truth;
};

/// Precoders V[j] (M x D^j) and interference-suppression matrices U[k]
/// (N x D^k), all columns unit norm.
struct FilterSet {
  std::vector<ComplexMatrix> precoders;
  std::vector<ComplexMatrix> suppressors;
};

/// How the estimate and the error relate to the true channel.
enum class ErrorConvention {
  /// Draw G ~ CN(0,1), E ~ CN(0, sigma2); H = G - E.
  kTruthFirst,
  /// Draw H ~ CN(0,1), E ~ CN(0, sigma2) independent of H; G = H + E.
  kEstimateFirst,
};

/// rows x cols matrix with i.i.d. CN(0, variance) entries.
ComplexMatrix sample_gaussian_matrix(int rows, int cols, double variance, RngStream &rng);

/// Full channel draw for `config`.
ChannelSet sample_network(const NetworkConfig &config, RngStream &rng,
                          ErrorConvention convention = ErrorConvention::kTruthFirst);

/// Fresh error realization for a fixed true channel: keeps G, redraws E and
/// sets H = G - E.
ChannelSet resample_errors(const NetworkConfig &config, const LinkMatrices &truth,
                           RngStream &rng);

/// Fresh error realization for a fixed estimate: keeps H, redraws E and sets
/// G = H + E. This is the conditional model behind the moment approximations.
ChannelSet resample_truth(const NetworkConfig &config, const LinkMatrices &estimated,
                          RngStream &rng);

/// Random unit-norm starting filters.
FilterSet init_filters(const NetworkConfig &config, RngStream &rng);

/// Rescales every column to unit Euclidean norm. Zero columns throw.
void normalize_columns(ComplexMatrix &m);

/// Per-link conjugate transpose with swapped indices: out(j, k) = in(k, j)^H.
LinkMatrices reciprocal_links(const LinkMatrices &links);

/// Channels and filters of the reverse (reciprocal) network. Applying it
/// twice returns the original pair.
std::pair<ChannelSet, FilterSet> reciprocal_view(const ChannelSet &channels,
                                                 const FilterSet &filters);

} // namespace ric

#endif // RIC_CORE_MODEL_HPP
