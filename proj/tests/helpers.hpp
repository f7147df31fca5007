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

#ifndef RIC_TESTS_HELPERS_HPP
#define RIC_TESTS_HELPERS_HPP

#include "ric/solvers.hpp"

namespace testing {

struct Instance {
  ric::NetworkConfig config;
  ric::ChannelSet channels;
  ric::FilterSet filters;
};

inline Instance random_instance(std::uint64_t seed, std::uint64_t index,
                                const ric::NetworkConfig &config) {
  ric::RngStream rng(seed, index);
  Instance in{config, ric::sample_network(config, rng), {}};
  in.filters = ric::init_filters(config, rng);
  return in;
}

// Random instance whose filters were designed by `kind` on the estimate.
inline Instance designed_instance(std::uint64_t seed, std::uint64_t index,
                                  const ric::NetworkConfig &config, ric::SolverKind kind,
                                  int iterations = 50) {
  Instance in = random_instance(seed, index, config);
  ric::SolveOptions opts;
  opts.iterations = iterations;
  opts.record_trace = false;
  in.filters = ric::alternate_solve(config, in.channels, kind, opts, in.filters).filters;
  return in;
}

// (3x3,1)^4 at the given SNR with N0 = 1.
inline ric::NetworkConfig baseline_config(double snr_db, double sigma2) {
  return ric::NetworkConfig::uniform(4, 3, 3, 1, std::pow(10.0, snr_db / 10.0), 1.0, sigma2);
}

} // namespace testing

#endif // RIC_TESTS_HELPERS_HPP
