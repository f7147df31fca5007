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

#include <doctest.h>

#include <array>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace ric;
using testing::Instance;

TEST_SUITE("sinr_metrics") {

TEST_CASE("scalar channel SINR") {
  LinkMatrices g(1, 1, 1);
  g(0, 0) = ComplexMatrix::Ones(1, 1);
  FilterSet f{{ComplexMatrix::Ones(1, 1)}, {ComplexMatrix::Ones(1, 1)}};
  CHECK(sinr(0, 0, g, f, 2.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("orthogonal receive filter gives zero SINR") {
  LinkMatrices g(1, 2, 2);
  g(0, 0) = ComplexMatrix::Identity(2, 2);
  FilterSet f{{ComplexMatrix::Zero(2, 1)}, {ComplexMatrix::Zero(2, 1)}};
  f.precoders[0](0, 0) = 1.0;
  f.suppressors[0](1, 0) = 1.0;
  CHECK(sinr(0, 0, g, f, 5.0, 1.0) == 0.0);
}

TEST_CASE("SINR matches brute force and the covariance form") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Instance in = testing::random_instance(101, seed, NetworkConfig::uniform(4, 3, 3, 1, 10.0, 1.0, 0.1));
    for (int k = 0; k < 4; ++k) {
      const double x = sinr(k, 0, in.channels.truth, in.filters, 10.0, 1.0);
      CHECK(std::abs(x - oracle::sinr(k, 0, in.channels.truth, in.filters, 10.0, 1.0)) < 1e-12 * std::max(1.0, x));
      const CovariancePair cp = covariance_pair(k, in.channels.truth, in.filters, 10.0);
      const ComplexVector u = in.filters.suppressors[static_cast<std::size_t>(k)].col(0);
      const double t = quadratic_form(cp.desired[0], u);
      const double cov_form = t / (quadratic_form(cp.total, u) - t + u.squaredNorm());
      CHECK(std::abs(cov_form - x) < 1e-10 * std::max(1.0, x));
    }
  }
}

TEST_CASE("lower bound reduces to the estimated SINR at zero error") {
  const Instance in = testing::random_instance(103, 0, NetworkConfig::uniform(3, 4, 4, 2, 10.0, 1.0, 0.1));
  ErrorNormVector zero = mean_error_norms(in.config);
  std::fill(zero.norms.begin(), zero.norms.end(), 0.0);
  for (int k = 0; k < 3; ++k)
    for (int d = 0; d < 2; ++d) {
      const double lb = sinr_lower_bound(k, d, in.channels.estimated, in.filters, zero, 10.0, 1.0);
      const double est = sinr(k, d, in.channels.estimated, in.filters, 10.0, 1.0);
      CHECK(lb == doctest::Approx(est).epsilon(1e-12));
    }
}

TEST_CASE("lower bound versus realized SINR over actual error draws") {
  // The bound drops cross terms of indefinite sign, so it is violated on a
  // small fraction of draws; it holds on average.
  const NetworkConfig c = testing::baseline_config(10, 0.1);
  const Instance in = testing::designed_instance(107, 0, c, SolverKind::kEM, 30);
  RngStream rng(107, 1);
  int violations = 0, total = 0;
  double mean_lb = 0, mean_true = 0;
  for (int t = 0; t < 1000; ++t) {
    const ChannelSet ch = resample_truth(c, in.channels.estimated, rng);
    for (int k = 0; k < 4; ++k) {
      const ErrorNormVector e = error_norm_vector(ch, k, c);
      const double lb = sinr_lower_bound(k, 0, ch.estimated, in.filters, e, c.power, c.noise);
      const double truth = sinr(k, 0, ch.truth, in.filters, c.power, c.noise);
      violations += truth < lb - 1e-9 ? 1 : 0;
      ++total;
      mean_lb += lb;
      mean_true += truth;
    }
  }
  WARN_MESSAGE(violations == 0, "lower bound violated on ", violations, " of ", total, " draws");
  CHECK(violations <= total / 20);
  CHECK(mean_lb <= mean_true);
}

TEST_CASE("sum rate") {
  CHECK(sum_rate(std::vector<double>{1.0}) == doctest::Approx(1.0));
  CHECK(sum_rate(std::vector<double>{0.0, 0.0}) == 0.0);
  const StreamValues four{{3.0}, {3.0}, {3.0}, {3.0}};
  CHECK(sum_rate(four) == doctest::Approx(8.0));
}

TEST_CASE("approximate capacity at zero error equals the estimated sum rate") {
  const Instance in = testing::random_instance(109, 0, testing::baseline_config(12, 0.0));
  const double approx = approx_capacity(in.config, in.channels.estimated, in.filters);
  const double direct = sum_rate(stream_sinrs(in.channels.estimated, in.filters, in.config));
  CHECK(approx == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("approximate capacity on a single user: hand expansion") {
  // K = 1, D = 2: stream d sees mu1 = t_d + P s2 and
  // mu2 = (s - t_d) + P s2 (2 - 1) + N0 for unit u.
  for (double s2 : {0.0, 0.05, 0.1, 0.2}) {
    const NetworkConfig c = NetworkConfig::uniform(1, 3, 3, 2, 4.0, 1.0, s2);
    const Instance in = testing::random_instance(113, 0, c);
    double expect = 0;
    for (int d = 0; d < 2; ++d) {
      const ComplexVector u = in.filters.suppressors[0].col(d);
      const ComplexVector h0 = in.channels.estimated(0, 0) * in.filters.precoders[0].col(0);
      const ComplexVector h1 = in.channels.estimated(0, 0) * in.filters.precoders[0].col(1);
      const std::array<double, 2> t{4.0 * std::norm(oracle::inner(u, h0)), 4.0 * std::norm(oracle::inner(u, h1))};
      const double mu1 = t[static_cast<std::size_t>(d)] + 4.0 * s2;
      const double mu2 = t[static_cast<std::size_t>(1 - d)] + 4.0 * s2 + 1.0;
      expect += std::log2(1 + mu1 / mu2);
    }
    CHECK(approx_capacity(c, in.channels.estimated, in.filters) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("leakage fraction limits") {
  // Interference-free network with matched receive filters.
  const NetworkConfig c = NetworkConfig::uniform(2, 2, 2, 1, 1.0, 1.0, 0.0);
  LinkMatrices g(2, 2, 2);
  RngStream rng(127, 0);
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j)
      g(k, j) = k == j ? sample_gaussian_matrix(2, 2, 1.0, rng) : ComplexMatrix::Zero(2, 2);
  FilterSet f = init_filters(c, rng);
  for (int k = 0; k < 2; ++k) {
    ComplexVector h = g(k, k) * f.precoders[static_cast<std::size_t>(k)].col(0);
    f.suppressors[static_cast<std::size_t>(k)].col(0) = h / h.norm();
  }
  CHECK(leakage_fraction(g, f, c) == 0.0);

  // Receive filter orthogonal to the desired signal, noise negligible.
  NetworkConfig quiet = NetworkConfig::uniform(2, 2, 2, 1, 1.0, 1e-12, 0.0);
  for (int k = 0; k < 2; ++k)
    g(k, 1 - k) = sample_gaussian_matrix(2, 2, 1.0, rng);
  for (int k = 0; k < 2; ++k) {
    const ComplexVector h = g(k, k) * f.precoders[static_cast<std::size_t>(k)].col(0);
    ComplexVector u(2);
    u << -std::conj(h(1)), std::conj(h(0));
    f.suppressors[static_cast<std::size_t>(k)].col(0) = u / u.norm();
  }
  CHECK(leakage_fraction(g, f, quiet) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("evaluate_metrics fills every field") {
  const Instance in = testing::random_instance(131, 0, testing::baseline_config(10, 0.1));
  const MetricRecord m = evaluate_metrics(in.channels, in.filters, in.config);
  CHECK(m.sinr_true.size() == 4);
  CHECK(m.sum_rate == doctest::Approx(sum_rate(m.sinr_est)));
  CHECK(m.leakage_fraction >= 0.0);
  CHECK(m.leakage_fraction <= 4.0);
}

} // TEST_SUITE
