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

#include "oracles.hpp"
#include "ric/core_model.hpp"

using namespace ric;

TEST_SUITE("core_model") {

TEST_CASE("config validation rejects infeasible stream counts") {
  NetworkConfig c = NetworkConfig::uniform(4, 3, 3, 1, 1.0, 1.0, 0.1);
  CHECK_NOTHROW(c.validate());
  c.streams[2] = 4;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = NetworkConfig::uniform(4, 3, 3, 1, 1.0, 1.0, -0.1);
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = NetworkConfig::uniform(4, 3, 3, 1, 1.0, 0.0, 0.1);
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = NetworkConfig::uniform(4, 3, 3, 1, 1.0, 1.0, 0.1);
  c.streams.pop_back();
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("zero variance gives a zero matrix") {
  RngStream rng(7, 0);
  const ComplexMatrix m = sample_gaussian_matrix(2, 2, 0.0, rng);
  CHECK(m.isZero(0.0));
  CHECK_THROWS_AS(sample_gaussian_matrix(2, 2, -1.0, rng), std::invalid_argument);
}

TEST_CASE("entry variance and chi-square mean of Gaussian matrices") {
  RngStream rng(11, 1);
  const int draws = 100000;
  double entry2 = 0, frob = 0;
  for (int t = 0; t < draws; ++t) {
    const ComplexMatrix a = sample_gaussian_matrix(3, 3, 1.0, rng);
    entry2 += std::norm(a(1, 2));
  }
  for (int t = 0; t < draws; ++t)
    frob += sample_gaussian_matrix(3, 3, 0.1, rng).squaredNorm();
  CHECK(entry2 / draws >= 0.98);
  CHECK(entry2 / draws <= 1.02);
  CHECK(frob / draws >= 0.88);
  CHECK(frob / draws <= 0.92);
}

TEST_CASE("sample_network keeps G = H + E") {
  // Exact when the estimate is drawn first; one rounding when G is drawn first.
  const NetworkConfig c = NetworkConfig::uniform(3, 4, 3, 1, 1.0, 1.0, 0.2);
  for (auto conv : {ErrorConvention::kTruthFirst, ErrorConvention::kEstimateFirst}) {
    RngStream rng(3, 2);
    const ChannelSet ch = sample_network(c, rng, conv);
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j) {
        CHECK(ch.truth(k, j).rows() == 3);
        CHECK(ch.truth(k, j).cols() == 4);
        CHECK((ch.estimated(k, j) + ch.error(k, j) - ch.truth(k, j)).norm() <=
              (conv == ErrorConvention::kEstimateFirst ? 0.0 : 1e-15 * ch.truth(k, j).norm()));
      }
  }
}

TEST_CASE("perfect CSI gives zero error") {
  const NetworkConfig c = NetworkConfig::uniform(2, 2, 2, 1, 1.0, 1.0, 0.0);
  RngStream rng(5, 0);
  const ChannelSet ch = sample_network(c, rng);
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j) {
      CHECK(ch.error(k, j).isZero(0.0));
      CHECK(ch.estimated(k, j) == ch.truth(k, j));
    }
}

TEST_CASE("estimate variance is 1 + sigma2 when the truth is drawn first") {
  RngStream rng(13, 0);
  double acc = 0;
  const int draws = 100000;
  for (int t = 0; t < draws; ++t) {
    // Only one link is needed; drawing the whole network would be wasteful.
    const ComplexMatrix g = sample_gaussian_matrix(3, 3, 1.0, rng);
    LinkMatrices truth(1, 3, 3);
    truth(0, 0) = g;
    const NetworkConfig one = NetworkConfig::uniform(1, 3, 3, 1, 1.0, 1.0, 0.1);
    const ChannelSet ch = resample_errors(one, truth, rng);
    acc += std::norm(ch.estimated(0, 0)(0, 0));
  }
  CHECK(acc / draws >= 1.05);
  CHECK(acc / draws <= 1.15);
}

TEST_CASE("resampling errors keeps G and changes E") {
  const NetworkConfig c = NetworkConfig::uniform(2, 3, 3, 1, 1.0, 1.0, 0.1);
  RngStream rng(17, 0);
  const ChannelSet first = sample_network(c, rng);
  RngStream r1(17, 1), r2(17, 2);
  const ChannelSet a = resample_errors(c, first.truth, r1);
  const ChannelSet b = resample_errors(c, first.truth, r2);
  CHECK(a.truth(0, 1) == b.truth(0, 1));
  CHECK((a.error(0, 1) - b.error(0, 1)).norm() > 0.0);
  const ChannelSet e = resample_truth(c, first.estimated, r1);
  CHECK(e.estimated(1, 0) == first.estimated(1, 0));
}

TEST_CASE("init_filters: unit columns, shapes, determinism") {
  const NetworkConfig c = NetworkConfig::uniform(3, 4, 4, 2, 1.0, 1.0, 0.1);
  RngStream r1(21, 4), r2(21, 4);
  const FilterSet a = init_filters(c, r1);
  const FilterSet b = init_filters(c, r2);
  for (int k = 0; k < 3; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    CHECK(a.precoders[uk].rows() == 4);
    CHECK(a.precoders[uk].cols() == 2);
    CHECK(a.suppressors[uk].rows() == 4);
    CHECK(a.suppressors[uk].cols() == 2);
    for (Eigen::Index d = 0; d < 2; ++d) {
      CHECK(std::abs(a.precoders[uk].col(d).norm() - 1.0) < 1e-12);
      CHECK(std::abs(a.suppressors[uk].col(d).norm() - 1.0) < 1e-12);
    }
    CHECK(a.precoders[uk] == b.precoders[uk]);
    CHECK(a.suppressors[uk] == b.suppressors[uk]);
  }
}

TEST_CASE("normalize_columns rejects a zero column") {
  ComplexMatrix m = ComplexMatrix::Ones(3, 2);
  m.col(1).setZero();
  CHECK_THROWS_AS(normalize_columns(m), DegenerateStream);
}

TEST_CASE("reciprocal view is an involution and swaps roles") {
  const NetworkConfig c = NetworkConfig::uniform(4, 3, 3, 1, 1.0, 1.0, 0.1);
  RngStream rng(23, 0);
  const ChannelSet ch = sample_network(c, rng);
  const FilterSet f = init_filters(c, rng);
  const auto [rch, rf] = reciprocal_view(ch, f);
  for (int k = 0; k < 4; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    CHECK(rf.precoders[uk] == f.suppressors[uk]);
    for (int j = 0; j < 4; ++j)
      CHECK(rch.truth(j, k) == ch.truth(k, j).adjoint());
  }
  const auto [back, fback] = reciprocal_view(rch, rf);
  for (int k = 0; k < 4; ++k)
    for (int j = 0; j < 4; ++j) {
      CHECK(back.truth(k, j) == ch.truth(k, j));
      CHECK(back.estimated(k, j) == ch.estimated(k, j));
      CHECK(back.error(k, j) == ch.error(k, j));
    }
  CHECK(fback.precoders[2] == f.precoders[2]);
  CHECK(fback.suppressors[1] == f.suppressors[1]);
}

TEST_CASE("reciprocal of a 1-user N x M channel is its adjoint") {
  LinkMatrices g(1, 2, 3);
  RngStream rng(29, 0);
  g(0, 0) = sample_gaussian_matrix(2, 3, 1.0, rng);
  const LinkMatrices r = reciprocal_links(g);
  CHECK(r(0, 0).rows() == 3);
  CHECK(r(0, 0).cols() == 2);
  CHECK(r(0, 0) == g(0, 0).adjoint());
}

TEST_CASE("rng streams are reproducible and distinct") {
  RngStream a(1, RngStream::key({1, 2})), b(1, RngStream::key({1, 2})), c(1, RngStream::key({2, 1}));
  const double x = a.normal();
  CHECK(x == b.normal());
  CHECK(x != c.normal());
  CHECK(RngStream::key({1, 2}) != RngStream::key({1, 2, 0}));
}

} // TEST_SUITE
