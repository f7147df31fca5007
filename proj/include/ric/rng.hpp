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

#ifndef RIC_RNG_HPP
#define RIC_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

#include "ric/types.hpp"

namespace ric {

/// Deterministic random stream keyed by (master seed, stream index).
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Gaussian variates are produced with an in-house Box-Muller
/// transform instead of std::normal_distribution, whose algorithm is
/// implementation-defined.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t index() const { return index_; }

  /// Stream index derived from a tuple of integers (trial coordinates, role
  /// tags). Distinct tuples map to distinct, well-mixed indices.
  static std::uint64_t key(std::initializer_list<std::uint64_t> parts);

  /// Child stream sharing the master seed.
  RngStream child(std::initializer_list<std::uint64_t> parts) const;

  /// Uniform in the open interval (0, 1).
  double uniform();
  /// Standard normal N(0, 1).
  double normal();
  /// Circularly symmetric CN(0, variance).
  Complex complex_normal(double variance);

private:
  std::uint64_t seed_;
  std::uint64_t index_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

} // namespace ric

#endif // RIC_RNG_HPP
