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

#ifndef RIC_SELFTEST_HPP
#define RIC_SELFTEST_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace ric {

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestReport {
  std::vector<SelftestCheck> checks;

  int passed() const;
  int failed() const;
  bool ok() const { return failed() == 0; }
};

/// Invariant suite on small random networks: EM and Max-SINR coincide at
/// sigma2 = 0, analytic gradients match finite differences, the two Max-SINR
/// forms are collinear, the received autocorrelation matches its closed form,
/// and error norms follow their chi-square moments.
SelftestReport run_selftest(std::uint64_t seed = 1);

void print_report(std::ostream &out, const SelftestReport &report);

} // namespace ric

#endif // RIC_SELFTEST_HPP
