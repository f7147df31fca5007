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

#include "ric/types.hpp"

#include <cmath>

namespace ric {

double quadratic_form(const ComplexMatrix &a, const ComplexVector &u) {
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  const Complex value = u.dot(sym * u); // dot() conjugates the left operand
  const double scale = std::max(1.0, std::abs(value));
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw NumericFailure("quadratic form is not finite");
  if (std::abs(value.imag()) > 1e-10 * scale)
    throw NumericFailure("quadratic form has a non-negligible imaginary part");
  return value.real();
}

} // namespace ric
