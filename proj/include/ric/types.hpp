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

#ifndef RIC_TYPES_HPP
#define RIC_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ric {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Raised when a computation produces a non-finite or otherwise unusable
// number (singular shifted system, vanishing denominator, ...).
class NumericFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Raised when a stream carries no desired-signal energy, so its filter
// direction is undefined.
class DegenerateStream : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Real value of the Hermitian quadratic form u^H A u.
//
// A is symmetrized before evaluation. Imaginary residue below 1e-10 (relative
// to the magnitude of the form) is discarded; anything larger means A was not
// Hermitian and throws NumericFailure.
double quadratic_form(const ComplexMatrix &a, const ComplexVector &u);

// Conjugate transpose, materialized.
inline ComplexMatrix hermitian(const ComplexMatrix &a) { return a.adjoint(); }

} // namespace ric

#endif // RIC_TYPES_HPP
