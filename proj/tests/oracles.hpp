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

// Independent reference computations for the unit tests. Everything here is
// written with explicit scalar loops or a different Eigen solver than the
// library uses, so agreement is meaningful.

#ifndef RIC_TESTS_ORACLES_HPP
#define RIC_TESTS_ORACLES_HPP

#include <Eigen/Eigenvalues>

#include "ric/core_model.hpp"

namespace oracle {

using ric::Complex;
using ric::ComplexMatrix;
using ric::ComplexVector;

inline Complex inner(const ComplexVector &a, const ComplexVector &b) {
  Complex s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    s += std::conj(a(i)) * b(i);
  return s;
}

inline ComplexVector mat_vec(const ComplexMatrix &m, const ComplexVector &x) {
  ComplexVector y = ComplexVector::Zero(m.rows());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      y(r) += m(r, c) * x(c);
  return y;
}

inline ComplexMatrix outer(const ComplexVector &a) {
  ComplexMatrix m(a.size(), a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < a.size(); ++j)
      m(i, j) = a(i) * std::conj(a(j));
  return m;
}

// S^k by explicit accumulation.
inline ComplexMatrix total_covariance(int k, const ric::LinkMatrices &h,
                                      const ric::FilterSet &f, double power) {
  const Eigen::Index n = h(k, 0).rows();
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < h.users(); ++j) {
    const auto &v = f.precoders[static_cast<std::size_t>(j)];
    for (Eigen::Index m = 0; m < v.cols(); ++m)
      s += power * outer(mat_vec(h(k, j), v.col(m)));
  }
  return s;
}

// SINR expanding every interference term.
inline double sinr(int k, int d, const ric::LinkMatrices &g, const ric::FilterSet &f, double p,
                   double n0) {
  const ComplexVector u = f.suppressors[static_cast<std::size_t>(k)].col(d);
  double signal = 0, interference = 0;
  for (int j = 0; j < g.users(); ++j) {
    const auto &v = f.precoders[static_cast<std::size_t>(j)];
    for (Eigen::Index m = 0; m < v.cols(); ++m) {
      const double x = p * std::norm(inner(u, mat_vec(g(k, j), v.col(m))));
      if (j == k && m == d)
        signal = x;
      else
        interference += x;
    }
  }
  return signal / (interference + n0 * std::real(inner(u, u)));
}

// Largest eigenvalue and eigenvector of the pencil Q x = lambda F x.
inline std::pair<double, ComplexVector> top_generalized(const ComplexMatrix &q,
                                                        const ComplexMatrix &f) {
  Eigen::GeneralizedSelfAdjointEigenSolver<ComplexMatrix> ges(q, f);
  const Eigen::Index last = q.rows() - 1;
  return {ges.eigenvalues()(last), ges.eigenvectors().col(last)};
}

inline double phase_distance(const ComplexVector &a, const ComplexVector &b) {
  return 1.0 - std::abs(inner(a, b)) / (a.norm() * b.norm());
}

inline ComplexVector random_unit(Eigen::Index n, ric::RngStream &rng) {
  ComplexVector u(n);
  for (Eigen::Index i = 0; i < n; ++i)
    u(i) = rng.complex_normal(1.0);
  return u / u.norm();
}

} // namespace oracle

#endif // RIC_TESTS_ORACLES_HPP
