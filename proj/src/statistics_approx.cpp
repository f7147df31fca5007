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

#include "ric/statistics_approx.hpp"

#include <cmath>
#include <stdexcept>

#include "ric/sinr_metrics.hpp"

namespace ric {

namespace {

double mnp_sigma2(const NetworkConfig &c) {
  return c.power * c.tx_antennas * c.rx_antennas * c.sigma2;
}

} // namespace

MomentPair conditional_moments(const ComplexMatrix &total, const ComplexMatrix &desired,
                               const ComplexVector &u, const NetworkConfig &config) {
  const double ps2 = config.power * config.sigma2;
  const double uu = u.squaredNorm();
  const double s = quadratic_form(total, u);
  const double t = quadratic_form(desired, u);
  MomentPair m;
  m.mu1 = t + ps2 * uu;
  m.mu2 = s - t + (ps2 * config.total_streams() - ps2 + config.noise) * uu;
  if (!(m.mu2 > 0.0))
    throw NumericFailure("conditional denominator mean is not positive");
  m.ratio = m.mu1 / m.mu2;
  return m;
}

double approx_mean_sinr(const MomentPair &moments) {
  if (!(moments.mu2 > 0.0))
    throw NumericFailure("conditional denominator mean is not positive");
  return moments.mu1 / moments.mu2;
}

LowerBoundForms lower_bound_forms(int k, const ComplexMatrix &total,
                                  const ComplexMatrix &desired, const ComplexVector &u,
                                  const NetworkConfig &config, VarianceForm form) {
  const double kappa = mnp_sigma2(config);
  const double uu = u.squaredNorm();
  const double s = quadratic_form(total, u);
  const double t = quadratic_form(desired, u);
  const int dk = config.streams_of(k);
  const int sum_d = config.total_streams();

  double weight = 0.0;
  for (int j = 0; j < config.users; ++j)
    if (form == VarianceForm::kPrinted || j != k)
      weight += static_cast<double>(config.streams_of(j)) * config.streams_of(j);
  const int shift_streams = form == VarianceForm::kPrinted ? sum_d : sum_d - dk;

  LowerBoundForms f;
  f.stream_weight = weight;
  f.shift_a = kappa * shift_streams + config.noise;
  f.shift_c = kappa * sum_d - kappa + config.noise;
  f.a = s + (dk - 2) * t + f.shift_a * uu;
  f.b = t - kappa * uu;
  f.c = s - t + f.shift_c * uu;
  return f;
}

std::vector<double> lb_gradient(int k, const ComplexMatrix &total, const ComplexMatrix &desired,
                                const ComplexVector &u, const NetworkConfig &config) {
  const LowerBoundForms f = lower_bound_forms(k, total, desired, u, config);
  if (f.c == 0.0 || !std::isfinite(f.c))
    throw NumericFailure("lower-bound denominator vanished");
  const double uu = u.squaredNorm();
  const double c2 = f.c * f.c;
  std::vector<double> grad(static_cast<std::size_t>(config.users));
  for (int j = 0; j < config.users; ++j) {
    grad[static_cast<std::size_t>(j)] =
        j == k ? -config.power * uu * f.a / c2
               : -config.power * config.streams_of(j) * uu * f.b / c2;
  }
  return grad;
}

VarianceBreakdown approx_variance(int k, const ComplexMatrix &total,
                                  const ComplexMatrix &desired, const ComplexVector &u,
                                  const NetworkConfig &config) {
  VarianceBreakdown out;
  out.grad = lb_gradient(k, total, desired, u, config);
  const ErrorNormVector moments = mean_error_norms(config);

  const auto n = static_cast<Eigen::Index>(out.grad.size());
  const Eigen::Map<const Eigen::VectorXd> g(out.grad.data(), n);
  const Eigen::MatrixXd cov = Eigen::VectorXd::Constant(n, moments.cov_diag).asDiagonal();
  out.variance = g.dot(cov * g);

  const LowerBoundForms f = lower_bound_forms(k, total, desired, u, config);
  out.a = f.a;
  out.b = f.b;
  out.c = f.c;
  out.printed_variance = variance_objective(k, total, desired, u, config, VarianceForm::kPrinted);
  return out;
}

double variance_objective(int k, const ComplexMatrix &total, const ComplexMatrix &desired,
                          const ComplexVector &u, const NetworkConfig &config,
                          VarianceForm form) {
  const LowerBoundForms f = lower_bound_forms(k, total, desired, u, config, form);
  const double uu = u.squaredNorm();
  const double scale = config.tx_antennas * config.rx_antennas * config.power * config.power *
                       config.sigma2 * config.sigma2 * uu * uu;
  const double c2 = f.c * f.c;
  return scale * (f.a * f.a + f.stream_weight * f.b * f.b) / (c2 * c2);
}

VmCoefficients vm_coefficients(int k, const ComplexMatrix &total, const ComplexMatrix &desired,
                               const ComplexVector &u, const NetworkConfig &config,
                               VarianceForm form) {
  const LowerBoundForms f = lower_bound_forms(k, total, desired, u, config, form);
  const double kappa = mnp_sigma2(config);
  const double w = f.stream_weight;
  const double a = f.a, b = f.b, c = f.c;
  const double energy = a * a + w * b * b;
  VmCoefficients out;
  out.a = a;
  out.b = b;
  out.c = c;
  out.alpha = 2.0 * a * c - 4.0 * energy;
  out.beta = 2.0 * a * a * c + 2.0 * w * b * b * c + 2.0 * f.shift_a * a * c -
             2.0 * w * kappa * b * c - 4.0 * energy * f.shift_c;
  out.zeta = -(2.0 * (config.streams_of(k) - 2) * a * c + 2.0 * w * b * c + 4.0 * energy);
  return out;
}

namespace {

struct NumDen {
  double num;
  double den;
};

NumDen realized_num_den(int k, int d, const std::vector<ComplexMatrix> &links,
                        const FilterSet &filters, const NetworkConfig &config) {
  const auto uk = static_cast<std::size_t>(k);
  const ComplexVector u = filters.suppressors[uk].col(d);
  const double num =
      config.power * std::norm(u.dot(links[uk] * filters.precoders[uk].col(d)));
  double received = 0.0;
  for (std::size_t j = 0; j < links.size(); ++j)
    received += config.power * (filters.precoders[j].adjoint() * (links[j].adjoint() * u)).squaredNorm();
  return {num, received - num + config.noise * u.squaredNorm()};
}

} // namespace

double mc_oracle(OracleKind kind, int k, int d, const LinkMatrices &estimated,
                 const FilterSet &filters, const NetworkConfig &config, int draws,
                 RngStream &rng) {
  if (draws < 1)
    throw std::invalid_argument("need at least one draw");
  const int n = config.rx_antennas;
  const int m = config.tx_antennas;
  std::vector<ComplexMatrix> links(static_cast<std::size_t>(config.users));
  ErrorNormVector errors = mean_error_norms(config);

  // Welford running moments.
  double mean = 0.0;
  double m2 = 0.0;
  for (int t = 0; t < draws; ++t) {
    for (int j = 0; j < config.users; ++j) {
      const ComplexMatrix e = sample_gaussian_matrix(n, m, config.sigma2, rng);
      links[static_cast<std::size_t>(j)] = estimated(k, j) + e;
      errors.norms[static_cast<std::size_t>(j)] = e.squaredNorm();
    }
    double x = 0.0;
    if (kind == OracleKind::kVarLowerBound) {
      x = sinr_lower_bound(k, d, estimated, filters, errors, config.power, config.noise);
    } else {
      const NumDen nd = realized_num_den(k, d, links, filters, config);
      x = kind == OracleKind::kMeanNum ? nd.num
          : kind == OracleKind::kMeanDen ? nd.den
                                         : nd.num / nd.den;
    }
    const double delta = x - mean;
    mean += delta / (t + 1);
    m2 += delta * (x - mean);
  }
  if (kind != OracleKind::kVarLowerBound)
    return mean;
  return draws < 2 ? 0.0 : m2 / (draws - 1);
}

} // namespace ric
