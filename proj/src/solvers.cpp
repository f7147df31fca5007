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

#include "ric/solvers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ric/covariance.hpp"

namespace ric {

std::string_view to_string(SolverKind kind) {
  switch (kind) {
  case SolverKind::kEM:
    return "EM";
  case SolverKind::kVM:
    return "VM";
  case SolverKind::kMaxSinr:
    return "MaxSINR";
  }
  return "?";
}

SolverKind parse_solver_kind(std::string_view name) {
  std::string lower;
  for (char ch : name)
    if (ch != '-' && ch != '_')
      lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (lower == "em")
    return SolverKind::kEM;
  if (lower == "vm")
    return SolverKind::kVM;
  if (lower == "maxsinr")
    return SolverKind::kMaxSinr;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

ShiftedSystem::ShiftedSystem(const ComplexMatrix &total)
    : eig_(0.5 * (total + total.adjoint())), trace_(total.trace().real()) {
  if (eig_.info() != Eigen::Success)
    throw NumericFailure("eigendecomposition failed");
}

FilterUpdate ShiftedSystem::solve(double shift, const ComplexVector &rhs) const {
  if (rhs.squaredNorm() == 0.0)
    throw DegenerateStream("zero steering vector");
  const auto condition = [](const Eigen::VectorXd &v) {
    const double lo = v.cwiseAbs().minCoeff();
    return lo == 0.0 ? INFINITY : v.cwiseAbs().maxCoeff() / lo;
  };
  FilterUpdate out;
  Eigen::VectorXd shifted = eig_.eigenvalues().array() + shift;
  if (condition(shifted) > 1e12) {
    shifted.array() += 1e-9 * trace_ / static_cast<double>(shifted.size());
    out.regularized = true;
    if (!std::isfinite(condition(shifted)))
      throw NumericFailure("shifted covariance is singular");
  }
  const ComplexVector coeffs = eig_.eigenvectors().adjoint() * rhs;
  const ComplexVector x =
      eig_.eigenvectors() * (coeffs.array() / shifted.array().cast<Complex>()).matrix();
  const double n = x.norm();
  if (!(n > 0.0) || !std::isfinite(n))
    throw NumericFailure("shifted solve produced a zero or non-finite vector");
  out.direction = x / n;
  return out;
}

FilterUpdate shifted_solve(const ComplexMatrix &total, double shift, const ComplexVector &rhs) {
  return ShiftedSystem(total).solve(shift, rhs);
}

double em_omega(const MomentPair &moments, const NetworkConfig &config) {
  if (!(moments.mu1 > 0.0))
    throw DegenerateStream("stream has no desired-signal energy");
  const double ps2 = config.power * config.sigma2;
  return ps2 * config.total_streams() - ps2 * (moments.mu1 + moments.mu2) / moments.mu1 +
         config.noise;
}

FilterUpdate em_update(const ComplexMatrix &total, const ComplexVector &steering, double omega) {
  return shifted_solve(total, omega, steering);
}

std::optional<double> vm_psi(const VmCoefficients &coefficients) {
  if (std::abs(coefficients.alpha) < 1e-12 * (std::abs(coefficients.beta) + 1.0))
    return std::nullopt;
  return coefficients.beta / coefficients.alpha;
}

FilterUpdate vm_update(const ComplexMatrix &total, const ComplexVector &steering, double psi) {
  return shifted_solve(total, psi, steering);
}

FilterUpdate max_sinr_update(const ComplexMatrix &total, const ComplexVector &steering,
                             double noise) {
  return shifted_solve(total, noise, steering);
}

FilterUpdate max_sinr_update_interference_form(const ComplexMatrix &total,
                                               const ComplexMatrix &desired,
                                               const ComplexVector &steering, double noise) {
  ComplexMatrix interference = total - desired;
  interference.diagonal().array() += noise;
  const ComplexVector x = interference.ldlt().solve(steering);
  const double n = x.norm();
  if (!(n > 0.0) || !std::isfinite(n))
    throw NumericFailure("interference-plus-noise solve failed");
  return {x / n, false};
}

double convergence_metric(const LinkMatrices &estimated, const FilterSet &filters,
                          const NetworkConfig &config, const StreamValues *multipliers) {
  const double ps2 = config.power * config.sigma2;
  const double shift_f = ps2 * config.total_streams() - ps2 + config.noise;
  double metric = 0.0;
  for (int k = 0; k < config.users; ++k) {
    const CovariancePair cov = covariance_pair(k, estimated, filters, config.power);
    for (int d = 0; d < config.streams_of(k); ++d) {
      const ComplexVector u = filters.suppressors[static_cast<std::size_t>(k)].col(d);
      const double uu = u.squaredNorm();
      const double t = quadratic_form(cov.desired[static_cast<std::size_t>(d)], u);
      const double q = t + ps2 * uu;
      const double f = quadratic_form(cov.total, u) - t + shift_f * uu;
      const double lambda =
          multipliers ? (*multipliers)[static_cast<std::size_t>(k)][static_cast<std::size_t>(d)]
                      : q;
      metric += q + lambda * (1.0 - f);
    }
  }
  return metric;
}

std::vector<ComplexMatrix> update_receivers(const NetworkConfig &config,
                                            const LinkMatrices &estimated,
                                            const FilterSet &filters, SolverKind kind,
                                            const SolveOptions &options, SolveResult &stats) {
  std::vector<ComplexMatrix> next = filters.suppressors;
  for (int k = 0; k < config.users; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    const CovariancePair cov = covariance_pair(k, estimated, filters, config.power);
    const ShiftedSystem system(cov.total);
    const ComplexMatrix &current = filters.suppressors[uk];
    for (int d = 0; d < config.streams_of(k); ++d) {
      const ComplexVector u = current.col(d);
      const ComplexVector steering = estimated(k, k) * filters.precoders[uk].col(d);
      const ComplexMatrix &desired = cov.desired[static_cast<std::size_t>(d)];
      try {
        std::optional<FilterUpdate> update;
        switch (kind) {
        case SolverKind::kMaxSinr:
          update = system.solve(config.noise, steering);
          break;
        case SolverKind::kEM: {
          const MomentPair mp = conditional_moments(cov.total, desired, u, config);
          update = system.solve(em_omega(mp, config), steering);
          break;
        }
        case SolverKind::kVM: {
          // With exact CSI the variance objective is identically zero.
          if (config.sigma2 == 0.0)
            break;
          const VmCoefficients co =
              vm_coefficients(k, cov.total, desired, u, config, options.variance_form);
          if (const auto psi = vm_psi(co))
            update = system.solve(*psi, steering);
          break;
        }
        }
        if (update) {
          next[uk].col(d) = update->direction;
          stats.regularized_solves += update->regularized ? 1 : 0;
        } else {
          ++stats.retained_columns;
        }
      } catch (const DegenerateStream &) {
        ++stats.retained_columns;
      }
    }
  }
  return next;
}

namespace {

IterationRecord snapshot(int iteration, const NetworkConfig &config, const ChannelSet &channels,
                         const FilterSet &filters, bool metrics) {
  IterationRecord r;
  r.iteration = iteration;
  r.leakage_fraction = leakage_fraction(channels.truth, filters, config);
  if (!metrics)
    return r;
  r.metric = convergence_metric(channels.estimated, filters, config);
  r.sum_rate = sum_rate(stream_sinrs(channels.estimated, filters, config));
  r.approx_mean.resize(static_cast<std::size_t>(config.users));
  for (int k = 0; k < config.users; ++k) {
    const CovariancePair cov = covariance_pair(k, channels.estimated, filters, config.power);
    for (int d = 0; d < config.streams_of(k); ++d) {
      const ComplexVector u = filters.suppressors[static_cast<std::size_t>(k)].col(d);
      r.approx_mean[static_cast<std::size_t>(k)].push_back(approx_mean_sinr(
          conditional_moments(cov.total, cov.desired[static_cast<std::size_t>(d)], u, config)));
    }
  }
  return r;
}

} // namespace

SolveResult alternate_solve(const NetworkConfig &config, const ChannelSet &channels,
                            SolverKind kind, const SolveOptions &options, FilterSet initial) {
  config.validate();
  if (options.iterations < 1)
    throw std::invalid_argument("need at least one iteration");
  const NetworkConfig reverse = config.reciprocal();
  const LinkMatrices reverse_links = reciprocal_links(channels.estimated);

  SolveResult result;
  result.filters = std::move(initial);
  if (options.record_trace)
    result.trace.push_back(snapshot(0, config, channels, result.filters, options.trace_metrics));

  for (int it = 1; it <= options.iterations; ++it) {
    FilterSet &f = result.filters;
    f.suppressors = update_receivers(config, channels.estimated, f, kind, options, result);

    // Reverse link: the new receive filters act as precoders.
    FilterSet rf{f.suppressors, f.precoders};
    f.precoders = update_receivers(reverse, reverse_links, rf, kind, options, result);

    if (options.record_trace) {
      result.trace.push_back(snapshot(it, config, channels, f, options.trace_metrics));
      const auto n = result.trace.size();
      const double prev = result.trace[n - 2].metric;
      if (options.trace_metrics && result.trace[n - 1].metric < prev - 1e-8 * std::abs(prev))
        ++result.metric_decreases;
    }
    if (options.keep_iterates)
      result.iterates.push_back(f);
  }
  return result;
}

SolveResult alternate_solve(const NetworkConfig &config, const ChannelSet &channels,
                            SolverKind kind, const SolveOptions &options, RngStream &rng) {
  return alternate_solve(config, channels, kind, options, init_filters(config, rng));
}

} // namespace ric
