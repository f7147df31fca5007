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

#include "ric/selftest.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "ric/solvers.hpp"

namespace ric {

int SelftestReport::passed() const {
  int n = 0;
  for (const auto &c : checks)
    n += c.passed ? 1 : 0;
  return n;
}

int SelftestReport::failed() const { return static_cast<int>(checks.size()) - passed(); }

namespace {

std::string describe(const char *what, double value, double limit) {
  std::ostringstream s;
  s << what << " = " << value << " (limit " << limit << ")";
  return s.str();
}

SelftestCheck bounded(const std::string &name, const char *what, double value, double limit) {
  return {name, std::isfinite(value) && value <= limit, describe(what, value, limit)};
}

// Each check runs in isolation; an exception fails that check only.
SelftestCheck guarded(const std::string &name, const std::function<SelftestCheck()> &body) {
  try {
    return body();
  } catch (const std::exception &ex) {
    return {name, false, std::string("threw: ") + ex.what()};
  }
}

struct Fixture {
  NetworkConfig config;
  ChannelSet channels;
  FilterSet filters;
};

Fixture make_fixture(std::uint64_t seed, std::uint64_t tag, double sigma2) {
  Fixture f;
  f.config = NetworkConfig::uniform(3, 4, 4, 2, 10.0, 1.0, sigma2);
  RngStream rng(seed, RngStream::key({99, tag}));
  f.channels = sample_network(f.config, rng);
  f.filters = init_filters(f.config, rng);
  return f;
}

SelftestCheck em_maxsinr_equivalence(std::uint64_t seed) {
  Fixture f = make_fixture(seed, 1, 0.0);
  SolveOptions opts;
  opts.iterations = 15;
  opts.record_trace = false;
  const SolveResult em = alternate_solve(f.config, f.channels, SolverKind::kEM, opts, f.filters);
  const SolveResult ms =
      alternate_solve(f.config, f.channels, SolverKind::kMaxSinr, opts, f.filters);
  double worst = 0.0;
  for (std::size_t k = 0; k < em.filters.suppressors.size(); ++k) {
    const auto &a = em.filters.suppressors[k];
    const auto &b = ms.filters.suppressors[k];
    for (Eigen::Index d = 0; d < a.cols(); ++d)
      worst = std::max(worst, 1.0 - std::abs(a.col(d).dot(b.col(d))));
  }
  return bounded("em_equals_maxsinr_at_zero_error", "max 1-|<u_em,u_ms>|", worst, 1e-9);
}

SelftestCheck lower_bound_gradient(std::uint64_t seed) {
  Fixture f = make_fixture(seed, 2, 0.05);
  const int k = 1;
  const CovariancePair cov = covariance_pair(k, f.channels.estimated, f.filters, f.config.power);
  const ComplexVector u = f.filters.suppressors[1].col(0);
  const auto grad = lb_gradient(k, cov.total, cov.desired[0], u, f.config);
  const ErrorNormVector base = mean_error_norms(f.config);
  double worst = 0.0;
  for (int j = 0; j < f.config.users; ++j) {
    const double h = 1e-5 * base.theta[static_cast<std::size_t>(j)];
    ErrorNormVector up = base, down = base;
    up.norms[static_cast<std::size_t>(j)] += h;
    down.norms[static_cast<std::size_t>(j)] -= h;
    const double fd = (sinr_lower_bound(k, 0, f.channels.estimated, f.filters, up,
                                        f.config.power, f.config.noise) -
                       sinr_lower_bound(k, 0, f.channels.estimated, f.filters, down,
                                        f.config.power, f.config.noise)) /
                      (2 * h);
    const double g = grad[static_cast<std::size_t>(j)];
    worst = std::max(worst, std::abs(fd - g) / std::max(1e-12, std::abs(g)));
  }
  return bounded("lower_bound_gradient_fd", "max relative error", worst, 1e-5);
}

SelftestCheck variance_gradient(std::uint64_t seed) {
  Fixture f = make_fixture(seed, 3, 0.05);
  const NetworkConfig &c = f.config;
  const int k = 2;
  const CovariancePair cov = covariance_pair(k, f.channels.estimated, f.filters, c.power);
  const ComplexMatrix &s = cov.total;
  const ComplexMatrix &t = cov.desired[1];
  const ComplexVector u = f.filters.suppressors[2].col(1);

  const VmCoefficients co = vm_coefficients(k, s, t, u, c);
  const double scale = c.tx_antennas * c.rx_antennas * c.power * c.power * c.sigma2 *
                       c.sigma2 / std::pow(co.c, 5);
  const ComplexVector analytic = scale * (co.alpha * (s * u) + co.beta * u - co.zeta * (t * u));

  // Conjugate Wirtinger derivative 0.5 (d/dx + i d/dy) by central differences.
  ComplexVector numeric(u.size());
  const double h = 1e-6;
  const auto f_at = [&](const ComplexVector &x) {
    return variance_objective(k, s, t, x, c, VarianceForm::kGradient);
  };
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    ComplexVector p = u, m = u;
    p(i) += h;
    m(i) -= h;
    const double dx = (f_at(p) - f_at(m)) / (2 * h);
    p = u;
    m = u;
    p(i) += Complex(0, h);
    m(i) -= Complex(0, h);
    const double dy = (f_at(p) - f_at(m)) / (2 * h);
    numeric(i) = 0.5 * Complex(dx, dy);
  }
  const double err = (numeric - analytic).norm() / std::max(1e-300, analytic.norm());
  return bounded("variance_stationarity_gradient_fd", "relative error", err, 1e-5);
}

SelftestCheck searle_identity(std::uint64_t seed) {
  Fixture f = make_fixture(seed, 4, 0.0);
  double worst = 0.0;
  for (int k = 0; k < f.config.users; ++k) {
    const CovariancePair cov = covariance_pair(k, f.channels.estimated, f.filters, f.config.power);
    for (int d = 0; d < f.config.streams_of(k); ++d) {
      const ComplexVector h = f.channels.estimated(k, k) *
                              f.filters.precoders[static_cast<std::size_t>(k)].col(d) *
                              std::sqrt(f.config.power);
      const auto a = max_sinr_update(cov.total, h, f.config.noise);
      const auto b = max_sinr_update_interference_form(cov.total, cov.desired[static_cast<std::size_t>(d)],
                                                       h, f.config.noise);
      worst = std::max(worst, 1.0 - std::abs(a.direction.dot(b.direction)));
    }
  }
  return bounded("maxsinr_searle_identity", "max 1-|<u1,u2>|", worst, 1e-10);
}

SelftestCheck autocorrelation_identity(std::uint64_t seed) {
  Fixture f = make_fixture(seed, 5, 0.1);
  const int k = 0;
  const ComplexMatrix closed =
      expected_received_autocorrelation(k, f.channels.estimated, f.filters, f.config);
  // Moment split: mu1 + mu2 must equal u^H R u exactly.
  const CovariancePair cov = covariance_pair(k, f.channels.estimated, f.filters, f.config.power);
  const ComplexVector u = f.filters.suppressors[0].col(0);
  const MomentPair m = conditional_moments(cov.total, cov.desired[0], u, f.config);
  const double split = std::abs(m.mu1 + m.mu2 - quadratic_form(closed, u)) / (m.mu1 + m.mu2);

  RngStream rng(seed, RngStream::key({99, 50}));
  const ComplexMatrix sampled =
      estimate_received_autocorrelation(k, f.channels.estimated, f.filters, f.config, 20000, rng);
  const double mc = (sampled - closed).norm() / closed.norm();

  SelftestCheck out = bounded("received_autocorrelation_identity", "Monte Carlo relative error",
                              mc, 0.05);
  out.passed = out.passed && split < 1e-12;
  out.detail += "; moment split error = " + std::to_string(split);
  return out;
}

SelftestCheck chi_square_moments(std::uint64_t seed) {
  const NetworkConfig config = NetworkConfig::uniform(2, 3, 4, 1, 1.0, 1.0, 0.2);
  RngStream rng(seed, RngStream::key({99, 6}));
  const int draws = 20000;
  double mean = 0.0, m2 = 0.0;
  for (int t = 0; t < draws; ++t) {
    const double x = sample_gaussian_matrix(4, 3, config.sigma2, rng).squaredNorm();
    const double delta = x - mean;
    mean += delta / (t + 1);
    m2 += delta * (x - mean);
  }
  const ErrorNormVector ref = mean_error_norms(config);
  const double mean_err = std::abs(mean / ref.theta[0] - 1.0);
  const double var_err = std::abs(m2 / (draws - 1) / ref.cov_diag - 1.0);
  SelftestCheck out = bounded("error_norm_chi_square_moments", "relative mean error", mean_err, 0.02);
  out.passed = out.passed && var_err < 0.06;
  out.detail += "; relative variance error = " + std::to_string(var_err);
  return out;
}

} // namespace

SelftestReport run_selftest(std::uint64_t seed) {
  SelftestReport report;
  const std::vector<std::pair<std::string, std::function<SelftestCheck(std::uint64_t)>>> suite = {
      {"em_equals_maxsinr_at_zero_error", em_maxsinr_equivalence},
      {"lower_bound_gradient_fd", lower_bound_gradient},
      {"variance_stationarity_gradient_fd", variance_gradient},
      {"maxsinr_searle_identity", searle_identity},
      {"received_autocorrelation_identity", autocorrelation_identity},
      {"error_norm_chi_square_moments", chi_square_moments},
  };
  for (const auto &[name, fn] : suite)
    report.checks.push_back(guarded(name, [&, f = fn] { return f(seed); }));
  return report;
}

void print_report(std::ostream &out, const SelftestReport &report) {
  for (const auto &c : report.checks)
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  out << report.passed() << " passed, " << report.failed() << " failed\n";
}

} // namespace ric
