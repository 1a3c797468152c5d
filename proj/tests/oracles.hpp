// Test-only reference implementations. Everything here is deliberately
// written from the defining formulas (dense inverses, explicit sums,
// brute-force integration) and stays independent of the library's
// factorization-based code paths.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "iago/covariance.hpp"
#include "iago/grid.hpp"
#include "iago/observation.hpp"

namespace oracles {

inline double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

/// Composite Simpson on [a, b] with n (even) intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int n) {
  if (n % 2 == 1) ++n;
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) {
    acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

/// Dense application of the Gaussian conditioning identity:
///   mu    = K_xj (K_jj + R)^-1 y
///   Sigma = K_xx - K_xj (K_jj + R)^-1 K_jx
/// computed with an explicit full-pivot inverse.
struct DensePosterior {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

inline DensePosterior dense_conditioning(const iago::CovarianceSpec& spec,
                                         const iago::NoiseModel& noise,
                                         const iago::ObservationSet& obs,
                                         const iago::CandidateGrid& grid) {
  const int m = grid.size();
  const auto n = static_cast<Eigen::Index>(obs.size());
  const Eigen::MatrixXd k_xx = iago::cov_matrix(spec, grid.points(), grid.points());
  if (n == 0) {
    return {Eigen::VectorXd::Zero(m), k_xx};
  }
  Eigen::MatrixXd locs(n, grid.dim());
  Eigen::VectorXd y(n);
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    locs.row(i) = grid.point(obs[static_cast<std::size_t>(i)].grid_index);
    y(i) = obs[static_cast<std::size_t>(i)].value;
    r(i, i) = obs[static_cast<std::size_t>(i)].batch_count.effective_noise_variance(
        noise.variance);
  }
  const Eigen::MatrixXd k_jj = iago::cov_matrix(spec, locs, locs) + r;
  const Eigen::MatrixXd inv = k_jj.fullPivLu().inverse();
  const Eigen::MatrixXd k_xj = iago::cov_matrix(spec, grid.points(), locs);
  DensePosterior out;
  out.mean = k_xj * inv * y;
  out.covariance = k_xx - k_xj * inv * k_xj.transpose();
  return out;
}

/// Dense multivariate Gaussian log-density log N(y; 0, K_jj + R), computed
/// through an explicit inverse and determinant.
inline double dense_log_density(const iago::CovarianceSpec& spec,
                                const iago::NoiseModel& noise,
                                const iago::ObservationSet& obs,
                                const iago::CandidateGrid& grid) {
  const auto n = static_cast<Eigen::Index>(obs.size());
  Eigen::MatrixXd locs(n, grid.dim());
  Eigen::VectorXd y(n);
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    locs.row(i) = grid.point(obs[static_cast<std::size_t>(i)].grid_index);
    y(i) = obs[static_cast<std::size_t>(i)].value;
    r(i, i) = obs[static_cast<std::size_t>(i)].batch_count.effective_noise_variance(
        noise.variance);
  }
  const Eigen::MatrixXd k = iago::cov_matrix(spec, locs, locs) + r;
  const auto lu = k.fullPivLu();
  const double quad = y.dot(lu.inverse() * y);
  return -0.5 * quad - 0.5 * std::log(lu.determinant()) -
         0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
}

/// P(argmin = i) for independent normals N(mu_j, sd_j^2):
/// integral of pdf_i(t) * prod_{j != i} (1 - cdf_j(t)) dt.
inline std::vector<double> independent_minimizer_probs(const Eigen::VectorXd& mu,
                                                       const Eigen::VectorXd& sd) {
  const auto m = mu.size();
  double lo = mu(0) - 10.0 * sd(0);
  double hi = mu(0) + 10.0 * sd(0);
  for (Eigen::Index j = 1; j < m; ++j) {
    lo = std::min(lo, mu(j) - 10.0 * sd(j));
    hi = std::max(hi, mu(j) + 10.0 * sd(j));
  }
  std::vector<double> probs(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto integrand = [&](double t) {
      double p = normal_pdf((t - mu(i)) / sd(i)) / sd(i);
      for (Eigen::Index j = 0; j < m; ++j) {
        if (j != i) p *= 1.0 - normal_cdf((t - mu(j)) / sd(j));
      }
      return p;
    };
    probs[static_cast<std::size_t>(i)] = simpson(integrand, lo, hi, 20000);
  }
  return probs;
}

/// Exact expected post-fantasy entropy for a 2-point grid: integrates the
/// binary entropy of P(argmin = 0 | fantasy value v) against the Gaussian
/// law of v, with no Monte-Carlo anywhere.
inline double two_point_criterion(const Eigen::VectorXd& mu, const Eigen::MatrixXd& cov,
                                  int candidate, double tau2) {
  const int i = candidate;
  const int o = 1 - candidate;
  const double denom = cov(i, i) + tau2;
  const double sv = std::sqrt(denom);
  const auto entropy_given = [&](double v) {
    // Rank-one update of the posterior given fantasy value v at i.
    const Eigen::Vector2d gain = cov.col(i) / denom;
    const Eigen::Vector2d mean = mu + gain * (v - mu(i));
    const Eigen::Matrix2d post = cov - gain * cov.row(i);
    const double diff_var = post(0, 0) + post(1, 1) - 2.0 * post(0, 1);
    double p0;
    if (diff_var <= 1e-300) {
      p0 = mean(0) <= mean(1) ? 1.0 : 0.0;  // ties go to index 0
    } else {
      p0 = normal_cdf((mean(1) - mean(0)) / std::sqrt(diff_var));
    }
    double h = 0.0;
    if (p0 > 0.0) h -= p0 * std::log(p0);
    if (p0 < 1.0) h -= (1.0 - p0) * std::log(1.0 - p0);
    return h;
  };
  (void)o;
  return simpson([&](double v) {
    return entropy_given(v) * normal_pdf((v - mu(i)) / sv) / sv;
  }, mu(i) - 8.0 * sv, mu(i) + 8.0 * sv, 4000);
}

}  // namespace oracles
