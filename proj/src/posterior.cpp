#include "iago/posterior.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "iago/errors.hpp"

namespace iago {

GpPosterior::GpPosterior(CandidateGrid grid_in, Eigen::VectorXd mean_in,
                         Eigen::MatrixXd covariance_in)
    : grid(std::move(grid_in)),
      mean(std::move(mean_in)),
      covariance(std::move(covariance_in)) {
  const auto m = mean.size();
  if (grid.size() != m || covariance.rows() != m || covariance.cols() != m) {
    throw std::invalid_argument("GpPosterior: inconsistent dimensions");
  }
  if (!mean.allFinite() || !covariance.allFinite()) {
    throw std::invalid_argument("GpPosterior: non-finite entries");
  }
  const double scale = covariance.cwiseAbs().maxCoeff();
  const double asym = (covariance - covariance.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(scale, 1e-300)) {
    throw std::invalid_argument("GpPosterior: covariance not symmetric");
  }
  const double diag_tol = 1e-6 * std::max(covariance.diagonal().mean(), 0.0);
  if (covariance.diagonal().minCoeff() < -diag_tol - 1e-300) {
    throw std::invalid_argument("GpPosterior: negative variance on the diagonal");
  }
}

JitteredCholesky cholesky_with_jitter(const Eigen::MatrixXd& matrix) {
  const double scale = matrix.diagonal().mean();
  double jitter = 1e-10 * scale;
  const double max_jitter = 1e-6 * scale;
  Eigen::MatrixXd work = matrix;
  for (;;) {
    work = matrix;
    work.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(work);
    if (llt.info() == Eigen::Success) {
      return {std::move(llt), jitter};
    }
    if (jitter >= max_jitter || !(jitter > 0.0)) {
      std::ostringstream msg;
      msg << "cholesky_with_jitter: factorization failed at jitter " << jitter;
      throw NumericalError(msg.str(), jitter);
    }
    jitter *= 10.0;
  }
}

GpPosterior compute_posterior(const CovarianceSpec& spec, const NoiseModel& noise,
                              const ObservationSet& obs, const CandidateGrid& grid) {
  spec.validate();
  noise.validate();
  const int m = grid.size();
  Eigen::MatrixXd prior = cov_matrix(spec, grid.points(), grid.points());
  prior = 0.5 * (prior + prior.transpose().eval());

  if (obs.empty()) {
    return GpPosterior(grid, Eigen::VectorXd::Zero(m), std::move(prior));
  }

  const auto n = static_cast<Eigen::Index>(obs.size());
  Eigen::MatrixXd locations(n, grid.dim());
  Eigen::VectorXd values(n);
  Eigen::VectorXd noise_diag(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Observation& o = obs[static_cast<std::size_t>(i)];
    if (o.grid_index < 0 || o.grid_index >= m) {
      throw std::invalid_argument("compute_posterior: observation index out of range");
    }
    locations.row(i) = grid.point(o.grid_index);
    values(i) = o.value;
    noise_diag(i) = o.batch_count.effective_noise_variance(noise.variance);
  }

  Eigen::MatrixXd gram = cov_matrix(spec, locations, locations);
  gram.diagonal() += noise_diag;
  const JitteredCholesky chol = cholesky_with_jitter(gram);

  const Eigen::MatrixXd cross = cov_matrix(spec, grid.points(), locations);  // m x n
  const Eigen::VectorXd alpha = chol.llt.solve(values);
  const Eigen::MatrixXd beta = chol.llt.solve(cross.transpose());  // n x m

  Eigen::VectorXd mean = cross * alpha;
  Eigen::MatrixXd cov = prior - cross * beta;
  cov = 0.5 * (cov + cov.transpose().eval());
  return GpPosterior(grid, std::move(mean), std::move(cov));
}

GpPosterior fantasy_update(const GpPosterior& post, int grid_index, double value,
                           double obs_noise_variance) {
  if (grid_index < 0 || grid_index >= post.size()) {
    throw std::invalid_argument("fantasy_update: index out of range");
  }
  if (!(obs_noise_variance >= 0.0)) {
    throw std::invalid_argument("fantasy_update: noise variance must be >= 0");
  }
  const double var_i = post.covariance(grid_index, grid_index);
  if (var_i <= 0.0) {
    return post;  // known point, zero gain
  }
  const double denom = var_i + obs_noise_variance;
  const Eigen::VectorXd gain = post.covariance.col(grid_index) / denom;

  Eigen::VectorXd mean = post.mean + gain * (value - post.mean(grid_index));
  Eigen::MatrixXd cov =
      post.covariance - gain * post.covariance.row(grid_index);
  cov = 0.5 * (cov + cov.transpose().eval());
  return GpPosterior(post.grid, std::move(mean), std::move(cov));
}

}  // namespace iago
