#pragma once

#include <Eigen/Dense>

#include "iago/covariance.hpp"
#include "iago/grid.hpp"
#include "iago/observation.hpp"

namespace iago {

/// Gaussian posterior of the process restricted to the candidate grid.
/// Immutable after construction; prior mean is the zero vector.
struct GpPosterior {
  CandidateGrid grid;
  Eigen::VectorXd mean;        // length m
  Eigen::MatrixXd covariance;  // m x m, symmetric PSD up to jitter tolerance

  GpPosterior(CandidateGrid grid_in, Eigen::VectorXd mean_in,
              Eigen::MatrixXd covariance_in);

  int size() const { return static_cast<int>(mean.size()); }
};

/// Cholesky with the escalating-jitter policy: add 1e-10 x mean(diag),
/// escalate x10 up to 1e-6 x mean(diag), then fail with NumericalError
/// carrying the last jitter tried. Returns the factorization and the jitter
/// that succeeded.
struct JitteredCholesky {
  Eigen::LLT<Eigen::MatrixXd> llt;
  double jitter = 0.0;
};
JitteredCholesky cholesky_with_jitter(const Eigen::MatrixXd& matrix);

/// Exact Gaussian conditioning of the zero-mean prior on the observations,
/// observation i carrying noise variance sigma^2 / k_i. With no observations
/// returns the prior itself.
GpPosterior compute_posterior(const CovarianceSpec& spec, const NoiseModel& noise,
                              const ObservationSet& obs, const CandidateGrid& grid);

/// Rank-one Gaussian update with one extra observation at grid_index carrying
/// the given noise variance. A zero-variance candidate (covariance[i][i] = 0)
/// yields no information: the posterior is returned unchanged.
GpPosterior fantasy_update(const GpPosterior& post, int grid_index, double value,
                           double obs_noise_variance);

}  // namespace iago
