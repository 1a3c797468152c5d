#pragma once

#include <Eigen/Dense>
#include <optional>

#include "iago/covariance.hpp"
#include "iago/grid.hpp"
#include "iago/observation.hpp"
#include "iago/rng.hpp"

namespace iago {

/// Log-density of the observed values under the zero-mean prior plus noise,
/// each observation i carrying noise variance sigma^2 / k_i.
double log_marginal_likelihood(const CovarianceSpec& spec, const NoiseModel& noise,
                               const ObservationSet& obs, const CandidateGrid& grid);

/// Box constraints for the hyperparameter search, in original units.
struct FitBounds {
  double variance_lo = 1e-3;
  double variance_hi = 1e3;
  Eigen::VectorXd lengthscale_lo;  // one per dimension
  Eigen::VectorXd lengthscale_hi;

  static FitBounds defaults(int dim, double span);
  void validate(int dim) const;
};

/// Maximizes the marginal log-likelihood over (process_variance, lengthscales)
/// with multi-start Nelder-Mead in log-parameter space, clamped to the box.
/// The noise variance is fixed, never re-estimated. Deterministic given rng.
/// `warm_start` adds one extra start at the given spec.
///
/// Requires at least 2 observations at >= 2 distinct locations.
CovarianceSpec fit_hyperparameters(const ObservationSet& obs, const CandidateGrid& grid,
                                   const NoiseModel& noise, CovFamily family,
                                   const FitBounds& bounds, int restarts, Rng& rng,
                                   const std::optional<CovarianceSpec>& warm_start = {});

}  // namespace iago
