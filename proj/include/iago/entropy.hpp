#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "iago/posterior.hpp"

namespace iago {

/// Row-major so that one sample path (a row) is contiguous.
using PathMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// S conditional sample paths of the process restricted to the grid,
/// one per row.
struct PathSet {
  PathMatrix values;  // S x m
  std::uint64_t seed = 0;

  int path_count() const { return static_cast<int>(values.rows()); }
  int grid_size() const { return static_cast<int>(values.cols()); }
};

/// Empirical distribution of the minimizer position over the grid.
/// When built from paths the integer counts are kept alongside, so the
/// count total is exact.
struct MinimizerDistribution {
  Eigen::VectorXd probabilities;
  std::vector<std::int64_t> counts;  // empty unless built from counts
  std::int64_t total = 0;

  /// Validates: entries >= 0, sum within 1e-12 of 1.
  explicit MinimizerDistribution(Eigen::VectorXd probs);
  static MinimizerDistribution from_counts(std::vector<std::int64_t> counts);

  int size() const { return static_cast<int>(probabilities.size()); }
};

/// S i.i.d. draws from N(mean, covariance) via symmetric (eigenvalue)
/// factorization; eigenvalues within the jitter tolerance of zero are
/// clamped, anything more negative raises NumericalError. Deterministic
/// per seed.
PathSet sample_paths(const GpPosterior& post, int path_count, std::uint64_t seed);

/// Fraction of paths whose minimum is attained at each index; argmin ties
/// within a path go to the smallest index.
MinimizerDistribution minimizer_histogram(const PathSet& paths);

/// -sum p log p in nats, with 0 log 0 = 0. Always in [0, log m].
double shannon_entropy(const MinimizerDistribution& dist);

/// Plug-in Monte-Carlo estimate of the posterior entropy of the minimizer.
double entropy_of_posterior(const GpPosterior& post, int path_count,
                            std::uint64_t seed);

}  // namespace iago
