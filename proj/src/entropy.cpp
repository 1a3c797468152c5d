#include "iago/entropy.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "iago/errors.hpp"
#include "iago/rng.hpp"

namespace iago {

MinimizerDistribution::MinimizerDistribution(Eigen::VectorXd probs)
    : probabilities(std::move(probs)) {
  if (probabilities.size() < 1) {
    throw std::invalid_argument("MinimizerDistribution: empty");
  }
  if (probabilities.minCoeff() < 0.0) {
    throw std::invalid_argument("MinimizerDistribution: negative entry");
  }
  if (std::abs(probabilities.sum() - 1.0) > 1e-12) {
    throw std::invalid_argument("MinimizerDistribution: entries must sum to 1");
  }
}

MinimizerDistribution MinimizerDistribution::from_counts(
    std::vector<std::int64_t> counts_in) {
  const std::int64_t total =
      std::accumulate(counts_in.begin(), counts_in.end(), std::int64_t{0});
  if (total <= 0) {
    throw std::invalid_argument("MinimizerDistribution: empty counts");
  }
  Eigen::VectorXd probs(static_cast<Eigen::Index>(counts_in.size()));
  for (std::size_t i = 0; i < counts_in.size(); ++i) {
    probs(static_cast<Eigen::Index>(i)) =
        static_cast<double>(counts_in[i]) / static_cast<double>(total);
  }
  MinimizerDistribution dist(std::move(probs));
  dist.counts = std::move(counts_in);
  dist.total = total;
  return dist;
}

PathSet sample_paths(const GpPosterior& post, int path_count, std::uint64_t seed) {
  if (path_count < 1) {
    throw std::invalid_argument("sample_paths: need at least one path");
  }
  const int m = post.size();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(post.covariance);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("sample_paths: eigen decomposition failed");
  }
  Eigen::VectorXd eigenvalues = solver.eigenvalues();
  const double tol =
      1e-6 * std::max(post.covariance.diagonal().mean(), 0.0) + 1e-300;
  if (eigenvalues.minCoeff() < -tol) {
    std::ostringstream msg;
    msg << "sample_paths: covariance indefinite (min eigenvalue "
        << eigenvalues.minCoeff() << ")";
    throw NumericalError(msg.str());
  }
  eigenvalues = eigenvalues.cwiseMax(0.0);
  const Eigen::MatrixXd factor =
      solver.eigenvectors() * eigenvalues.cwiseSqrt().asDiagonal();

  Rng rng(seed);
  PathMatrix z(path_count, m);
  for (int p = 0; p < path_count; ++p) {
    for (int j = 0; j < m; ++j) {
      z(p, j) = rng.normal();
    }
  }

  PathSet paths;
  paths.seed = seed;
  paths.values = z * factor.transpose();
  paths.values.rowwise() += post.mean.transpose();
  return paths;
}

MinimizerDistribution minimizer_histogram(const PathSet& paths) {
  const int s = paths.path_count();
  const int m = paths.grid_size();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(m), 0);
  for (int p = 0; p < s; ++p) {
    const double* row = paths.values.data() + static_cast<std::ptrdiff_t>(p) * m;
    int arg = 0;
    double best = row[0];
    for (int j = 1; j < m; ++j) {
      if (row[j] < best) {  // strict: ties keep the smallest index
        best = row[j];
        arg = j;
      }
    }
    ++counts[static_cast<std::size_t>(arg)];
  }
  return MinimizerDistribution::from_counts(std::move(counts));
}

double shannon_entropy(const MinimizerDistribution& dist) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < dist.probabilities.size(); ++i) {
    const double p = dist.probabilities(i);
    if (p > 0.0) {
      h -= p * std::log(p);
    }
  }
  return std::max(h, 0.0);
}

double entropy_of_posterior(const GpPosterior& post, int path_count,
                            std::uint64_t seed) {
  return shannon_entropy(minimizer_histogram(sample_paths(post, path_count, seed)));
}

}  // namespace iago
