#include "iago/criterion.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "iago/parallel.hpp"

namespace iago {

namespace {

// Seed-stream tags; profile and single-candidate evaluation must agree.
constexpr std::uint64_t kSeedPaths = 0x70617468;    // base path set
constexpr std::uint64_t kSeedFantasy = 0x66616e74;  // fantasy-noise draws

double entropy_from_counts(const std::vector<std::int64_t>& counts, int total) {
  double h = 0.0;
  const double s = static_cast<double>(total);
  for (const std::int64_t c : counts) {
    if (c > 0) {
      const double p = static_cast<double>(c) / s;
      h -= p * std::log(p);
    }
  }
  return std::max(h, 0.0);
}

}  // namespace

std::pair<double, double> fantasy_observation_distribution(
    const GpPosterior& post, int grid_index, VirtualBatchSize virtual_batch,
    const NoiseModel& noise) {
  if (grid_index < 0 || grid_index >= post.size()) {
    throw std::invalid_argument("fantasy_observation_distribution: index out of range");
  }
  noise.validate();
  const double var = post.covariance(grid_index, grid_index) +
                     virtual_batch.effective_noise_variance(noise.variance);
  return {post.mean(grid_index), var};
}

double criterion_value_from_paths(const GpPosterior& post, const PathSet& paths,
                                  int grid_index, VirtualBatchSize virtual_batch,
                                  const QuadratureRule& rule, const NoiseModel& noise,
                                  std::uint64_t fantasy_seed) {
  if (grid_index < 0 || grid_index >= post.size()) {
    throw std::invalid_argument("criterion_value_from_paths: index out of range");
  }
  if (paths.grid_size() != post.size()) {
    throw std::invalid_argument("criterion_value_from_paths: path/posterior mismatch");
  }
  noise.validate();

  const int s = paths.path_count();
  const int m = paths.grid_size();
  const double var_i = post.covariance(grid_index, grid_index);
  if (var_i <= 0.0) {
    // No information at a known point: every fantasy leaves the paths as-is.
    return shannon_entropy(minimizer_histogram(paths));
  }

  const double tau2 = virtual_batch.effective_noise_variance(noise.variance);
  const double denom = var_i + tau2;
  const double fantasy_sd = std::sqrt(denom);
  const double tau = std::sqrt(tau2);

  Eigen::VectorXd gain = post.covariance.col(grid_index) / denom;
  const double* g = gain.data();

  std::vector<std::int64_t> counts(static_cast<std::size_t>(m));
  std::vector<double> shifted(static_cast<std::size_t>(m));
  double value = 0.0;
  for (int q = 0; q < rule.order; ++q) {
    const double fantasy = post.mean(grid_index) + fantasy_sd * rule.nodes(q);
    const std::uint64_t node_seed = derive_seed(fantasy_seed, static_cast<std::uint64_t>(q));
    counts.assign(counts.size(), 0);
    for (int p = 0; p < s; ++p) {
      const double* row = paths.values.data() + static_cast<std::ptrdiff_t>(p) * m;
      double noise_draw = 0.0;
      if (tau > 0.0) {
        noise_draw =
            tau * counter_normal(derive_seed(node_seed, static_cast<std::uint64_t>(p)));
      }
      const double shift = fantasy - row[grid_index] - noise_draw;
      for (int j = 0; j < m; ++j) {
        shifted[static_cast<std::size_t>(j)] = row[j] + shift * g[j];
      }
      int arg = 0;
      double best = shifted[0];
      for (int j = 1; j < m; ++j) {
        if (shifted[static_cast<std::size_t>(j)] < best) {
          best = shifted[static_cast<std::size_t>(j)];
          arg = j;
        }
      }
      ++counts[static_cast<std::size_t>(arg)];
    }
    value += rule.weights(q) * entropy_from_counts(counts, s);
  }
  return value;
}

double criterion_value(const GpPosterior& post, int grid_index,
                       VirtualBatchSize virtual_batch, const QuadratureRule& rule,
                       const NoiseModel& noise, int path_count, std::uint64_t seed) {
  const PathSet paths = sample_paths(post, path_count, derive_seed(seed, kSeedPaths));
  const std::uint64_t fantasy_base = derive_seed(seed, kSeedFantasy);
  return criterion_value_from_paths(
      post, paths, grid_index, virtual_batch, rule, noise,
      derive_seed(fantasy_base, static_cast<std::uint64_t>(grid_index)));
}

CriterionProfile criterion_profile_from_paths(const GpPosterior& post,
                                              const PathSet& paths,
                                              VirtualBatchSize virtual_batch,
                                              const QuadratureRule& rule,
                                              const NoiseModel& noise,
                                              std::uint64_t fantasy_seed,
                                              int threads) {
  const int m = post.size();
  CriterionProfile profile;
  profile.values.resize(m);
  profile.virtual_batch = virtual_batch;
  profile.path_count = paths.path_count();
  profile.seed = paths.seed;
  parallel_for(m, threads, [&](int i) {
    profile.values(i) = criterion_value_from_paths(
        post, paths, i, virtual_batch, rule, noise,
        derive_seed(fantasy_seed, static_cast<std::uint64_t>(i)));
  });
  return profile;
}

CriterionProfile criterion_profile(const GpPosterior& post,
                                   VirtualBatchSize virtual_batch,
                                   const QuadratureRule& rule, const NoiseModel& noise,
                                   int path_count, std::uint64_t seed, int threads) {
  const PathSet paths = sample_paths(post, path_count, derive_seed(seed, kSeedPaths));
  CriterionProfile profile = criterion_profile_from_paths(
      post, paths, virtual_batch, rule, noise, derive_seed(seed, kSeedFantasy),
      threads);
  profile.seed = seed;
  return profile;
}

int select_next(const CriterionProfile& profile) {
  if (profile.values.size() < 1) {
    throw std::invalid_argument("select_next: empty profile");
  }
  int arg = 0;
  double best = profile.values(0);
  for (Eigen::Index i = 1; i < profile.values.size(); ++i) {
    if (profile.values(i) < best) {
      best = profile.values(i);
      arg = static_cast<int>(i);
    }
  }
  return arg;
}

int iid_select(const CandidateGrid& grid, Rng& rng) {
  return static_cast<int>(rng.uniform_index(static_cast<std::size_t>(grid.size())));
}

}  // namespace iago
