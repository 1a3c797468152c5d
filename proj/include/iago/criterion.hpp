#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>

#include "iago/entropy.hpp"
#include "iago/observation.hpp"
#include "iago/posterior.hpp"
#include "iago/quadrature.hpp"
#include "iago/rng.hpp"

namespace iago {

/// Number of hypothetical same-point evaluations inside the criterion. An
/// infinite virtual batch fantasizes a noise-free observation.
using VirtualBatchSize = BatchSize;

/// Per-candidate expected residual entropy of the minimizer after a virtual
/// batch at that candidate, in nats.
struct CriterionProfile {
  Eigen::VectorXd values;
  VirtualBatchSize virtual_batch = VirtualBatchSize::finite(1);
  int path_count = 0;
  std::uint64_t seed = 0;
};

/// Posterior law of the fused fantasy observation at grid_index:
/// mean mu_n(x), variance var_n(x) + sigma^2 / K (exactly var_n(x) for
/// K = infinity).
std::pair<double, double> fantasy_observation_distribution(
    const GpPosterior& post, int grid_index, VirtualBatchSize virtual_batch,
    const NoiseModel& noise);

/// Expected post-batch minimizer entropy for one candidate, integrating the
/// fantasy observation out by quadrature. Paths are re-conditioned on each
/// fantasy value by the kriging-update identity
///   path' = path + gain * (fantasy - (path(x) + e)),
/// where e is the per-(path, node) fantasy-noise draw derived from
/// fantasy_seed; e is exactly 0 when sigma^2 / K = 0, which makes the value
/// independent of K in the noise-free case. A zero-variance candidate
/// returns the entropy of the base paths unchanged.
double criterion_value_from_paths(const GpPosterior& post, const PathSet& paths,
                                  int grid_index, VirtualBatchSize virtual_batch,
                                  const QuadratureRule& rule, const NoiseModel& noise,
                                  std::uint64_t fantasy_seed);

/// As above, sampling its own base path set from `seed`. Equals the
/// matching entry of criterion_profile under the same seed.
double criterion_value(const GpPosterior& post, int grid_index,
                       VirtualBatchSize virtual_batch, const QuadratureRule& rule,
                       const NoiseModel& noise, int path_count, std::uint64_t seed);

/// Whole-grid profile over one shared base path set (common random numbers
/// across candidates and quadrature nodes). The per-candidate fantasy-noise
/// seeds are counter-derived from (seed, candidate, node, path), so any
/// thread schedule produces identical values.
CriterionProfile criterion_profile(const GpPosterior& post,
                                   VirtualBatchSize virtual_batch,
                                   const QuadratureRule& rule, const NoiseModel& noise,
                                   int path_count, std::uint64_t seed,
                                   int threads = 1);

/// Profile over a caller-supplied base path set.
CriterionProfile criterion_profile_from_paths(const GpPosterior& post,
                                              const PathSet& paths,
                                              VirtualBatchSize virtual_batch,
                                              const QuadratureRule& rule,
                                              const NoiseModel& noise,
                                              std::uint64_t fantasy_seed,
                                              int threads = 1);

/// Index of the profile minimum; ties go to the smallest index.
int select_next(const CriterionProfile& profile);

/// Uniform draw over the candidate indices (the IID reference policy).
int iid_select(const CandidateGrid& grid, Rng& rng);

}  // namespace iago
