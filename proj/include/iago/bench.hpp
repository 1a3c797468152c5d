#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iago/optimizer.hpp"
#include "iago/summary.hpp"

namespace iago {

/// Replicate study of the criterion's estimation noise as a function of the
/// virtual batch size (the criterion-noise analog of repeated profile
/// realizations).
struct CriterionNoiseConfig {
  int replicates = 15;
  std::vector<VirtualBatchSize> virtual_batches;
  int paths = 1000;
  int quad_order = 15;
  int init_batches = 11;
  int actual_batch = 10;
  bool fit_model = true;                     // fit on the initial sample
  std::optional<CovarianceSpec> fixed_model; // used instead when fit_model = false
  CovFamily family = CovFamily::kMatern52;
  FitOptions fit;
  double noise_variance = 1.0;  // original units
  std::uint64_t seed = 0;
  int threads = 1;
};

struct CriterionNoiseEntry {
  VirtualBatchSize virtual_batch = VirtualBatchSize::finite(1);
  std::vector<Eigen::VectorXd> profiles;  // one per replicate
  Eigen::VectorXd mean_profile;
  double mean_replicate_sd = 0.0;  // mean over grid of across-replicate sd
  double mean_profile_range = 0.0;
  double dispersion_ratio = 0.0;  // rho = mean_replicate_sd / mean_profile_range
};

struct CriterionNoiseReport {
  std::vector<CriterionNoiseEntry> entries;
  Standardization standardization;
  CovarianceSpec model;  // standardized units
  ObservationSet observations;  // standardized units
  std::vector<int> init_indices;
  std::uint64_t seed = 0;
};

/// For each K: `replicates` criterion profiles with independent path seeds
/// shared across the K values (so profiles for different K coincide exactly
/// when the noise variance is 0). rho(K) is the mean across-replicate
/// standard deviation divided by the range of the mean profile.
CriterionNoiseReport criterion_noise_study(const CriterionNoiseConfig& config,
                                           const NoisyObjective& objective,
                                           const CandidateGrid& grid);

/// One line of the policy comparison.
struct PolicySpec {
  Policy policy = Policy::kIid;
  VirtualBatchSize virtual_batch = VirtualBatchSize::infinite();

  std::string label() const;
};

struct BenchConfig {
  OptimizerConfig base;  // seed/policy/virtual_batch are overridden per run
  std::vector<PolicySpec> policies;
  int runs = 1;
  std::vector<std::int64_t> checkpoints;  // evaluation counts; empty = every batch
  std::uint64_t master_seed = 0;
  int threads = 1;
};

struct RunOutcome {
  PolicySpec policy;
  int run_index = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::optional<RunTrace> trace;
};

struct BenchResult {
  std::vector<RunOutcome> outcomes;  // policy-major, run-minor order
  BenchmarkSummary summary;
  std::vector<std::int64_t> checkpoints;
};

/// R seeded runs per policy. Run r uses the same derived seed across
/// policies (paired common random numbers), and outcomes are assembled in
/// config order, so the result is deterministic for any thread count.
/// Individual run failures are recorded and skipped by the summary.
BenchResult bench(const BenchConfig& config, const NoisyObjective& objective,
                  const CandidateGrid& grid);

}  // namespace iago
