#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iago/criterion.hpp"
#include "iago/errors.hpp"
#include "iago/likelihood.hpp"
#include "iago/testbed.hpp"

namespace iago {

enum class Policy { kIago, kIid };

const char* policy_name(Policy policy);
std::optional<Policy> policy_from_name(std::string_view name);

struct FitOptions {
  FitBounds bounds;
  int restarts = 5;       // random starts for a cold fit
  int warm_restarts = 2;  // extra random starts when warm-starting
};

/// Everything that defines one optimization run.
struct OptimizerConfig {
  std::int64_t budget = 0;  // evaluations, not counting the initial sample
  int actual_batch = 10;    // evaluations actually performed per iteration
  VirtualBatchSize virtual_batch = VirtualBatchSize::infinite();
  int paths = 1000;
  int quad_order = 15;
  int init_batches = 11;
  int refit_every = 1;  // batches between hyperparameter refits
  Policy policy = Policy::kIago;
  std::uint64_t seed = 0;
  CovFamily family = CovFamily::kMatern52;
  FitOptions fit;
  double noise_variance = 1.0;  // known sigma^2, original units
  int profile_threads = 1;

  void validate(const CandidateGrid& grid) const;
};

/// Affine map between original objective units and the standardized units
/// the model works in. Frozen at initial-design time.
struct Standardization {
  double mean = 0.0;
  double stdev = 1.0;

  double to_standard(double v) const { return (v - mean) / stdev; }
  double to_original(double v) const { return v * stdev + mean; }
};

struct IterationRecord {
  int chosen_index = 0;
  std::vector<double> raw_values;  // original units
  int xhat_index = 0;
  double mhat = 0.0;  // original units
  double entropy = 0.0;
  CovarianceSpec hyper;
};

struct RunTrace {
  OptimizerConfig config;
  std::string objective_label;
  Standardization standardization;

  std::vector<int> init_indices;
  std::vector<std::vector<double>> init_raw_values;  // original units
  int initial_xhat_index = 0;
  double initial_mhat = 0.0;
  double initial_entropy = 0.0;
  CovarianceSpec initial_hyper;

  std::vector<IterationRecord> records;
  std::int64_t raw_evaluations = 0;
  std::int64_t profile_builds = 0;
};

/// A numerical failure inside run(); carries the trace up to the failure.
class RunAborted : public NumericalError {
 public:
  RunAborted(const NumericalError& cause, RunTrace partial)
      : NumericalError(cause.what(), cause.attempted_jitter()),
        trace_(std::make_shared<RunTrace>(std::move(partial))) {}

  const RunTrace& partial_trace() const { return *trace_; }

 private:
  std::shared_ptr<const RunTrace> trace_;
};

/// Deterministic maximin-spread selection of init_batches distinct grid
/// indices. For d = 1 the selection is evenly spaced in coordinate order and
/// anchored at both endpoints; init_batches = 1 picks the point nearest the
/// domain center.
std::vector<int> initial_design_indices(const CandidateGrid& grid, int init_batches);

/// Evaluates actual_batch times at each selected point and fuses each batch.
/// Values are in original objective units.
ObservationSet initial_design(const CandidateGrid& grid, int init_batches,
                              int actual_batch, const NoisyObjective& objective,
                              Rng& rng);

/// Argmin of the posterior mean (ties to the smallest index) and the mean
/// value there, mapped back to original units.
std::pair<int, double> estimate_optimum(const GpPosterior& post,
                                        const Standardization& standardization = {});

/// Seed of the entropy estimate logged at iteration t (t = 0 is the
/// initial-design state). Part of the trace-replay contract: rebuilding the
/// posterior from a trace and calling entropy_of_posterior with this seed
/// reproduces the logged H exactly.
std::uint64_t trace_entropy_seed(std::uint64_t run_seed, std::int64_t iteration);

/// The full sequential loop: initial design, standardization, fit, then
/// budget / actual_batch iterations of select-evaluate-update-refit.
/// Fully deterministic per config.seed.
RunTrace run(const OptimizerConfig& config, const NoisyObjective& objective,
             const CandidateGrid& grid);

}  // namespace iago
