#include "iago/bench.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "iago/parallel.hpp"

namespace iago {

namespace {

enum SeedTag : std::uint64_t {
  kTagStudyInit = 11,
  kTagStudyFit = 12,
  kTagStudyReplicate = 13,
  kTagBenchRun = 21,
};

}  // namespace

CriterionNoiseReport criterion_noise_study(const CriterionNoiseConfig& config,
                                           const NoisyObjective& objective,
                                           const CandidateGrid& grid) {
  if (config.replicates < 2) {
    throw std::invalid_argument("criterion_noise_study: need >= 2 replicates");
  }
  if (config.virtual_batches.empty()) {
    throw std::invalid_argument("criterion_noise_study: empty K list");
  }
  if (objective.mean_values.size() != grid.size()) {
    throw std::invalid_argument("criterion_noise_study: objective/grid mismatch");
  }

  CriterionNoiseReport report;
  report.seed = config.seed;

  // Initial sample, standardization, and the model the profiles run under.
  Rng init_rng(derive_seed(config.seed, kTagStudyInit));
  const std::vector<int> indices = initial_design_indices(grid, config.init_batches);
  report.init_indices = indices;
  std::vector<double> raw;
  raw.reserve(indices.size() * static_cast<std::size_t>(config.actual_batch));
  std::vector<std::vector<double>> batches;
  for (const int idx : indices) {
    batches.push_back(evaluate_batch(objective, idx, config.actual_batch, init_rng));
    raw.insert(raw.end(), batches.back().begin(), batches.back().end());
  }
  double mean = 0.0;
  for (const double v : raw) mean += v;
  mean /= static_cast<double>(raw.size());
  double var = 0.0;
  for (const double v : raw) var += (v - mean) * (v - mean);
  var /= static_cast<double>(raw.size());
  const double stdev = std::sqrt(var);
  report.standardization = {mean, stdev > 1e-12 ? stdev : 1.0};

  for (std::size_t b = 0; b < indices.size(); ++b) {
    std::vector<double> standardized(batches[b].size());
    std::transform(batches[b].begin(), batches[b].end(), standardized.begin(),
                   [&](double v) { return report.standardization.to_standard(v); });
    report.observations.push_back(fuse_batch(indices[b], standardized));
  }
  const NoiseModel noise{config.noise_variance /
                         (report.standardization.stdev * report.standardization.stdev)};

  if (config.fit_model) {
    Rng fit_rng(derive_seed(config.seed, kTagStudyFit));
    report.model = fit_hyperparameters(report.observations, grid, noise, config.family,
                                       config.fit.bounds, config.fit.restarts, fit_rng);
  } else {
    if (!config.fixed_model) {
      throw std::invalid_argument("criterion_noise_study: fit_model=false needs a model");
    }
    report.model = *config.fixed_model;
    report.model.validate();
  }

  const GpPosterior post = compute_posterior(report.model, noise, report.observations, grid);
  const QuadratureRule rule = gauss_hermite(config.quad_order);

  const int n_k = static_cast<int>(config.virtual_batches.size());
  const int reps = config.replicates;
  report.entries.resize(static_cast<std::size_t>(n_k));
  for (int k = 0; k < n_k; ++k) {
    report.entries[static_cast<std::size_t>(k)].virtual_batch =
        config.virtual_batches[static_cast<std::size_t>(k)];
    report.entries[static_cast<std::size_t>(k)].profiles.resize(
        static_cast<std::size_t>(reps));
  }

  // Replicate seeds are shared across K values on purpose: with zero noise
  // variance the profiles must coincide exactly for every K.
  parallel_for(n_k * reps, config.threads, [&](int task) {
    const int k = task / reps;
    const int r = task % reps;
    const CriterionProfile profile = criterion_profile(
        post, config.virtual_batches[static_cast<std::size_t>(k)], rule, noise,
        config.paths,
        derive_seed(config.seed, kTagStudyReplicate, static_cast<std::uint64_t>(r)),
        /*threads=*/1);
    report.entries[static_cast<std::size_t>(k)].profiles[static_cast<std::size_t>(r)] =
        profile.values;
  });

  const int m = grid.size();
  for (CriterionNoiseEntry& entry : report.entries) {
    entry.mean_profile = Eigen::VectorXd::Zero(m);
    for (const Eigen::VectorXd& p : entry.profiles) entry.mean_profile += p;
    entry.mean_profile /= static_cast<double>(reps);

    double sd_sum = 0.0;
    for (int j = 0; j < m; ++j) {
      double ss = 0.0;
      for (const Eigen::VectorXd& p : entry.profiles) {
        const double d = p(j) - entry.mean_profile(j);
        ss += d * d;
      }
      sd_sum += std::sqrt(ss / static_cast<double>(reps - 1));
    }
    entry.mean_replicate_sd = sd_sum / static_cast<double>(m);
    entry.mean_profile_range =
        entry.mean_profile.maxCoeff() - entry.mean_profile.minCoeff();
    entry.dispersion_ratio = entry.mean_replicate_sd / entry.mean_profile_range;
  }
  return report;
}

std::string PolicySpec::label() const {
  if (policy == Policy::kIid) return "iid";
  return "iago_k" + virtual_batch.to_string();
}

BenchResult bench(const BenchConfig& config, const NoisyObjective& objective,
                  const CandidateGrid& grid) {
  if (config.runs < 1) {
    throw std::invalid_argument("bench: runs must be >= 1");
  }
  if (config.policies.empty()) {
    throw std::invalid_argument("bench: no policies configured");
  }
  {
    OptimizerConfig probe = config.base;
    probe.validate(grid);
  }
  std::vector<std::int64_t> checkpoints = config.checkpoints;
  if (checkpoints.empty()) {
    for (std::int64_t n = 0; n <= config.base.budget; n += config.base.actual_batch) {
      checkpoints.push_back(n);
    }
  }
  for (const std::int64_t n : checkpoints) {
    if (n < 0 || n > config.base.budget || n % config.base.actual_batch != 0) {
      throw std::invalid_argument(
          "bench: checkpoints must be multiples of actual_batch within the budget");
    }
  }

  const int n_policies = static_cast<int>(config.policies.size());
  BenchResult result;
  result.checkpoints = checkpoints;
  result.outcomes.resize(static_cast<std::size_t>(n_policies * config.runs));

  parallel_for(n_policies * config.runs, config.threads, [&](int task) {
    const int p = task / config.runs;
    const int r = task % config.runs;
    RunOutcome& outcome = result.outcomes[static_cast<std::size_t>(task)];
    outcome.policy = config.policies[static_cast<std::size_t>(p)];
    outcome.run_index = r;
    // Same seed across policies for a given run index: paired comparisons.
    outcome.seed =
        derive_seed(config.master_seed, kTagBenchRun, static_cast<std::uint64_t>(r));

    OptimizerConfig run_config = config.base;
    run_config.policy = outcome.policy.policy;
    run_config.virtual_batch = outcome.policy.virtual_batch;
    run_config.seed = outcome.seed;
    try {
      outcome.trace = run(run_config, objective, grid);
      outcome.ok = true;
    } catch (const RunAborted& e) {
      outcome.ok = false;
      outcome.error = e.what();
      outcome.trace = e.partial_trace();
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.error = e.what();
    }
  });

  // Summary over completed runs, in config order.
  int completed = 0;
  int failed = 0;
  for (const RunOutcome& o : result.outcomes) {
    o.ok ? ++completed : ++failed;
  }
  result.summary.completed_runs = completed;
  result.summary.failed_runs = failed;

  const std::vector<double> levels{5.0, 25.0, 50.0, 75.0, 95.0};
  for (int p = 0; p < n_policies; ++p) {
    const PolicySpec& policy = config.policies[static_cast<std::size_t>(p)];
    for (const std::int64_t n : checkpoints) {
      std::vector<double> xhat;
      std::vector<double> mhat;
      std::vector<double> entropy;
      for (int r = 0; r < config.runs; ++r) {
        const RunOutcome& o =
            result.outcomes[static_cast<std::size_t>(p * config.runs + r)];
        if (!o.ok || !o.trace) continue;
        const RunTrace& trace = *o.trace;
        if (n == 0) {
          xhat.push_back(grid.coordinate(trace.initial_xhat_index));
          mhat.push_back(trace.initial_mhat);
          entropy.push_back(trace.initial_entropy);
        } else {
          const auto it = static_cast<std::size_t>(n / config.base.actual_batch - 1);
          if (it >= trace.records.size()) continue;  // aborted before n
          const IterationRecord& rec = trace.records[it];
          xhat.push_back(grid.coordinate(rec.xhat_index));
          mhat.push_back(rec.mhat);
          entropy.push_back(rec.entropy);
        }
      }
      if (xhat.empty()) continue;
      const auto add_row = [&](const char* stat, const std::vector<double>& samples) {
        const std::vector<double> q = percentiles(samples, levels);
        result.summary.rows.push_back(
            SummaryRow{policy.label(), n, stat, q[0], q[1], q[2], q[3], q[4]});
      };
      add_row("xhat", xhat);
      add_row("mhat", mhat);
      add_row("entropy", entropy);
    }
  }
  return result;
}

}  // namespace iago
