#include "iago/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace iago {

namespace {

// Per-purpose seed-stream tags inside one run.
enum SeedTag : std::uint64_t {
  kTagInit = 1,
  kTagFit = 2,
  kTagEntropy = 3,
  kTagProfile = 4,
  kTagIid = 5,
  kTagEval = 6,
};

struct InitialDesignData {
  std::vector<int> indices;
  std::vector<std::vector<double>> raw_batches;
  ObservationSet fused;  // original units
};

InitialDesignData initial_design_detail(const CandidateGrid& grid, int init_batches,
                                        int actual_batch,
                                        const NoisyObjective& objective, Rng& rng) {
  InitialDesignData data;
  data.indices = initial_design_indices(grid, init_batches);
  for (const int idx : data.indices) {
    std::vector<double> batch = evaluate_batch(objective, idx, actual_batch, rng);
    data.fused.push_back(fuse_batch(idx, batch));
    data.raw_batches.push_back(std::move(batch));
  }
  return data;
}

}  // namespace

const char* policy_name(Policy policy) {
  switch (policy) {
    case Policy::kIago:
      return "iago";
    case Policy::kIid:
      return "iid";
  }
  return "unknown";
}

std::optional<Policy> policy_from_name(std::string_view name) {
  if (name == "iago") return Policy::kIago;
  if (name == "iid") return Policy::kIid;
  return std::nullopt;
}

void OptimizerConfig::validate(const CandidateGrid& grid) const {
  if (budget < 0) {
    throw std::invalid_argument("OptimizerConfig: budget must be >= 0");
  }
  if (actual_batch < 1) {
    throw std::invalid_argument("OptimizerConfig: actual_batch must be >= 1");
  }
  if (budget % actual_batch != 0) {
    throw std::invalid_argument("OptimizerConfig: budget must be divisible by actual_batch");
  }
  if (paths < 1) {
    throw std::invalid_argument("OptimizerConfig: paths must be >= 1");
  }
  if (quad_order < 1 || quad_order > 64) {
    throw std::invalid_argument("OptimizerConfig: quad_order must be in [1, 64]");
  }
  if (init_batches < 1 || init_batches > grid.size()) {
    throw std::invalid_argument("OptimizerConfig: init_batches must be in [1, m]");
  }
  if (refit_every < 1) {
    throw std::invalid_argument("OptimizerConfig: refit_every must be >= 1");
  }
  if (!(noise_variance >= 0.0)) {
    throw std::invalid_argument("OptimizerConfig: noise_variance must be >= 0");
  }
  if (profile_threads < 1) {
    throw std::invalid_argument("OptimizerConfig: profile_threads must be >= 1");
  }
  fit.bounds.validate(grid.dim());
}

std::vector<int> initial_design_indices(const CandidateGrid& grid, int init_batches) {
  const int m = grid.size();
  if (init_batches < 1 || init_batches > m) {
    throw std::invalid_argument("initial_design_indices: init_batches must be in [1, m]");
  }

  if (init_batches == 1) {
    // Point nearest the center of the bounding box, ties to smallest index.
    const Eigen::RowVectorXd center =
        0.5 * (grid.points().colwise().minCoeff() + grid.points().colwise().maxCoeff());
    int arg = 0;
    double best = (grid.point(0) - center).squaredNorm();
    for (int i = 1; i < m; ++i) {
      const double d = (grid.point(i) - center).squaredNorm();
      if (d < best) {
        best = d;
        arg = i;
      }
    }
    return {arg};
  }

  if (grid.dim() == 1) {
    // Evenly spaced ranks in coordinate order, anchored at both endpoints.
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return grid.coordinate(a) < grid.coordinate(b);
    });
    std::vector<int> chosen;
    chosen.reserve(static_cast<std::size_t>(init_batches));
    for (int j = 0; j < init_batches; ++j) {
      const double frac = static_cast<double>(j) / static_cast<double>(init_batches - 1);
      const auto rank = static_cast<std::size_t>(
          std::llround(frac * static_cast<double>(m - 1)));
      chosen.push_back(order[rank]);
    }
    std::sort(chosen.begin(), chosen.end());
    chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
    // llround collisions only happen when init_batches > m, excluded above.
    return chosen;
  }

  // d > 1: greedy farthest-point traversal, seeded with the smaller-index
  // endpoint of a diameter pair; ties always to the smallest index.
  int seed_point = 0;
  double diameter = -1.0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double d = (grid.point(i) - grid.point(j)).squaredNorm();
      if (d > diameter) {
        diameter = d;
        seed_point = i;
      }
    }
  }
  std::vector<int> chosen{seed_point};
  std::vector<double> min_dist(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    min_dist[static_cast<std::size_t>(i)] =
        (grid.point(i) - grid.point(seed_point)).squaredNorm();
  }
  while (static_cast<int>(chosen.size()) < init_batches) {
    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < m; ++i) {
      if (min_dist[static_cast<std::size_t>(i)] > best) {
        best = min_dist[static_cast<std::size_t>(i)];
        arg = i;
      }
    }
    chosen.push_back(arg);
    for (int i = 0; i < m; ++i) {
      min_dist[static_cast<std::size_t>(i)] =
          std::min(min_dist[static_cast<std::size_t>(i)],
                   (grid.point(i) - grid.point(arg)).squaredNorm());
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

ObservationSet initial_design(const CandidateGrid& grid, int init_batches,
                              int actual_batch, const NoisyObjective& objective,
                              Rng& rng) {
  if (actual_batch < 1) {
    throw std::invalid_argument("initial_design: actual_batch must be >= 1");
  }
  return initial_design_detail(grid, init_batches, actual_batch, objective, rng).fused;
}

std::uint64_t trace_entropy_seed(std::uint64_t run_seed, std::int64_t iteration) {
  return derive_seed(run_seed, kTagEntropy, static_cast<std::uint64_t>(iteration));
}

std::pair<int, double> estimate_optimum(const GpPosterior& post,
                                        const Standardization& standardization) {
  int arg = 0;
  double best = post.mean(0);
  for (Eigen::Index i = 1; i < post.mean.size(); ++i) {
    if (post.mean(i) < best) {
      best = post.mean(i);
      arg = static_cast<int>(i);
    }
  }
  return {arg, standardization.to_original(best)};
}

RunTrace run(const OptimizerConfig& config, const NoisyObjective& objective,
             const CandidateGrid& grid) {
  config.validate(grid);
  if (objective.mean_values.size() != grid.size()) {
    throw std::invalid_argument("run: objective/grid size mismatch");
  }

  RunTrace trace;
  trace.config = config;
  trace.objective_label = objective.label;

  try {
    Rng init_rng(derive_seed(config.seed, kTagInit));
    InitialDesignData init = initial_design_detail(
        grid, config.init_batches, config.actual_batch, objective, init_rng);
    trace.init_indices = init.indices;
    trace.init_raw_values = init.raw_batches;
    trace.raw_evaluations =
        static_cast<std::int64_t>(init.indices.size()) * config.actual_batch;

    double sum = 0.0;
    double sum_sq = 0.0;
    std::int64_t count = 0;
    for (const auto& batch : init.raw_batches) {
      for (const double v : batch) {
        sum += v;
        sum_sq += v * v;
        ++count;
      }
    }
    const double mean = sum / static_cast<double>(count);
    const double var = std::max(sum_sq / static_cast<double>(count) - mean * mean, 0.0);
    const double stdev = std::sqrt(var);
    trace.standardization = {mean, stdev > 1e-12 ? stdev : 1.0};
    const Standardization& std_map = trace.standardization;

    ObservationSet obs;
    obs.reserve(init.fused.size() +
                static_cast<std::size_t>(config.budget / config.actual_batch));
    for (const Observation& o : init.fused) {
      obs.push_back({o.grid_index, std_map.to_standard(o.value), o.batch_count});
    }
    const NoiseModel noise{config.noise_variance / (std_map.stdev * std_map.stdev)};

    Rng fit_rng(derive_seed(config.seed, kTagFit, 0));
    CovarianceSpec spec =
        fit_hyperparameters(obs, grid, noise, config.family, config.fit.bounds,
                            config.fit.restarts, fit_rng);
    GpPosterior post = compute_posterior(spec, noise, obs, grid);

    std::tie(trace.initial_xhat_index, trace.initial_mhat) =
        estimate_optimum(post, std_map);
    trace.initial_entropy =
        entropy_of_posterior(post, config.paths, trace_entropy_seed(config.seed, 0));
    trace.initial_hyper = spec;

    const std::int64_t iterations = config.budget / config.actual_batch;
    QuadratureRule rule;
    if (config.policy == Policy::kIago && iterations > 0) {
      rule = gauss_hermite(config.quad_order);
    }

    for (std::int64_t t = 1; t <= iterations; ++t) {
      int chosen = 0;
      if (config.policy == Policy::kIago) {
        const CriterionProfile profile = criterion_profile(
            post, config.virtual_batch, rule, noise, config.paths,
            derive_seed(config.seed, kTagProfile, static_cast<std::uint64_t>(t)),
            config.profile_threads);
        chosen = select_next(profile);
        ++trace.profile_builds;
      } else {
        Rng iid_rng(derive_seed(config.seed, kTagIid, static_cast<std::uint64_t>(t)));
        chosen = iid_select(grid, iid_rng);
      }

      Rng eval_rng(derive_seed(config.seed, kTagEval, static_cast<std::uint64_t>(t)));
      std::vector<double> batch =
          evaluate_batch(objective, chosen, config.actual_batch, eval_rng);
      trace.raw_evaluations += config.actual_batch;

      std::vector<double> standardized(batch.size());
      std::transform(batch.begin(), batch.end(), standardized.begin(),
                     [&](double v) { return std_map.to_standard(v); });
      obs.push_back(fuse_batch(chosen, standardized));

      if (t % config.refit_every == 0) {
        Rng refit_rng(derive_seed(config.seed, kTagFit, static_cast<std::uint64_t>(t)));
        spec = fit_hyperparameters(obs, grid, noise, config.family, config.fit.bounds,
                                   config.fit.warm_restarts, refit_rng, spec);
      }
      post = compute_posterior(spec, noise, obs, grid);

      IterationRecord record;
      record.chosen_index = chosen;
      record.raw_values = std::move(batch);
      std::tie(record.xhat_index, record.mhat) = estimate_optimum(post, std_map);
      record.entropy =
          entropy_of_posterior(post, config.paths, trace_entropy_seed(config.seed, t));
      record.hyper = spec;
      trace.records.push_back(std::move(record));
    }
  } catch (const NumericalError& e) {
    throw RunAborted(e, std::move(trace));
  }
  return trace;
}

}  // namespace iago
