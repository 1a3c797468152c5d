#include <doctest.h>

#include <cmath>
#include <set>

#include "iago/optimizer.hpp"
#include "iago/testbed.hpp"

using namespace iago;

namespace {

OptimizerConfig small_config(Policy policy, std::int64_t budget) {
  OptimizerConfig config;
  config.budget = budget;
  config.actual_batch = 10;
  config.virtual_batch = VirtualBatchSize::infinite();
  config.paths = 300;
  config.quad_order = 7;
  config.init_batches = 5;
  config.refit_every = 1;
  config.policy = policy;
  config.seed = 17;
  config.fit.bounds = FitBounds::defaults(1, 1.0);
  config.fit.restarts = 2;
  config.fit.warm_restarts = 1;
  config.noise_variance = 1.0;
  return config;
}

}  // namespace

TEST_CASE("initial_design_indices: 11 of 51 are evenly spread with endpoints") {
  const CandidateGrid grid = res_surrogate_grid();
  const std::vector<int> idx = initial_design_indices(grid, 11);
  const std::vector<int> expected{0, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
  CHECK(idx == expected);
}

TEST_CASE("initial_design_indices: single batch lands nearest the center") {
  const CandidateGrid grid = CandidateGrid::linspace(-1.0, 0.0, 4);
  // Center -0.5 sits between indices 1 and 2; the tie goes to the smaller.
  CHECK(initial_design_indices(grid, 1) == std::vector<int>{1});
  CHECK_THROWS_AS(initial_design_indices(grid, 5), std::invalid_argument);
}

TEST_CASE("initial_design: fused observations at distinct points") {
  const CandidateGrid grid = res_surrogate_grid();
  const NoisyObjective obj = make_res_surrogate(1.0);
  Rng rng(5);
  const ObservationSet obs = initial_design(grid, 11, 10, obj, rng);
  REQUIRE(obs.size() == 11);
  std::set<int> seen;
  for (const Observation& o : obs) {
    CHECK(o.batch_count == BatchSize::finite(10));
    seen.insert(o.grid_index);
  }
  CHECK(seen.size() == 11);

  Rng rng_b(5);
  const ObservationSet again = initial_design(grid, 11, 10, obj, rng_b);
  for (std::size_t i = 0; i < obs.size(); ++i) {
    CHECK(obs[i].value == again[i].value);
  }
}

TEST_CASE("estimate_optimum: argmin of the mean with destandardization") {
  const CandidateGrid grid = CandidateGrid::linspace(0.0, 1.0, 3);
  Eigen::VectorXd mean(3);
  mean << 3, 1, 2;
  const GpPosterior post(grid, mean, Eigen::MatrixXd::Zero(3, 3));
  CHECK(estimate_optimum(post) == std::pair<int, double>{1, 1.0});

  const Standardization map{10.0, 2.0};
  const auto [idx, value] = estimate_optimum(post, map);
  CHECK(idx == 1);
  CHECK(value == doctest::Approx(12.0));

  Eigen::VectorXd flat = Eigen::VectorXd::Constant(3, 0.7);
  const GpPosterior constant(grid, flat, Eigen::MatrixXd::Zero(3, 3));
  CHECK(estimate_optimum(constant).first == 0);
}

TEST_CASE("run: zero budget leaves only initial-design metadata") {
  const NoisyObjective obj = make_res_surrogate(1.0);
  const CandidateGrid grid = res_surrogate_grid();
  const RunTrace trace = run(small_config(Policy::kIid, 0), obj, grid);
  CHECK(trace.records.empty());
  CHECK(trace.init_indices.size() == 5);
  CHECK(trace.raw_evaluations == 50);
  CHECK(trace.initial_entropy >= 0.0);
  CHECK(trace.initial_entropy <= std::log(51.0) + 1e-12);
}

TEST_CASE("run: IID bookkeeping over 10 iterations") {
  const NoisyObjective obj = make_res_surrogate(1.0);
  const CandidateGrid grid = res_surrogate_grid();
  const RunTrace trace = run(small_config(Policy::kIid, 100), obj, grid);
  CHECK(trace.records.size() == 10);
  CHECK(trace.raw_evaluations == 50 + 100);
  CHECK(trace.profile_builds == 0);  // the IID policy never touches the criterion
  for (const IterationRecord& rec : trace.records) {
    CHECK(rec.raw_values.size() == 10);
    CHECK(rec.entropy >= 0.0);
    CHECK(rec.entropy <= std::log(51.0) + 1e-12);
    CHECK(rec.chosen_index >= 0);
    CHECK(rec.chosen_index < 51);
  }
}

TEST_CASE("run: deterministic per seed") {
  const NoisyObjective obj = make_res_surrogate(1.0);
  const CandidateGrid grid = res_surrogate_grid();
  OptimizerConfig config = small_config(Policy::kIago, 30);
  config.paths = 200;
  const RunTrace a = run(config, obj, grid);
  const RunTrace b = run(config, obj, grid);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t t = 0; t < a.records.size(); ++t) {
    CHECK(a.records[t].chosen_index == b.records[t].chosen_index);
    CHECK(a.records[t].mhat == b.records[t].mhat);
    CHECK(a.records[t].entropy == b.records[t].entropy);
  }
  CHECK(a.standardization.mean == b.standardization.mean);
}

TEST_CASE("run: IAGO profile accounting") {
  const NoisyObjective obj = make_res_surrogate(1.0);
  const CandidateGrid grid = res_surrogate_grid();
  OptimizerConfig config = small_config(Policy::kIago, 40);
  config.paths = 200;
  const RunTrace trace = run(config, obj, grid);
  CHECK(trace.records.size() == 4);
  CHECK(trace.profile_builds == 4);
}

TEST_CASE("run: config validation") {
  const NoisyObjective obj = make_res_surrogate(1.0);
  const CandidateGrid grid = res_surrogate_grid();
  OptimizerConfig config = small_config(Policy::kIid, 95);  // not divisible by 10
  CHECK_THROWS_AS(run(config, obj, grid), std::invalid_argument);
  config = small_config(Policy::kIid, 0);
  config.init_batches = 52;
  CHECK_THROWS_AS(run(config, obj, grid), std::invalid_argument);
}

TEST_CASE("run: entropy in the trace reproduces from the replayed posterior") {
  const NoisyObjective obj = make_res_surrogate(1.0);
  const CandidateGrid grid = res_surrogate_grid();
  OptimizerConfig config = small_config(Policy::kIid, 50);
  const RunTrace trace = run(config, obj, grid);

  // Rebuild the observation set exactly as run() saw it.
  const Standardization& map = trace.standardization;
  ObservationSet obs;
  for (std::size_t b = 0; b < trace.init_indices.size(); ++b) {
    std::vector<double> std_values;
    for (const double v : trace.init_raw_values[b]) {
      std_values.push_back(map.to_standard(v));
    }
    obs.push_back(fuse_batch(trace.init_indices[b], std_values));
  }
  for (const IterationRecord& rec : trace.records) {
    std::vector<double> std_values;
    for (const double v : rec.raw_values) std_values.push_back(map.to_standard(v));
    obs.push_back(fuse_batch(rec.chosen_index, std_values));
  }
  const NoiseModel noise{config.noise_variance / (map.stdev * map.stdev)};
  const GpPosterior post =
      compute_posterior(trace.records.back().hyper, noise, obs, grid);
  const std::uint64_t entropy_seed = trace_entropy_seed(
      config.seed, static_cast<std::int64_t>(trace.records.size()));
  CHECK(entropy_of_posterior(post, config.paths, entropy_seed) ==
        trace.records.back().entropy);
}

TEST_CASE("run: noise-free IAGO finds the argmin of a monotone function" *
          doctest::timeout(600)) {
  // m = 5 grid, exact evaluations: the final estimate must hit the true
  // argmin on every seeded run.
  const CandidateGrid grid = CandidateGrid::linspace(0.0, 1.0, 5);
  NoisyObjective obj;
  obj.mean_values.resize(5);
  obj.mean_values << 2.0, 1.5, 1.1, 0.8, 0.6;  // monotone: argmin at 4
  obj.noise_std = 0.0;
  obj.label = "monotone";

  for (int rep = 0; rep < 20; ++rep) {
    OptimizerConfig config;
    config.budget = 30;
    config.actual_batch = 10;
    config.virtual_batch = VirtualBatchSize::infinite();
    config.paths = 200;
    config.quad_order = 5;
    config.init_batches = 2;
    config.policy = Policy::kIago;
    config.seed = 9000 + static_cast<std::uint64_t>(rep);
    config.fit.bounds = FitBounds::defaults(1, 1.0);
    config.fit.restarts = 2;
    config.fit.warm_restarts = 1;
    config.noise_variance = 0.0;
    const RunTrace trace = run(config, obj, grid);
    CHECK(trace.records.back().xhat_index == 4);
    // Noise-free: the de-standardized estimate equals the true minimum.
    CHECK(trace.records.back().mhat == doctest::Approx(0.6).epsilon(1e-6));
  }
}

TEST_CASE("run: destandardized estimates are invariant to objective shifts") {
  // A noise-free objective shifted and scaled: mhat tracks it exactly, so
  // the standardization round-trip is clean.
  const CandidateGrid grid = CandidateGrid::linspace(0.0, 1.0, 6);
  NoisyObjective obj;
  obj.mean_values.resize(6);
  obj.mean_values << 3.0, 2.0, 1.0, 1.5, 2.5, 3.5;
  obj.noise_std = 0.0;
  obj.label = "vee";

  OptimizerConfig config;
  config.budget = 20;
  config.actual_batch = 10;
  config.virtual_batch = VirtualBatchSize::finite(1);
  config.paths = 150;
  config.quad_order = 5;
  config.init_batches = 3;
  config.policy = Policy::kIid;
  config.seed = 4;
  config.fit.bounds = FitBounds::defaults(1, 1.0);
  config.fit.restarts = 2;
  config.fit.warm_restarts = 1;
  config.noise_variance = 0.0;
  const RunTrace base = run(config, obj, grid);

  NoisyObjective moved = obj;
  moved.mean_values = 100.0 + 7.0 * obj.mean_values.array();
  const RunTrace shifted = run(config, moved, grid);
  REQUIRE(base.records.size() == shifted.records.size());
  for (std::size_t t = 0; t < base.records.size(); ++t) {
    CHECK(shifted.records[t].mhat ==
          doctest::Approx(100.0 + 7.0 * base.records[t].mhat).epsilon(1e-7));
  }
}
