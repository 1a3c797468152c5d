#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "iago/config.hpp"
#include "iago/errors.hpp"
#include "iago/io.hpp"

using namespace iago;
using nlohmann::json;

namespace {

json minimal_config() {
  return json::parse(R"({
    "seed": 42,
    "grid": {"lower": -1.0, "upper": 0.0, "m": 51},
    "objective": {"kind": "res_surrogate", "noise_std": 1.0},
    "optimizer": {"budget": 100, "actual_batch": 10, "virtual_batch": "inf"}
  })");
}

}  // namespace

TEST_CASE("parse_config: defaults and overrides") {
  const HarnessConfig cfg = parse_config(minimal_config());
  CHECK(cfg.seed == 42);
  CHECK(cfg.optimizer.budget == 100);
  CHECK(cfg.optimizer.virtual_batch.is_infinite());
  CHECK(cfg.optimizer.paths == 1000);
  CHECK(cfg.optimizer.quad_order == 15);
  CHECK(cfg.optimizer.init_batches == 11);
  CHECK(cfg.optimizer.noise_variance == doctest::Approx(1.0));
  CHECK(cfg.bench_policies.size() == 3);
  CHECK(cfg.criterion_noise.virtual_batches.size() == 4);
  CHECK(cfg.criterion_noise.virtual_batches[3].is_infinite());

  const CandidateGrid grid = make_grid(cfg);
  CHECK(grid.size() == 51);
  const NoisyObjective obj = make_objective(cfg, grid);
  CHECK(obj.label == "res_surrogate");
}

TEST_CASE("parse_config: rejection paths") {
  json bad = minimal_config();
  bad["optimizer"]["virtual_batch"] = 0;
  CHECK_THROWS_AS(parse_config(bad), ConfigError);

  bad = minimal_config();
  bad["grid"]["m"] = 1;
  CHECK_THROWS_AS(parse_config(bad), ConfigError);

  bad = minimal_config();
  bad["objective"]["kind"] = "mystery";
  CHECK_THROWS_AS(parse_config(bad), ConfigError);

  bad = minimal_config();
  bad["objective"]["noise_std"] = -0.5;
  CHECK_THROWS_AS(parse_config(bad), ConfigError);

  bad = minimal_config();
  bad["grid"]["m"] = 50;  // res_surrogate needs the canonical grid
  CHECK_THROWS_AS(parse_config(bad), ConfigError);

  bad = minimal_config();
  bad["optimizer"]["typo_key"] = 1;
  CHECK_THROWS_AS(parse_config(bad), ConfigError);

  bad = minimal_config();
  bad["objective"]["kind"] = "gp_draw";  // no model given
  CHECK_THROWS_AS(parse_config(bad), ConfigError);
}

TEST_CASE("parse_config: gp_draw objective round trip") {
  json doc = minimal_config();
  doc["grid"] = {{"lower", 0.0}, {"upper", 2.0}, {"m", 21}};
  doc["objective"] = {{"kind", "gp_draw"},
                      {"noise_std", 0.3},
                      {"seed", 9},
                      {"model",
                       {{"family", "matern32"},
                        {"process_variance", 1.5},
                        {"lengthscales", {0.4}}}}};
  const HarnessConfig cfg = parse_config(doc);
  const CandidateGrid grid = make_grid(cfg);
  const NoisyObjective a = make_objective(cfg, grid);
  const NoisyObjective b = make_objective(cfg, grid);
  CHECK(a.label == "gp_draw");
  CHECK((a.mean_values - b.mean_values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("resolved_config: reparses to the same configuration") {
  const HarnessConfig cfg = parse_config(minimal_config());
  const nlohmann::ordered_json dumped = resolved_config(cfg);
  const HarnessConfig again = parse_config(json::parse(dumped.dump()));
  CHECK(again.seed == cfg.seed);
  CHECK(again.optimizer.budget == cfg.optimizer.budget);
  CHECK(again.optimizer.paths == cfg.optimizer.paths);
  CHECK(again.optimizer.virtual_batch == cfg.optimizer.virtual_batch);
  CHECK(again.bench_policies.size() == cfg.bench_policies.size());
  CHECK(resolved_config(again).dump() == dumped.dump());
}

TEST_CASE("trace serialization carries the named fields") {
  const NoisyObjective obj = make_res_surrogate(1.0);
  const CandidateGrid grid = res_surrogate_grid();
  OptimizerConfig config;
  config.budget = 20;
  config.actual_batch = 10;
  config.paths = 100;
  config.quad_order = 5;
  config.init_batches = 4;
  config.policy = Policy::kIid;
  config.seed = 8;
  config.fit.bounds = FitBounds::defaults(1, 1.0);
  config.fit.restarts = 2;
  config.noise_variance = 1.0;
  const RunTrace trace = run(config, obj, grid);

  std::ostringstream out;
  write_trace_jsonl(trace, grid, 3, "iid", out);
  std::istringstream lines(out.str());
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    const json rec = json::parse(line);
    CHECK(rec.at("run") == 3);
    CHECK(rec.at("iter") == rows + 1);
    CHECK(rec.at("policy") == "iid");
    CHECK(rec.at("chosen_index").is_number_integer());
    CHECK(rec.at("values").size() == 10);
    CHECK(rec.at("xhat").is_array());
    CHECK(rec.at("Mhat").is_number());
    CHECK(rec.at("H").is_number());
    ++rows;
  }
  CHECK(rows == 2);

  const nlohmann::ordered_json meta = run_meta_json(trace, grid);
  CHECK(meta.at("raw_evaluations") == 60);
  CHECK(meta.at("profile_builds") == 0);
  CHECK(meta.at("initial").contains("H"));
}
