#include "iago/config.hpp"

#include <fstream>
#include <set>

#include "iago/errors.hpp"

namespace iago {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config: " + field + ": " + what);
}

void expect_keys(const json& node, const std::string& where,
                 const std::set<std::string>& allowed) {
  for (const auto& [key, value] : node.items()) {
    if (!allowed.contains(key)) {
      fail(where.empty() ? key : where + "." + key, "unknown key");
    }
  }
}

template <typename T>
T get_or(const json& node, const std::string& where, const char* key, T fallback) {
  if (!node.contains(key)) return fallback;
  try {
    return node.at(key).get<T>();
  } catch (const json::exception&) {
    fail(where + "." + key, "wrong type");
  }
}

double get_number(const json& node, const std::string& where, const char* key,
                  double fallback) {
  if (!node.contains(key)) return fallback;
  if (!node.at(key).is_number()) fail(where + "." + key, "expected a number");
  return node.at(key).get<double>();
}

VirtualBatchSize parse_batch(const json& value, const std::string& where) {
  if (value.is_string()) {
    if (value.get<std::string>() == "inf") return VirtualBatchSize::infinite();
    fail(where, "expected a positive integer or \"inf\"");
  }
  if (value.is_number_integer() && value.get<std::int64_t>() >= 1) {
    return VirtualBatchSize::finite(value.get<std::int64_t>());
  }
  fail(where, "expected a positive integer or \"inf\"");
}

nlohmann::ordered_json batch_to_json(const VirtualBatchSize& k) {
  if (k.is_infinite()) return "inf";
  return k.count();
}

CovarianceSpec parse_model(const json& node, const std::string& where, int dim) {
  expect_keys(node, where, {"family", "process_variance", "lengthscales"});
  CovarianceSpec spec;
  const std::string family = get_or<std::string>(node, where, "family", "matern52");
  const auto parsed = family_from_name(family);
  if (!parsed) fail(where + ".family", "unknown family '" + family + "'");
  spec.family = *parsed;
  spec.process_variance = get_number(node, where, "process_variance", 1.0);
  if (node.contains("lengthscales")) {
    const json& ls = node.at("lengthscales");
    if (!ls.is_array() || ls.empty()) fail(where + ".lengthscales", "expected an array");
    spec.lengthscales.resize(static_cast<Eigen::Index>(ls.size()));
    for (std::size_t i = 0; i < ls.size(); ++i) {
      if (!ls[i].is_number()) fail(where + ".lengthscales", "expected numbers");
      spec.lengthscales(static_cast<Eigen::Index>(i)) = ls[i].get<double>();
    }
  } else {
    spec.lengthscales = Eigen::VectorXd::Constant(dim, 0.2);
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  return spec;
}

}  // namespace

HarnessConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config: cannot open " + path.string());
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("config: parse error in " + path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

HarnessConfig parse_config(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw ConfigError("config: top level must be an object");
  }
  expect_keys(doc, "", {"seed", "grid", "objective", "model", "fit", "optimizer",
                        "bench", "criterion_noise"});
  HarnessConfig cfg;
  cfg.seed = get_or<std::uint64_t>(doc, "", "seed", 0);

  // grid
  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    expect_keys(g, "grid", {"lower", "upper", "m"});
    cfg.grid.lower = get_number(g, "grid", "lower", cfg.grid.lower);
    cfg.grid.upper = get_number(g, "grid", "upper", cfg.grid.upper);
    cfg.grid.m = get_or<int>(g, "grid", "m", cfg.grid.m);
  }
  if (cfg.grid.m < 2) fail("grid.m", "must be >= 2");
  if (!(cfg.grid.lower < cfg.grid.upper)) fail("grid", "lower must be < upper");
  const double span = cfg.grid.upper - cfg.grid.lower;

  // objective
  if (doc.contains("objective")) {
    const json& o = doc.at("objective");
    expect_keys(o, "objective", {"kind", "noise_std", "seed", "model"});
    cfg.objective.kind = get_or<std::string>(o, "objective", "kind", cfg.objective.kind);
    cfg.objective.noise_std =
        get_number(o, "objective", "noise_std", cfg.objective.noise_std);
    cfg.objective.seed = get_or<std::uint64_t>(o, "objective", "seed", 0);
    if (o.contains("model")) {
      cfg.objective.model = parse_model(o.at("model"), "objective.model", 1);
    }
  }
  if (cfg.objective.kind != "res_surrogate" && cfg.objective.kind != "gp_draw") {
    fail("objective.kind", "expected \"res_surrogate\" or \"gp_draw\"");
  }
  if (!(cfg.objective.noise_std >= 0.0)) fail("objective.noise_std", "must be >= 0");
  if (cfg.objective.kind == "res_surrogate" &&
      (cfg.grid.m != 51 || cfg.grid.lower != -1.0 || cfg.grid.upper != 0.0)) {
    fail("objective", "res_surrogate requires the 51-point grid on [-1, 0]");
  }
  if (cfg.objective.kind == "gp_draw" && !cfg.objective.model) {
    fail("objective.model", "gp_draw needs a model");
  }

  // model family for fitting
  CovFamily family = CovFamily::kMatern52;
  if (doc.contains("model")) {
    const json& mdl = doc.at("model");
    expect_keys(mdl, "model", {"family"});
    const std::string name = get_or<std::string>(mdl, "model", "family", "matern52");
    const auto parsed = family_from_name(name);
    if (!parsed) fail("model.family", "unknown family '" + name + "'");
    family = *parsed;
  }

  // fit options
  FitOptions fit;
  fit.bounds = FitBounds::defaults(1, span);
  if (doc.contains("fit")) {
    const json& f = doc.at("fit");
    expect_keys(f, "fit",
                {"restarts", "warm_restarts", "variance_bounds", "lengthscale_bounds"});
    fit.restarts = get_or<int>(f, "fit", "restarts", fit.restarts);
    fit.warm_restarts = get_or<int>(f, "fit", "warm_restarts", fit.warm_restarts);
    if (f.contains("variance_bounds")) {
      const json& b = f.at("variance_bounds");
      if (!b.is_array() || b.size() != 2) fail("fit.variance_bounds", "expected [lo, hi]");
      fit.bounds.variance_lo = b[0].get<double>();
      fit.bounds.variance_hi = b[1].get<double>();
    }
    if (f.contains("lengthscale_bounds")) {
      const json& b = f.at("lengthscale_bounds");
      if (!b.is_array() || b.size() != 2) {
        fail("fit.lengthscale_bounds", "expected [lo, hi]");
      }
      fit.bounds.lengthscale_lo = Eigen::VectorXd::Constant(1, b[0].get<double>());
      fit.bounds.lengthscale_hi = Eigen::VectorXd::Constant(1, b[1].get<double>());
    }
  }
  if (fit.restarts < 1) fail("fit.restarts", "must be >= 1");
  if (fit.warm_restarts < 0) fail("fit.warm_restarts", "must be >= 0");
  try {
    fit.bounds.validate(1);
  } catch (const std::invalid_argument& e) {
    fail("fit", e.what());
  }

  // optimizer
  OptimizerConfig& opt = cfg.optimizer;
  opt.family = family;
  opt.fit = fit;
  opt.seed = cfg.seed;
  opt.noise_variance = cfg.objective.noise_std * cfg.objective.noise_std;
  if (doc.contains("optimizer")) {
    const json& o = doc.at("optimizer");
    expect_keys(o, "optimizer",
                {"budget", "actual_batch", "virtual_batch", "paths", "quad_order",
                 "init_batches", "refit_every", "policy"});
    opt.budget = get_or<std::int64_t>(o, "optimizer", "budget", opt.budget);
    opt.actual_batch = get_or<int>(o, "optimizer", "actual_batch", opt.actual_batch);
    if (o.contains("virtual_batch")) {
      opt.virtual_batch = parse_batch(o.at("virtual_batch"), "optimizer.virtual_batch");
    }
    opt.paths = get_or<int>(o, "optimizer", "paths", opt.paths);
    opt.quad_order = get_or<int>(o, "optimizer", "quad_order", opt.quad_order);
    opt.init_batches = get_or<int>(o, "optimizer", "init_batches", opt.init_batches);
    opt.refit_every = get_or<int>(o, "optimizer", "refit_every", opt.refit_every);
    if (o.contains("policy")) {
      const std::string name = o.at("policy").get<std::string>();
      const auto parsed = policy_from_name(name);
      if (!parsed) fail("optimizer.policy", "unknown policy '" + name + "'");
      opt.policy = *parsed;
    }
  }

  // bench section
  cfg.bench_policies = {PolicySpec{Policy::kIid, VirtualBatchSize::infinite()},
                        PolicySpec{Policy::kIago, VirtualBatchSize::finite(10)},
                        PolicySpec{Policy::kIago, VirtualBatchSize::infinite()}};
  if (doc.contains("bench")) {
    const json& b = doc.at("bench");
    expect_keys(b, "bench", {"runs", "checkpoints", "policies"});
    cfg.bench_runs = get_or<int>(b, "bench", "runs", cfg.bench_runs);
    if (b.contains("checkpoints")) {
      const json& c = b.at("checkpoints");
      if (!c.is_array()) fail("bench.checkpoints", "expected an array");
      cfg.bench_checkpoints.clear();
      for (const auto& v : c) {
        if (!v.is_number_integer()) fail("bench.checkpoints", "expected integers");
        cfg.bench_checkpoints.push_back(v.get<std::int64_t>());
      }
    }
    if (b.contains("policies")) {
      const json& ps = b.at("policies");
      if (!ps.is_array() || ps.empty()) fail("bench.policies", "expected a nonempty array");
      cfg.bench_policies.clear();
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::string where = "bench.policies[" + std::to_string(i) + "]";
        const json& p = ps[i];
        expect_keys(p, where, {"policy", "virtual_batch"});
        PolicySpec spec;
        const std::string name = get_or<std::string>(p, where, "policy", "iid");
        const auto parsed = policy_from_name(name);
        if (!parsed) fail(where + ".policy", "unknown policy '" + name + "'");
        spec.policy = *parsed;
        if (p.contains("virtual_batch")) {
          spec.virtual_batch = parse_batch(p.at("virtual_batch"), where + ".virtual_batch");
        }
        cfg.bench_policies.push_back(spec);
      }
    }
  }
  if (cfg.bench_runs < 1) fail("bench.runs", "must be >= 1");

  // criterion-noise section
  CriterionNoiseConfig& study = cfg.criterion_noise;
  study.virtual_batches = {VirtualBatchSize::finite(1), VirtualBatchSize::finite(10),
                           VirtualBatchSize::finite(100), VirtualBatchSize::infinite()};
  study.paths = opt.paths;
  study.quad_order = opt.quad_order;
  study.init_batches = opt.init_batches;
  study.actual_batch = opt.actual_batch;
  study.family = family;
  study.fit = fit;
  study.noise_variance = opt.noise_variance;
  study.seed = cfg.seed;
  if (doc.contains("criterion_noise")) {
    const json& s = doc.at("criterion_noise");
    expect_keys(s, "criterion_noise",
                {"replicates", "virtual_batches", "fit_model", "model"});
    study.replicates = get_or<int>(s, "criterion_noise", "replicates", study.replicates);
    if (s.contains("virtual_batches")) {
      const json& ks = s.at("virtual_batches");
      if (!ks.is_array() || ks.empty()) {
        fail("criterion_noise.virtual_batches", "expected a nonempty array");
      }
      study.virtual_batches.clear();
      for (const auto& v : ks) {
        study.virtual_batches.push_back(parse_batch(v, "criterion_noise.virtual_batches"));
      }
    }
    study.fit_model = get_or<bool>(s, "criterion_noise", "fit_model", study.fit_model);
    if (s.contains("model")) {
      study.fixed_model = parse_model(s.at("model"), "criterion_noise.model", 1);
    }
  }
  if (study.replicates < 2) fail("criterion_noise.replicates", "must be >= 2");
  if (!study.fit_model && !study.fixed_model) {
    fail("criterion_noise", "fit_model=false needs criterion_noise.model");
  }
  return cfg;
}

nlohmann::ordered_json resolved_config(const HarnessConfig& config) {
  nlohmann::ordered_json doc;
  doc["seed"] = config.seed;
  doc["grid"] = {{"lower", config.grid.lower},
                 {"upper", config.grid.upper},
                 {"m", config.grid.m}};
  nlohmann::ordered_json obj;
  obj["kind"] = config.objective.kind;
  obj["noise_std"] = config.objective.noise_std;
  if (config.objective.kind == "gp_draw") {
    obj["seed"] = config.objective.seed;
    obj["model"] = {{"family", family_name(config.objective.model->family)},
                    {"process_variance", config.objective.model->process_variance},
                    {"lengthscales",
                     std::vector<double>(config.objective.model->lengthscales.begin(),
                                         config.objective.model->lengthscales.end())}};
  }
  doc["objective"] = obj;
  doc["model"] = {{"family", family_name(config.optimizer.family)}};
  doc["fit"] = {{"restarts", config.optimizer.fit.restarts},
                {"warm_restarts", config.optimizer.fit.warm_restarts},
                {"variance_bounds",
                 {config.optimizer.fit.bounds.variance_lo,
                  config.optimizer.fit.bounds.variance_hi}},
                {"lengthscale_bounds",
                 {config.optimizer.fit.bounds.lengthscale_lo(0),
                  config.optimizer.fit.bounds.lengthscale_hi(0)}}};
  doc["optimizer"] = {{"budget", config.optimizer.budget},
                      {"actual_batch", config.optimizer.actual_batch},
                      {"virtual_batch", batch_to_json(config.optimizer.virtual_batch)},
                      {"paths", config.optimizer.paths},
                      {"quad_order", config.optimizer.quad_order},
                      {"init_batches", config.optimizer.init_batches},
                      {"refit_every", config.optimizer.refit_every},
                      {"policy", policy_name(config.optimizer.policy)}};
  nlohmann::ordered_json policies = nlohmann::ordered_json::array();
  for (const PolicySpec& p : config.bench_policies) {
    policies.push_back({{"policy", policy_name(p.policy)},
                        {"virtual_batch", batch_to_json(p.virtual_batch)}});
  }
  nlohmann::ordered_json bench;
  bench["runs"] = config.bench_runs;
  if (!config.bench_checkpoints.empty()) bench["checkpoints"] = config.bench_checkpoints;
  bench["policies"] = policies;
  doc["bench"] = bench;
  nlohmann::ordered_json ks = nlohmann::ordered_json::array();
  for (const VirtualBatchSize& k : config.criterion_noise.virtual_batches) {
    if (k.is_infinite()) {
      ks.push_back("inf");
    } else {
      ks.push_back(k.count());
    }
  }
  nlohmann::ordered_json study;
  study["replicates"] = config.criterion_noise.replicates;
  study["virtual_batches"] = ks;
  study["fit_model"] = config.criterion_noise.fit_model;
  doc["criterion_noise"] = study;
  return doc;
}

CandidateGrid make_grid(const HarnessConfig& config) {
  return CandidateGrid::linspace(config.grid.lower, config.grid.upper, config.grid.m);
}

NoisyObjective make_objective(const HarnessConfig& config, const CandidateGrid& grid) {
  if (config.objective.kind == "res_surrogate") {
    return make_res_surrogate(config.objective.noise_std);
  }
  return make_gp_draw_objective(*config.objective.model, grid,
                                config.objective.noise_std, config.objective.seed);
}

}  // namespace iago
