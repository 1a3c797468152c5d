// Command-line harness: criterion-noise study, single optimization run, and
// the multi-run policy benchmark. All result files are byte-reproducible for
// a fixed config and seed; wall-clock timestamps go only to the sidecar log.

#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "iago/bench.hpp"
#include "iago/config.hpp"
#include "iago/errors.hpp"
#include "iago/io.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::string out_dir = "iago_out";
  int threads = 0;  // 0 = hardware concurrency
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_runs) {
  cmd->add_option("config", opts.config_path, "path to the JSON config file")
      ->required();
  cmd->add_option("--seed", opts.seed, "override the master seed");
  if (with_runs) {
    cmd->add_option("--runs", opts.runs, "override the number of runs per policy");
  }
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--threads", opts.threads, "worker threads (0 = all cores)");
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

iago::HarnessConfig load(const CommonOptions& opts) {
  iago::HarnessConfig cfg = iago::load_config(opts.config_path);
  if (opts.seed) {
    cfg.seed = *opts.seed;
    cfg.optimizer.seed = *opts.seed;
    cfg.criterion_noise.seed = *opts.seed;
  }
  if (opts.runs) cfg.bench_runs = *opts.runs;
  return cfg;
}

// Timestamps are confined to this sidecar so result files stay reproducible.
void write_log(const std::filesystem::path& dir, const std::string& command,
               double elapsed_seconds) {
  std::ofstream log(dir / "run.log", std::ios::app);
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[64];
  std::strftime(stamp, sizeof stamp, "%F %T", std::gmtime(&now));
  log << stamp << " " << command << " finished in " << elapsed_seconds << " s\n";
}

int run_criterion_noise(const CommonOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  iago::HarnessConfig cfg = load(opts);
  cfg.criterion_noise.threads = resolve_threads(opts.threads);

  const iago::CandidateGrid grid = iago::make_grid(cfg);
  const iago::NoisyObjective objective = iago::make_objective(cfg, grid);
  const iago::CriterionNoiseReport report =
      iago::criterion_noise_study(cfg.criterion_noise, objective, grid);

  std::filesystem::create_directories(opts.out_dir);
  {
    std::ofstream out(std::filesystem::path(opts.out_dir) / "criterion_noise.json",
                      std::ios::binary);
    out << iago::criterion_noise_report_json(report, iago::resolved_config(cfg)).dump(2)
        << "\n";
  }
  for (const iago::CriterionNoiseEntry& entry : report.entries) {
    std::cout << "K=" << entry.virtual_batch.to_string()
              << " rho=" << entry.dispersion_ratio << "\n";
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  write_log(opts.out_dir, "criterion-noise", elapsed.count());
  return 0;
}

int run_optimize(const CommonOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  iago::HarnessConfig cfg = load(opts);
  cfg.optimizer.profile_threads = resolve_threads(opts.threads);

  const iago::CandidateGrid grid = iago::make_grid(cfg);
  const iago::NoisyObjective objective = iago::make_objective(cfg, grid);
  const iago::RunTrace trace = iago::run(cfg.optimizer, objective, grid);

  std::filesystem::create_directories(opts.out_dir);
  {
    std::ofstream out(std::filesystem::path(opts.out_dir) / "trace.jsonl",
                      std::ios::binary);
    iago::write_trace_jsonl(trace, grid, 0, iago::policy_name(cfg.optimizer.policy), out);
  }
  {
    nlohmann::ordered_json meta = iago::run_meta_json(trace, grid);
    meta["config"] = iago::resolved_config(cfg);
    std::ofstream out(std::filesystem::path(opts.out_dir) / "run_meta.json",
                      std::ios::binary);
    out << meta.dump(2) << "\n";
  }
  if (!trace.records.empty()) {
    const iago::IterationRecord& last = trace.records.back();
    std::cout << "xhat=" << grid.coordinate(last.xhat_index) << " Mhat=" << last.mhat
              << " H=" << last.entropy << "\n";
  } else {
    std::cout << "xhat=" << grid.coordinate(trace.initial_xhat_index)
              << " Mhat=" << trace.initial_mhat << " H=" << trace.initial_entropy
              << "\n";
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  write_log(opts.out_dir, "optimize", elapsed.count());
  return 0;
}

int run_bench(const CommonOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  iago::HarnessConfig cfg = load(opts);

  iago::BenchConfig bench_config;
  bench_config.base = cfg.optimizer;
  bench_config.policies = cfg.bench_policies;
  bench_config.runs = cfg.bench_runs;
  bench_config.checkpoints = cfg.bench_checkpoints;
  bench_config.master_seed = cfg.seed;
  bench_config.threads = resolve_threads(opts.threads);

  const iago::CandidateGrid grid = iago::make_grid(cfg);
  const iago::NoisyObjective objective = iago::make_objective(cfg, grid);
  const iago::BenchResult result = iago::bench(bench_config, objective, grid);

  std::filesystem::create_directories(opts.out_dir);
  iago::write_bench_outputs(result, grid, iago::resolved_config(cfg), opts.out_dir);

  std::cout << "completed_runs=" << result.summary.completed_runs
            << " failed_runs=" << result.summary.failed_runs << "\n";
  if (result.summary.failed_runs > 0) {
    std::cerr << "warning: " << result.summary.failed_runs
              << " run(s) aborted; summary covers completed runs only\n";
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  write_log(opts.out_dir, "bench", elapsed.count());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IAGO noisy-optimization harness"};
  app.require_subcommand(1);

  CommonOptions noise_opts;
  CLI::App* noise_cmd = app.add_subcommand(
      "criterion-noise", "replicate dispersion of the sampling criterion per K");
  add_common(noise_cmd, noise_opts, false);

  CommonOptions optimize_opts;
  CLI::App* optimize_cmd =
      app.add_subcommand("optimize", "one sequential optimization run");
  add_common(optimize_cmd, optimize_opts, false);

  CommonOptions bench_opts;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "multi-run policy comparison with summaries");
  add_common(bench_cmd, bench_opts, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (noise_cmd->parsed()) return run_criterion_noise(noise_opts);
    if (optimize_cmd->parsed()) return run_optimize(optimize_opts);
    if (bench_cmd->parsed()) return run_bench(bench_opts);
  } catch (const iago::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const iago::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
