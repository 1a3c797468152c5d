#include "iago/io.hpp"

#include <fstream>
#include <ostream>

#include "iago/errors.hpp"

namespace iago {

namespace {

using nlohmann::ordered_json;

ordered_json spec_json(const CovarianceSpec& spec) {
  return {{"family", family_name(spec.family)},
          {"process_variance", spec.process_variance},
          {"lengthscales",
           std::vector<double>(spec.lengthscales.begin(), spec.lengthscales.end())}};
}

std::vector<double> point_coords(const CandidateGrid& grid, int index) {
  const Eigen::RowVectorXd p = grid.point(index);
  return std::vector<double>(p.begin(), p.end());
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot open output file " + path.string());
  }
  return out;
}

}  // namespace

ordered_json trace_record_json(const RunTrace& trace, std::size_t iteration,
                               const CandidateGrid& grid, int run_index,
                               const std::string& policy_label) {
  const IterationRecord& rec = trace.records.at(iteration);
  ordered_json line;
  line["run"] = run_index;
  line["iter"] = iteration + 1;
  line["policy"] = policy_label;
  line["chosen_index"] = rec.chosen_index;
  line["values"] = rec.raw_values;
  line["xhat"] = point_coords(grid, rec.xhat_index);
  line["xhat_index"] = rec.xhat_index;
  line["Mhat"] = rec.mhat;
  line["H"] = rec.entropy;
  line["hyper"] = spec_json(rec.hyper);
  return line;
}

void write_trace_jsonl(const RunTrace& trace, const CandidateGrid& grid, int run_index,
                       const std::string& policy_label, std::ostream& out) {
  for (std::size_t t = 0; t < trace.records.size(); ++t) {
    out << trace_record_json(trace, t, grid, run_index, policy_label).dump() << "\n";
  }
}

ordered_json run_meta_json(const RunTrace& trace, const CandidateGrid& grid) {
  ordered_json meta;
  meta["objective"] = trace.objective_label;
  meta["entropy_units"] = "nats";
  meta["policy"] = policy_name(trace.config.policy);
  meta["virtual_batch"] = trace.config.virtual_batch.is_infinite()
                              ? ordered_json("inf")
                              : ordered_json(trace.config.virtual_batch.count());
  meta["seed"] = trace.config.seed;
  meta["standardization"] = {{"mean", trace.standardization.mean},
                             {"stdev", trace.standardization.stdev}};
  meta["init_indices"] = trace.init_indices;
  meta["init_raw_values"] = trace.init_raw_values;
  meta["initial"] = {{"xhat", point_coords(grid, trace.initial_xhat_index)},
                     {"xhat_index", trace.initial_xhat_index},
                     {"Mhat", trace.initial_mhat},
                     {"H", trace.initial_entropy},
                     {"hyper", spec_json(trace.initial_hyper)}};
  meta["raw_evaluations"] = trace.raw_evaluations;
  meta["profile_builds"] = trace.profile_builds;
  meta["iterations"] = trace.records.size();
  if (!trace.records.empty()) {
    const IterationRecord& last = trace.records.back();
    meta["final"] = {{"xhat", point_coords(grid, last.xhat_index)},
                     {"xhat_index", last.xhat_index},
                     {"Mhat", last.mhat},
                     {"H", last.entropy},
                     {"hyper", spec_json(last.hyper)}};
  }
  return meta;
}

void write_summary_csv(const BenchmarkSummary& summary, std::ostream& out) {
  out << "policy,checkpoint_n,stat,p05,p25,p50,p75,p95\n";
  out.precision(17);
  for (const SummaryRow& row : summary.rows) {
    out << row.policy << "," << row.checkpoint_n << "," << row.stat << "," << row.p05
        << "," << row.p25 << "," << row.p50 << "," << row.p75 << "," << row.p95
        << "\n";
  }
}

int write_bench_outputs(const BenchResult& result, const CandidateGrid& grid,
                        const ordered_json& config_json,
                        const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "traces");
  int files = 0;

  for (const RunOutcome& outcome : result.outcomes) {
    if (!outcome.trace) continue;
    const std::string name =
        outcome.policy.label() + "_run" + std::to_string(outcome.run_index) + ".jsonl";
    std::ofstream out = open_out(dir / "traces" / name);
    write_trace_jsonl(*outcome.trace, grid, outcome.run_index, outcome.policy.label(),
                      out);
    ++files;
  }

  {
    std::ofstream out = open_out(dir / "summary.csv");
    write_summary_csv(result.summary, out);
    ++files;
  }

  ordered_json meta;
  meta["config"] = config_json;
  meta["entropy_units"] = "nats";
  meta["checkpoints"] = result.checkpoints;
  meta["completed_runs"] = result.summary.completed_runs;
  meta["failed_runs"] = result.summary.failed_runs;
  ordered_json runs = ordered_json::array();
  for (const RunOutcome& outcome : result.outcomes) {
    ordered_json entry;
    entry["policy"] = outcome.policy.label();
    entry["run"] = outcome.run_index;
    entry["seed"] = outcome.seed;
    entry["ok"] = outcome.ok;
    if (!outcome.ok) entry["error"] = outcome.error;
    if (outcome.trace) {
      const RunTrace& trace = *outcome.trace;
      entry["standardization"] = {{"mean", trace.standardization.mean},
                                  {"stdev", trace.standardization.stdev}};
      entry["initial"] = {{"xhat", point_coords(grid, trace.initial_xhat_index)},
                          {"xhat_index", trace.initial_xhat_index},
                          {"Mhat", trace.initial_mhat},
                          {"H", trace.initial_entropy}};
      entry["profile_builds"] = trace.profile_builds;
      entry["raw_evaluations"] = trace.raw_evaluations;
    }
    runs.push_back(entry);
  }
  meta["runs"] = runs;
  {
    std::ofstream out = open_out(dir / "bench_meta.json");
    out << meta.dump(2) << "\n";
    ++files;
  }
  return files;
}

ordered_json criterion_noise_report_json(const CriterionNoiseReport& report,
                                         const ordered_json& config_json) {
  ordered_json doc;
  doc["config"] = config_json;
  doc["entropy_units"] = "nats";
  doc["seed"] = report.seed;
  doc["standardization"] = {{"mean", report.standardization.mean},
                            {"stdev", report.standardization.stdev}};
  doc["model"] = spec_json(report.model);
  doc["init_indices"] = report.init_indices;
  ordered_json entries = ordered_json::array();
  for (const CriterionNoiseEntry& entry : report.entries) {
    ordered_json e;
    e["virtual_batch"] = entry.virtual_batch.is_infinite()
                             ? ordered_json("inf")
                             : ordered_json(entry.virtual_batch.count());
    e["dispersion_ratio"] = entry.dispersion_ratio;
    e["mean_replicate_sd"] = entry.mean_replicate_sd;
    e["mean_profile_range"] = entry.mean_profile_range;
    e["mean_profile"] =
        std::vector<double>(entry.mean_profile.begin(), entry.mean_profile.end());
    ordered_json profiles = ordered_json::array();
    for (const Eigen::VectorXd& p : entry.profiles) {
      profiles.push_back(std::vector<double>(p.begin(), p.end()));
    }
    e["profiles"] = profiles;
    entries.push_back(e);
  }
  doc["entries"] = entries;
  return doc;
}

}  // namespace iago
