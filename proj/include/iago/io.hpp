#pragma once

#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>

#include "iago/bench.hpp"
#include "iago/config.hpp"

namespace iago {

/// One iteration as a line-delimited record. `run` and `policy` identify the
/// trace inside a multi-run benchmark.
nlohmann::ordered_json trace_record_json(const RunTrace& trace, std::size_t iteration,
                                         const CandidateGrid& grid, int run_index,
                                         const std::string& policy_label);

/// Writes the whole trace, one record per line.
void write_trace_jsonl(const RunTrace& trace, const CandidateGrid& grid, int run_index,
                       const std::string& policy_label, std::ostream& out);

/// Run-level metadata: resolved config, standardization, seeds, the
/// initial-design state and the final estimates.
nlohmann::ordered_json run_meta_json(const RunTrace& trace, const CandidateGrid& grid);

/// bench outputs under dir: traces/<policy>_run<k>.jsonl, summary.csv and
/// bench_meta.json. Returns the number of files written.
int write_bench_outputs(const BenchResult& result, const CandidateGrid& grid,
                        const nlohmann::ordered_json& config_json,
                        const std::filesystem::path& dir);

void write_summary_csv(const BenchmarkSummary& summary, std::ostream& out);

nlohmann::ordered_json criterion_noise_report_json(
    const CriterionNoiseReport& report, const nlohmann::ordered_json& config_json);

}  // namespace iago
