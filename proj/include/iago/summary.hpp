#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace iago {

/// Linear-interpolation percentile estimator (levels in [0, 100]); level 0
/// is the minimum and level 100 the maximum. Idempotent on sorted input.
std::vector<double> percentiles(std::vector<double> samples,
                                const std::vector<double>& levels);

/// One summary line: the 5/25/50/75/95 percentiles of one statistic of one
/// policy at one evaluation-count checkpoint, over the completed runs.
struct SummaryRow {
  std::string policy;
  std::int64_t checkpoint_n = 0;
  std::string stat;  // "xhat" | "mhat" | "entropy"
  double p05 = 0.0;
  double p25 = 0.0;
  double p50 = 0.0;
  double p75 = 0.0;
  double p95 = 0.0;
};

struct BenchmarkSummary {
  std::vector<SummaryRow> rows;
  int completed_runs = 0;
  int failed_runs = 0;
};

}  // namespace iago
