#include "iago/summary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iago {

std::vector<double> percentiles(std::vector<double> samples,
                                const std::vector<double>& levels) {
  if (samples.empty()) {
    throw std::invalid_argument("percentiles: empty sample list");
  }
  std::sort(samples.begin(), samples.end());
  std::vector<double> out;
  out.reserve(levels.size());
  const auto n = samples.size();
  for (const double level : levels) {
    if (!(level >= 0.0) || !(level <= 100.0)) {
      throw std::invalid_argument("percentiles: level must be in [0, 100]");
    }
    const double rank = level / 100.0 * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const auto hi = std::min(lo + 1, n - 1);
    const double frac = rank - static_cast<double>(lo);
    out.push_back(samples[lo] + frac * (samples[hi] - samples[lo]));
  }
  return out;
}

}  // namespace iago
