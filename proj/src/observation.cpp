#include "iago/observation.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace iago {

BatchSize BatchSize::finite(std::int64_t k) {
  if (k < 1) {
    throw std::invalid_argument("BatchSize: count must be >= 1");
  }
  return BatchSize(k);
}

std::int64_t BatchSize::count() const {
  if (is_infinite()) {
    throw std::logic_error("BatchSize: infinite batch has no finite count");
  }
  return k_;
}

std::string BatchSize::to_string() const {
  return is_infinite() ? "inf" : std::to_string(k_);
}

void NoiseModel::validate() const {
  if (!(variance >= 0.0) || !std::isfinite(variance)) {
    throw std::invalid_argument("NoiseModel: variance must be >= 0");
  }
}

Observation fuse_batch(int grid_index, std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("fuse_batch: empty value list");
  }
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  return Observation{grid_index, sum / static_cast<double>(values.size()),
                     BatchSize::finite(static_cast<std::int64_t>(values.size()))};
}

}  // namespace iago
