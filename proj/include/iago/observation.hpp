#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace iago {

/// Count of same-point evaluations behind one observation; may be infinite.
/// An infinite batch encodes an exact (noise-free) value: the effective
/// observation noise sigma^2 / k is implemented as exactly 0.
class BatchSize {
 public:
  static BatchSize finite(std::int64_t k);
  static BatchSize infinite() { return BatchSize(kInfinite); }

  bool is_infinite() const { return k_ == kInfinite; }
  std::int64_t count() const;  // throws if infinite

  /// sigma^2 / k; exactly 0 for an infinite batch.
  double effective_noise_variance(double sigma2) const {
    return is_infinite() ? 0.0 : sigma2 / static_cast<double>(k_);
  }

  bool operator==(const BatchSize& other) const = default;

  std::string to_string() const;

 private:
  static constexpr std::int64_t kInfinite = -1;
  explicit BatchSize(std::int64_t k) : k_(k) {}
  std::int64_t k_;
};

/// Known, constant evaluation-noise variance (single raw evaluation).
struct NoiseModel {
  double variance = 0.0;

  void validate() const;  // throws std::invalid_argument if negative
};

/// One (possibly fused) observation at a grid point.
struct Observation {
  int grid_index = 0;
  double value = 0.0;
  BatchSize batch_count = BatchSize::finite(1);
};

using ObservationSet = std::vector<Observation>;

/// Reduces K raw same-point values to their mean with batch_count = K, so
/// the fused observation carries noise sigma^2 / K. Conditioning on it is
/// exactly equivalent to conditioning on the K raw values.
Observation fuse_batch(int grid_index, std::span<const double> values);

}  // namespace iago
