#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace iago {

/// splitmix64 finalizer. Bijective on 64-bit words, used to derive
/// decorrelated seed streams from (seed, tag...) tuples.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Chains mix64 over the parts so that every (base, parts...) tuple maps to
/// its own seed. Ordering of the parts matters.
std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> parts) noexcept;

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a) noexcept {
  return derive_seed(base, {a});
}
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b) noexcept {
  return derive_seed(base, {a, b});
}
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b, std::uint64_t c) noexcept {
  return derive_seed(base, {a, b, c});
}

/// Deterministic uniform/normal source. mt19937_64 fixes the bit stream
/// across platforms; the uniform and normal transforms are done here rather
/// than with std:: distributions, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double uniform01();

  /// Standard normal via Box-Muller. Consumes exactly two engine draws.
  double normal();

  /// Unbiased uniform index in [0, m). m must be positive.
  std::size_t uniform_index(std::size_t m);

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// One standard-normal draw from a bare counter-derived seed, with no stream
/// state. Backs the per-(path, node, candidate) fantasy-noise draws, which
/// must not depend on evaluation order.
double counter_normal(std::uint64_t seed) noexcept;

}  // namespace iago
