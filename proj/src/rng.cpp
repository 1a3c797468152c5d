#include "iago/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace iago {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline double to_unit(std::uint64_t bits) noexcept {
  // Top 53 bits give a uniform double in [0, 1).
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double box_muller(double u1, double u2) noexcept {
  // u1 in (0, 1], u2 in [0, 1).
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> parts) noexcept {
  std::uint64_t s = mix64(base);
  for (std::uint64_t p : parts) {
    s = mix64(s ^ (p + kGolden));
  }
  return s;
}

double Rng::uniform01() { return to_unit(engine_()); }

double Rng::normal() {
  const double u1 = 1.0 - to_unit(engine_());  // (0, 1], keeps log finite
  const double u2 = to_unit(engine_());
  return box_muller(u1, u2);
}

std::size_t Rng::uniform_index(std::size_t m) {
  if (m == 0) {
    throw std::invalid_argument("uniform_index: m must be positive");
  }
  const std::uint64_t m64 = static_cast<std::uint64_t>(m);
  // Rejection sampling over the largest multiple of m below 2^64.
  const std::uint64_t rem =
      (std::numeric_limits<std::uint64_t>::max() % m64 + 1) % m64;
  std::uint64_t r = engine_();
  while (rem != 0 && r > std::numeric_limits<std::uint64_t>::max() - rem) {
    r = engine_();
  }
  return static_cast<std::size_t>(r % m64);
}

double counter_normal(std::uint64_t seed) noexcept {
  // Two steps of the splitmix64 stream seeded at `seed`.
  std::uint64_t s = seed;
  const std::uint64_t a = mix64(s);
  s += kGolden;
  const std::uint64_t b = mix64(s);
  return box_muller(1.0 - to_unit(a), to_unit(b));
}

}  // namespace iago
