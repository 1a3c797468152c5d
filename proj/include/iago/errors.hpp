#pragma once

#include <stdexcept>
#include <string>

namespace iago {

/// Conditioning or factorization failure. Carries the jitter value that was
/// in effect when the factorization gave up.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, double attempted_jitter = 0.0)
      : std::runtime_error(what), attempted_jitter_(attempted_jitter) {}

  double attempted_jitter() const noexcept { return attempted_jitter_; }

 private:
  double attempted_jitter_;
};

/// Malformed or inconsistent harness configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace iago
