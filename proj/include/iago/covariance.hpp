#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <string_view>

namespace iago {

enum class CovFamily { kMatern52, kMatern32, kSquaredExponential };

const char* family_name(CovFamily family);
std::optional<CovFamily> family_from_name(std::string_view name);

/// Stationary prior covariance of the process. Distances are scaled per
/// dimension: r^2 = sum_i ((a_i - b_i) / lengthscale_i)^2, then
///   squared-exponential: v * exp(-r^2 / 2)
///   Matern-5/2:          v * (1 + sqrt(5) r + 5 r^2 / 3) exp(-sqrt(5) r)
///   Matern-3/2:          v * (1 + sqrt(3) r) exp(-sqrt(3) r)
struct CovarianceSpec {
  CovFamily family = CovFamily::kMatern52;
  double process_variance = 1.0;
  Eigen::VectorXd lengthscales;  // one per input dimension

  /// Throws std::invalid_argument on non-positive hyperparameters.
  void validate() const;
};

/// Covariance of one pair of locations.
double cov_value(const CovarianceSpec& spec, const Eigen::RowVectorXd& a,
                 const Eigen::RowVectorXd& b);

/// Cross-covariance matrix, entry (i, j) = k(A.row(i), B.row(j)).
Eigen::MatrixXd cov_matrix(const CovarianceSpec& spec, const Eigen::MatrixXd& A,
                           const Eigen::MatrixXd& B);

}  // namespace iago
