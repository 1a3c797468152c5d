#include "iago/covariance.hpp"

#include <cmath>
#include <stdexcept>

namespace iago {

namespace {

constexpr double kSqrt5 = 2.23606797749978969;
constexpr double kSqrt3 = 1.73205080756887729;

double shape(CovFamily family, double r) {
  switch (family) {
    case CovFamily::kSquaredExponential:
      return std::exp(-0.5 * r * r);
    case CovFamily::kMatern52:
      return (1.0 + kSqrt5 * r + 5.0 * r * r / 3.0) * std::exp(-kSqrt5 * r);
    case CovFamily::kMatern32:
      return (1.0 + kSqrt3 * r) * std::exp(-kSqrt3 * r);
  }
  throw std::logic_error("unknown covariance family");
}

double scaled_distance(const CovarianceSpec& spec, const Eigen::RowVectorXd& a,
                       const Eigen::RowVectorXd& b) {
  double r2 = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const double d = (a(k) - b(k)) / spec.lengthscales(k);
    r2 += d * d;
  }
  return std::sqrt(r2);
}

}  // namespace

const char* family_name(CovFamily family) {
  switch (family) {
    case CovFamily::kMatern52:
      return "matern52";
    case CovFamily::kMatern32:
      return "matern32";
    case CovFamily::kSquaredExponential:
      return "squared_exponential";
  }
  return "unknown";
}

std::optional<CovFamily> family_from_name(std::string_view name) {
  if (name == "matern52") return CovFamily::kMatern52;
  if (name == "matern32") return CovFamily::kMatern32;
  if (name == "squared_exponential") return CovFamily::kSquaredExponential;
  return std::nullopt;
}

void CovarianceSpec::validate() const {
  if (!(process_variance > 0.0) || !std::isfinite(process_variance)) {
    throw std::invalid_argument("CovarianceSpec: process_variance must be positive");
  }
  if (lengthscales.size() < 1) {
    throw std::invalid_argument("CovarianceSpec: need at least one lengthscale");
  }
  for (Eigen::Index k = 0; k < lengthscales.size(); ++k) {
    if (!(lengthscales(k) > 0.0) || !std::isfinite(lengthscales(k))) {
      throw std::invalid_argument("CovarianceSpec: lengthscales must be positive");
    }
  }
}

double cov_value(const CovarianceSpec& spec, const Eigen::RowVectorXd& a,
                 const Eigen::RowVectorXd& b) {
  return spec.process_variance * shape(spec.family, scaled_distance(spec, a, b));
}

Eigen::MatrixXd cov_matrix(const CovarianceSpec& spec, const Eigen::MatrixXd& A,
                           const Eigen::MatrixXd& B) {
  spec.validate();
  if (A.cols() != B.cols() || A.cols() != spec.lengthscales.size()) {
    throw std::invalid_argument("cov_matrix: dimension mismatch");
  }
  Eigen::MatrixXd K(A.rows(), B.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < B.rows(); ++j) {
      K(i, j) = spec.process_variance *
                shape(spec.family, scaled_distance(spec, A.row(i), B.row(j)));
    }
  }
  return K;
}

}  // namespace iago
