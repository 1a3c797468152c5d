#include "iago/grid.hpp"

#include <stdexcept>

namespace iago {

CandidateGrid::CandidateGrid(Eigen::MatrixXd points) : points_(std::move(points)) {
  const auto m = points_.rows();
  if (m < 2) {
    throw std::invalid_argument("CandidateGrid: need at least 2 points");
  }
  if (points_.cols() < 1) {
    throw std::invalid_argument("CandidateGrid: need at least 1 dimension");
  }
  if (!points_.allFinite()) {
    throw std::invalid_argument("CandidateGrid: points must be finite");
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      if (points_.row(i) == points_.row(j)) {
        throw std::invalid_argument("CandidateGrid: points must be pairwise distinct");
      }
    }
  }
}

CandidateGrid CandidateGrid::linspace(double lower, double upper, int m) {
  if (m < 2) {
    throw std::invalid_argument("CandidateGrid::linspace: m must be >= 2");
  }
  if (!(lower < upper)) {
    throw std::invalid_argument("CandidateGrid::linspace: lower must be < upper");
  }
  Eigen::MatrixXd pts(m, 1);
  pts.col(0) = Eigen::VectorXd::LinSpaced(m, lower, upper);
  return CandidateGrid(std::move(pts));
}

}  // namespace iago
