#pragma once

#include <Eigen/Dense>

namespace iago {

/// The finite search set: m candidate locations in R^d, one per row.
/// Indexing is stable for the lifetime of a run; every other module refers
/// to candidates by their row index here.
class CandidateGrid {
 public:
  /// points: m x d, rows pairwise distinct, m >= 2.
  explicit CandidateGrid(Eigen::MatrixXd points);

  /// m equally spaced points on [lower, upper], d = 1.
  static CandidateGrid linspace(double lower, double upper, int m);

  int size() const { return static_cast<int>(points_.rows()); }
  int dim() const { return static_cast<int>(points_.cols()); }
  const Eigen::MatrixXd& points() const { return points_; }
  Eigen::RowVectorXd point(int i) const { return points_.row(i); }

  /// First coordinate of point i; the natural scalar for d = 1 grids.
  double coordinate(int i) const { return points_(i, 0); }

 private:
  Eigen::MatrixXd points_;
};

}  // namespace iago
