#include "iago/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "iago/errors.hpp"

namespace iago {

QuadratureRule gauss_hermite(int order) {
  if (order < 1 || order > 64) {
    throw std::invalid_argument("gauss_hermite: order must be in [1, 64]");
  }
  if (order == 1) {
    QuadratureRule rule;
    rule.nodes = Eigen::VectorXd::Zero(1);
    rule.weights = Eigen::VectorXd::Ones(1);
    rule.order = 1;
    return rule;
  }
  // Jacobi matrix of He_n: zero diagonal, off-diagonal sqrt(k).
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double b = std::sqrt(static_cast<double>(k));
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("gauss_hermite: eigen decomposition failed");
  }

  QuadratureRule rule;
  rule.order = order;
  rule.nodes = solver.eigenvalues();  // ascending
  rule.weights = solver.eigenvectors().row(0).array().square();

  // Enforce the exact symmetry of the rule; eigenvalues of the symmetric
  // tridiagonal matrix come in +/- pairs up to round-off.
  for (int i = 0; i < order / 2; ++i) {
    const int j = order - 1 - i;
    const double node = 0.5 * (rule.nodes(j) - rule.nodes(i));
    rule.nodes(i) = -node;
    rule.nodes(j) = node;
    const double w = 0.5 * (rule.weights(i) + rule.weights(j));
    rule.weights(i) = w;
    rule.weights(j) = w;
  }
  if (order % 2 == 1) {
    rule.nodes(order / 2) = 0.0;
  }
  rule.weights /= rule.weights.sum();
  return rule;
}

}  // namespace iago
