#pragma once

#include <Eigen/Dense>

namespace iago {

/// Gauss-Hermite rule in probabilists' normalization:
/// sum_q weights[q] * g(nodes[q]) approximates E[g(Z)] for Z ~ N(0, 1),
/// exact for polynomials up to degree 2 * order - 1. Nodes are symmetric
/// about 0 and weights sum to 1.
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  int order = 0;
};

/// Builds the rule via Golub-Welsch on the Jacobi matrix of the
/// probabilists' Hermite polynomials. 1 <= order <= 64.
QuadratureRule gauss_hermite(int order);

}  // namespace iago
