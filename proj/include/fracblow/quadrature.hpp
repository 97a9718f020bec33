#pragma once

#include <Eigen/Dense>

namespace fracblow {

struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

// Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

// Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^a (1+x)^b, a, b > -1.
// Computed via the Golub-Welsch eigenvalue method.
QuadratureRule gauss_jacobi(int n, double a, double b);

}  // namespace fracblow
