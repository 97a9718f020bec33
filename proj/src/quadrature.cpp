#include "fracblow/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace fracblow {

QuadratureRule gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi: need at least one node");
  if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("gauss_jacobi: exponents must exceed -1");

  // Three-term recurrence coefficients of the monic Jacobi polynomials.
  Eigen::VectorXd diag(n), off(n > 1 ? n - 1 : 0);
  const double apb = a + b;
  diag[0] = (b - a) / (apb + 2.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + apb;
    diag[k] = (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + apb;
    double beta;
    if (k == 1)
      beta = 4.0 * (1.0 + a) * (1.0 + b) / ((apb + 2.0) * (apb + 2.0) * (apb + 3.0));
    else
      beta = 4.0 * k * (k + a) * (k + b) * (k + apb) / (s * s * (s + 1.0) * (s - 1.0));
    off[k - 1] = std::sqrt(beta);
  }

  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  jac.diagonal() = diag;
  if (n > 1) {
    jac.diagonal(1) = off;
    jac.diagonal(-1) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  if (es.info() != Eigen::Success) throw std::runtime_error("gauss_jacobi: eigen solve failed");

  const double mu0 = std::pow(2.0, apb + 1.0) *
                     std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(apb + 2.0));
  QuadratureRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights = mu0 * es.eigenvectors().row(0).transpose().array().square();
  return rule;
}

QuadratureRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

}  // namespace fracblow
