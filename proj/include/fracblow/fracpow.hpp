#pragma once

#include "fracblow/grid.hpp"

#include <functional>

namespace fracblow {

// Abstract resolvent solver: returns (lambda + A)^{-1} u for lambda > 0.
struct ResolventMap {
  std::function<Vector(double lambda, const Vector& u)> solve;
  bool positivity_preserving = false;
};

// Wraps a matrix-valued resolvent (lambda -> dense (lambda+A)^{-1}).
ResolventMap map_from_matrix_fn(std::function<Matrix(double)> resolvent_matrix,
                                bool positivity_preserving = false);

struct QuadratureSpec {
  double alpha = 0.5;  // fractional order, strictly inside (0, 1)
  int nodes = 64;      // Gauss-Jacobi node count for the A^{+-alpha} integrals
  int panel_depth = 40;  // geometric panel count for the (mu + A^alpha)^{-1} integral
  int panel_nodes = 12;  // Gauss-Legendre nodes per panel

  void validate() const;  // throws std::invalid_argument
};

// (sin pi alpha / pi) int_0^inf lambda^{alpha-1} (1 - lambda/(lambda+kappa)) dlambda
// = kappa^alpha, evaluated by the Gauss-Jacobi rule after lambda = t/(1-t).
double scalar_frac_power(double kappa, double alpha, int nodes = 64);

// Difference between the node counts Q and 2Q, usable as an error estimate.
double scalar_frac_power_error(double kappa, double alpha, int nodes = 64);

// A^alpha u via the Balakrishnan integral; one resolvent solve per node.
Vector frac_power_apply(const ResolventMap& res, const Vector& u, const QuadratureSpec& quad);

// Same, with the Q-vs-2Q difference reported; throws NumericalError when the
// difference exceeds tol.
struct CheckedVector {
  Vector value;
  double error_estimate;
};
CheckedVector frac_power_apply_checked(const ResolventMap& res, const Vector& u,
                                       const QuadratureSpec& quad, double tol);

// A^{-alpha} u; requires the resolvent to stay bounded as lambda -> 0.
Vector neg_frac_power_apply(const ResolventMap& res, const Vector& u, const QuadratureSpec& quad);

// (mu + A^alpha)^{-1} u via the resolvent-integral representation.
Vector frac_resolvent_apply(const ResolventMap& res, double mu, const Vector& u,
                            const QuadratureSpec& quad);

// Dense matrix of (mu + A^alpha)^{-1}, built from a matrix-valued resolvent.
Matrix frac_resolvent_matrix(const std::function<Matrix(double)>& resolvent_matrix, double mu,
                             int dim, const QuadratureSpec& quad);

// Hille approximation (1 + (t/n) A)^{-n} u from the plain resolvent.
Vector hille_semigroup_apply(const ResolventMap& res, double t, int n, const Vector& u);

// Hille approximation of e^{-t A^alpha} u: the inner resolvent matrix
// (1 + (t/n) A^alpha)^{-1} is built once and applied n times.
Vector hille_semigroup_frac_apply(const std::function<Matrix(double)>& resolvent_matrix,
                                  double t, int n, const Vector& u, const QuadratureSpec& quad);

}  // namespace fracblow
