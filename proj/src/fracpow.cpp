#include "fracblow/fracpow.hpp"

#include "fracblow/errors.hpp"
#include "fracblow/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fracblow {

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Jacobi rule on (0,1) for the weight t^{alpha-1} (1-t)^{-alpha}.
// Under t = (1+x)/2 the mapping constant is exactly 1.
QuadratureRule jacobi01(double alpha, int nodes) {
  QuadratureRule rule = gauss_jacobi(nodes, -alpha, alpha - 1.0);
  rule.nodes = (rule.nodes.array() + 1.0) / 2.0;
  return rule;
}

Vector frac_power_core(const ResolventMap& res, const Vector& u, double alpha, int nodes) {
  QuadratureRule rule = jacobi01(alpha, nodes);
  Vector acc = Vector::Zero(u.size());
  for (int i = 0; i < nodes; ++i) {
    const double t = rule.nodes[i];
    const double lambda = t / (1.0 - t);
    acc += rule.weights[i] / (1.0 - t) * (u - lambda * res.solve(lambda, u));
  }
  return std::sin(kPi * alpha) / kPi * acc;
}

// Composite Gauss-Legendre panels on (0, 1], geometrically refined toward 0.
std::vector<std::pair<double, double>> geometric_panels(int depth) {
  std::vector<std::pair<double, double>> panels;
  panels.emplace_back(0.0, std::ldexp(1.0, -depth));
  for (int k = depth; k >= 1; --k)
    panels.emplace_back(std::ldexp(1.0, -k), std::ldexp(1.0, -k + 1));
  return panels;
}

// (mu + A^alpha)^{-1} via the resolvent integral, with the two power
// substitutions q = lambda^alpha on (0,1] and r = lambda^{-alpha} on [1,inf)
// that turn the spectral density into a rational function.  Both integrands
// are written in terms of lambda (lambda+A)^{-1}, which stays bounded at the
// ends of the range.  `bracket` must return lambda (lambda+A)^{-1} X.
template <typename Operand, typename BracketFn>
Operand frac_resolvent_core(double mu, double alpha, const QuadratureSpec& quad,
                            const Operand& zero, const BracketFn& bracket) {
  const double c = std::cos(kPi * alpha);
  QuadratureRule gl = gauss_legendre(quad.panel_nodes);
  Operand acc = zero;
  for (const auto& [lo, hi] : geometric_panels(quad.panel_depth)) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 0; i < quad.panel_nodes; ++i) {
      const double s = mid + half * gl.nodes[i];
      const double w = half * gl.weights[i];
      {  // lambda in (0, 1]: q = lambda^alpha
        const double lambda = std::pow(s, 1.0 / alpha);
        const double den = mu * mu + 2.0 * mu * c * s + s * s;
        acc += w / (alpha * den) * bracket(lambda);
      }
      {  // lambda in [1, inf): r = lambda^{-alpha}
        const double lambda = std::pow(s, -1.0 / alpha);
        const double den = mu * mu * s * s + 2.0 * mu * c * s + 1.0;
        acc += w / (alpha * den) * bracket(lambda);
      }
    }
  }
  return std::sin(kPi * alpha) / kPi * acc;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("QuadratureSpec: alpha must lie strictly inside (0, 1)");
  if (nodes < 4) throw std::invalid_argument("QuadratureSpec: need at least 4 nodes");
  if (panel_depth < 1 || panel_nodes < 2)
    throw std::invalid_argument("QuadratureSpec: invalid panel parameters");
}

ResolventMap map_from_matrix_fn(std::function<Matrix(double)> resolvent_matrix,
                                bool positivity_preserving) {
  ResolventMap map;
  map.solve = [fn = std::move(resolvent_matrix)](double lambda, const Vector& u) -> Vector {
    return fn(lambda) * u;
  };
  map.positivity_preserving = positivity_preserving;
  return map;
}

double scalar_frac_power(double kappa, double alpha, int nodes) {
  if (kappa <= 0.0) throw std::invalid_argument("scalar_frac_power: kappa must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("scalar_frac_power: alpha must lie strictly inside (0, 1)");
  QuadratureRule rule = jacobi01(alpha, nodes);
  double acc = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double t = rule.nodes[i];
    acc += rule.weights[i] * kappa / (t + kappa * (1.0 - t));
  }
  return std::sin(kPi * alpha) / kPi * acc;
}

double scalar_frac_power_error(double kappa, double alpha, int nodes) {
  return std::abs(scalar_frac_power(kappa, alpha, nodes) -
                  scalar_frac_power(kappa, alpha, 2 * nodes));
}

Vector frac_power_apply(const ResolventMap& res, const Vector& u, const QuadratureSpec& quad) {
  quad.validate();
  return frac_power_core(res, u, quad.alpha, quad.nodes);
}

CheckedVector frac_power_apply_checked(const ResolventMap& res, const Vector& u,
                                       const QuadratureSpec& quad, double tol) {
  quad.validate();
  Vector coarse = frac_power_core(res, u, quad.alpha, quad.nodes);
  Vector fine = frac_power_core(res, u, quad.alpha, 2 * quad.nodes);
  const double diff = (coarse - fine).lpNorm<Eigen::Infinity>();
  if (diff > tol)
    throw NumericalError("frac_power_apply: quadrature not converged (Q-vs-2Q difference " +
                         std::to_string(diff) + ")");
  return {std::move(coarse), diff};
}

Vector neg_frac_power_apply(const ResolventMap& res, const Vector& u, const QuadratureSpec& quad) {
  quad.validate();
  QuadratureRule rule = jacobi01(1.0 - quad.alpha, quad.nodes);
  Vector acc = Vector::Zero(u.size());
  for (int i = 0; i < quad.nodes; ++i) {
    const double t = rule.nodes[i];
    const double lambda = t / (1.0 - t);
    acc += rule.weights[i] / (1.0 - t) * res.solve(lambda, u);
  }
  return std::sin(kPi * quad.alpha) / kPi * acc;
}

Vector frac_resolvent_apply(const ResolventMap& res, double mu, const Vector& u,
                            const QuadratureSpec& quad) {
  quad.validate();
  if (mu <= 0.0) throw std::invalid_argument("frac_resolvent_apply: mu must be positive");
  Vector zero = Vector::Zero(u.size());
  return frac_resolvent_core(mu, quad.alpha, quad, zero, [&](double lambda) -> Vector {
    return lambda * res.solve(lambda, u);
  });
}

Matrix frac_resolvent_matrix(const std::function<Matrix(double)>& resolvent_matrix, double mu,
                             int dim, const QuadratureSpec& quad) {
  quad.validate();
  if (mu <= 0.0) throw std::invalid_argument("frac_resolvent_matrix: mu must be positive");
  Matrix zero = Matrix::Zero(dim, dim);
  return frac_resolvent_core(mu, quad.alpha, quad, zero, [&](double lambda) -> Matrix {
    return lambda * resolvent_matrix(lambda);
  });
}

Vector hille_semigroup_apply(const ResolventMap& res, double t, int n, const Vector& u) {
  if (t <= 0.0) throw std::invalid_argument("hille_semigroup_apply: t must be positive");
  if (n < 1) throw std::invalid_argument("hille_semigroup_apply: n must be positive");
  const double mu = n / t;
  Vector v = u;
  for (int i = 0; i < n; ++i) v = mu * res.solve(mu, v);
  return v;
}

Vector hille_semigroup_frac_apply(const std::function<Matrix(double)>& resolvent_matrix,
                                  double t, int n, const Vector& u, const QuadratureSpec& quad) {
  if (t <= 0.0) throw std::invalid_argument("hille_semigroup_frac_apply: t must be positive");
  if (n < 1) throw std::invalid_argument("hille_semigroup_frac_apply: n must be positive");
  const double mu = n / t;
  Matrix inner = frac_resolvent_matrix(resolvent_matrix, mu, static_cast<int>(u.size()), quad);
  Vector v = u;
  for (int i = 0; i < n; ++i) v = mu * (inner * v);
  return v;
}

}  // namespace fracblow
