#include "fracblow/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace fracblow {

namespace {

using LongVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

LongVector analyze_long(const Grid& grid, const LongVector& u) {
  const int n = grid.subintervals();
  LongVector gamma(n + 1);
  for (int m = 0; m <= n; ++m) {
    long double acc = 0.5L * u[0];
    for (int j = 1; j < n; ++j) acc += u[j] * grid.cosine(m, j);
    acc += 0.5L * u[n] * grid.cosine(m, n);
    long double sigma = (m == 0 || m == n) ? 0.5L : 1.0L;
    gamma[m] = 2.0L * sigma / n * acc;
  }
  return gamma;
}

LongVector synthesize_long(const Grid& grid, const LongVector& gamma) {
  const int n = grid.subintervals();
  LongVector u(n + 1);
  for (int j = 0; j <= n; ++j) {
    long double acc = 0.0L;
    for (int m = 0; m <= n; ++m) acc += gamma[m] * grid.cosine(m, j);
    u[j] = acc;
  }
  return u;
}

LongVector mode_powers(int n, double alpha) {
  LongVector d(n + 1);
  d[0] = 0.0L;
  for (int m = 1; m <= n; ++m)
    d[m] = std::pow(static_cast<long double>(m), 2.0L * static_cast<long double>(alpha));
  return d;
}

}  // namespace

CosineSpectrum analyze(const GridFunction& u) {
  LongVector g = analyze_long(u.grid, u.values.cast<long double>());
  return CosineSpectrum(u.grid, g.cast<double>());
}

GridFunction synthesize(const CosineSpectrum& spec) {
  LongVector u = synthesize_long(spec.grid, spec.coeffs.cast<long double>());
  return GridFunction(spec.grid, u.cast<double>());
}

FractionalOperator::FractionalOperator(Grid grid, double alpha)
    : grid_(grid), alpha_(alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("assemble_T: alpha must be positive");
  const int n = grid_.subintervals();
  LongVector d = mode_powers(n, alpha);
  t_.resize(n + 1, n + 1);
  // T = C diag(-n^{2 alpha}) A, assembled column by column: column k of A
  // holds the analysis weights of the k-th unit sample.
  for (int k = 0; k <= n; ++k) {
    LongVector e = LongVector::Zero(n + 1);
    e[k] = 1.0L;
    LongVector gamma = analyze_long(grid_, e);
    for (int m = 0; m <= n; ++m) gamma[m] *= -d[m];
    t_.col(k) = synthesize_long(grid_, gamma);
  }
  matrix_ = t_.cast<double>();
}

GridFunction FractionalOperator::apply(const GridFunction& u) const {
  if (u.grid != grid_) throw std::invalid_argument("apply_operator: grid mismatch");
  LongVector v = t_ * u.values.cast<long double>();
  return GridFunction(grid_, v.cast<double>());
}

FractionalOperator assemble_T(const Grid& grid, double alpha) {
  return FractionalOperator(grid, alpha);
}

GridFunction apply_operator(const FractionalOperator& op, const GridFunction& u) {
  return op.apply(u);
}

Matrix assemble_S(const Grid& grid, double alpha, double tau) {
  if (alpha <= 0.0) throw std::invalid_argument("assemble_S: alpha must be positive");
  if (tau <= 0.0) throw std::invalid_argument("assemble_S: tau must be positive");
  const int n = grid.subintervals();
  LongVector d = mode_powers(n, alpha);
  Matrix s(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    LongVector e = LongVector::Zero(n + 1);
    e[k] = 1.0L;
    LongVector gamma = analyze_long(grid, e);
    for (int m = 0; m <= n; ++m) gamma[m] /= 1.0L + static_cast<long double>(tau) * d[m];
    s.col(k) = synthesize_long(grid, gamma).cast<double>();
  }
  return s;
}

GridFunction apply_implicit_resolvent(const GridFunction& u, double alpha, double tau) {
  if (alpha <= 0.0) throw std::invalid_argument("apply_implicit_resolvent: alpha must be positive");
  if (tau <= 0.0) throw std::invalid_argument("apply_implicit_resolvent: tau must be positive");
  const Grid& grid = u.grid;
  const int n = grid.subintervals();
  LongVector gamma = analyze_long(grid, u.values.cast<long double>());
  LongVector d = mode_powers(n, alpha);
  for (int m = 0; m <= n; ++m) gamma[m] /= 1.0L + static_cast<long double>(tau) * d[m];
  LongVector v = synthesize_long(grid, gamma);
  return GridFunction(grid, v.cast<double>());
}

}  // namespace fracblow
