#pragma once

#include "fracblow/grid.hpp"

namespace fracblow {

// Trapezoidal cosine analysis with half weights at the two endpoint modes
// (sigma(0) = sigma(N) = 1/2), making analyze and synthesize exact inverses
// on grid functions.
CosineSpectrum analyze(const GridFunction& u);
GridFunction synthesize(const CosineSpectrum& spec);

// Dense representation of -A^alpha = -(-d^2/dx^2)^alpha in the cosine basis.
// The matrix is held in extended precision internally; matrix() returns a
// double copy.
class FractionalOperator {
 public:
  using LongMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

  FractionalOperator(Grid grid, double alpha);

  double alpha() const { return alpha_; }
  const Grid& grid() const { return grid_; }
  const Matrix& matrix() const { return matrix_; }

  GridFunction apply(const GridFunction& u) const;

 private:
  Grid grid_;
  double alpha_;
  LongMatrix t_;
  Matrix matrix_;
};

FractionalOperator assemble_T(const Grid& grid, double alpha);
GridFunction apply_operator(const FractionalOperator& op, const GridFunction& u);

// Matrix representation of (1 + tau A^alpha)^{-1}.
Matrix assemble_S(const Grid& grid, double alpha, double tau);

// Spectral application of (1 + tau A^alpha)^{-1}: analyze, scale each
// coefficient by 1/(1 + tau n^{2 alpha}), synthesize.
GridFunction apply_implicit_resolvent(const GridFunction& u, double alpha, double tau);

}  // namespace fracblow
