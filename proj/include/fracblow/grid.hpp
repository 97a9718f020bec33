#pragma once

#include <Eigen/Dense>

#include <memory>
#include <vector>

namespace fracblow {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Half-period grid x_j = j*pi/N, j = 0..N, carrying samples of even
// 2*pi-periodic functions.  The grid owns a table of cos(m*pi/N) in extended
// precision; all cosine sums in the spectral module go through it so that
// large mode-number products n*j do not lose phase accuracy.
class Grid {
 public:
  explicit Grid(int subintervals);

  int subintervals() const { return n_; }
  int points() const { return n_ + 1; }
  double spacing() const;
  double node(int j) const;
  Vector nodes() const;

  // cos(k * x_j), reduced exactly modulo the period before lookup.
  long double cosine(long long k, long long j) const;

  friend bool operator==(const Grid& a, const Grid& b) { return a.n_ == b.n_; }
  friend bool operator!=(const Grid& a, const Grid& b) { return a.n_ != b.n_; }

 private:
  int n_;
  std::shared_ptr<const std::vector<long double>> table_;  // cos(m*pi/N), m = 0..N
};

// Samples u_0..u_N at the grid nodes.
struct GridFunction {
  Grid grid;
  Vector values;

  GridFunction(Grid g, Vector v);
};

// Coefficients gamma_0..gamma_N of sum_n gamma_n cos(n x).
struct CosineSpectrum {
  Grid grid;
  Vector coeffs;

  CosineSpectrum(Grid g, Vector c);
};

}  // namespace fracblow
