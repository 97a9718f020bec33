#include "fracblow/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fracblow {

namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;

std::shared_ptr<const std::vector<long double>> make_table(int n) {
  auto t = std::make_shared<std::vector<long double>>(n + 1);
  // Fold angles above pi/2 back into the first quadrant: keeps the argument
  // of cosl small, where m*pi/N is closest to the exact angle.
  for (int m = 0; m <= n; ++m) {
    if (2 * m <= n)
      (*t)[m] = std::cos(kPi * m / n);
    else
      (*t)[m] = -std::cos(kPi * (n - m) / n);
  }
  (*t)[0] = 1.0L;
  if (n % 2 == 0) (*t)[n / 2] = 0.0L;
  (*t)[n] = -1.0L;
  return t;
}

}  // namespace

Grid::Grid(int subintervals) : n_(subintervals) {
  if (subintervals < 2) throw std::invalid_argument("Grid: need at least 2 subintervals");
  table_ = make_table(n_);
}

double Grid::spacing() const { return std::numbers::pi / n_; }

double Grid::node(int j) const { return static_cast<double>(kPi * j / n_); }

Vector Grid::nodes() const {
  Vector x(n_ + 1);
  for (int j = 0; j <= n_; ++j) x[j] = node(j);
  return x;
}

long double Grid::cosine(long long k, long long j) const {
  long long r = (k * j) % (2 * n_);
  if (r < 0) r += 2 * n_;
  if (r > n_) r = 2 * n_ - r;
  return (*table_)[static_cast<std::size_t>(r)];
}

GridFunction::GridFunction(Grid g, Vector v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.points())
    throw std::invalid_argument("GridFunction: value count does not match grid");
  if (!values.allFinite())
    throw std::invalid_argument("GridFunction: non-finite sample");
}

CosineSpectrum::CosineSpectrum(Grid g, Vector c) : grid(g), coeffs(std::move(c)) {
  if (coeffs.size() != grid.points())
    throw std::invalid_argument("CosineSpectrum: coefficient count does not match grid");
  if (!coeffs.allFinite())
    throw std::invalid_argument("CosineSpectrum: non-finite coefficient");
}

}  // namespace fracblow
