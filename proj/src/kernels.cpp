#include "fracblow/kernels.hpp"

#include <cmath>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace fracblow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDecayTolerance = 1e-8;

// Exact integration of e^{-s|x-y|}/(2s) against the hat function centered
// k nodes away; Toeplitz in k.
Vector hat_kernel_coeffs(double s, double h, int m) {
  const double sh = s * h;
  Vector g(m + 1);
  if (sh < 1e-3) {
    // 1 - (1 - e^{-x})/x = x/2 - x^2/6 + x^3/24 - x^4/120 + ...
    g[0] = (sh / 2 - sh * sh / 6 + sh * sh * sh / 24 - sh * sh * sh * sh / 120) / (s * s);
  } else {
    g[0] = (1.0 + std::expm1(-sh) / sh) / (s * s);
  }
  if (sh > 350.0) {
    // cosh(sh) - 1 ~ e^{sh}/2 would overflow; fold it into the exponential.
    for (int k = 1; k <= m; ++k) g[k] = 0.5 * std::exp(-sh * (k - 1)) / (h * s * s * s);
  } else {
    const double coshm1 = 2.0 * std::pow(std::sinh(0.5 * sh), 2);  // cosh(sh) - 1
    for (int k = 1; k <= m; ++k) g[k] = std::exp(-sh * k) * coshm1 / (h * s * s * s);
  }
  return g;
}

Vector toeplitz_apply(const Vector& g, const Vector& f) {
  const int n = static_cast<int>(f.size());
  Vector out(n);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += g[std::abs(i - j)] * f[j];
    out[i] = acc;
  }
  return out;
}

// Fourth-order -d^2/dx^2 with zero padding outside the window.
Vector neg_laplace4(const Vector& u, double h) {
  const int n = static_cast<int>(u.size());
  auto at = [&](int i) { return (i < 0 || i >= n) ? 0.0 : u[i]; };
  Vector out(n);
  for (int i = 0; i < n; ++i)
    out[i] = -(-at(i - 2) + 16 * at(i - 1) - 30 * at(i) + 16 * at(i + 1) - at(i + 2)) /
             (12 * h * h);
  return out;
}

Vector second_difference(const Vector& u, double h) {
  const int n = static_cast<int>(u.size());
  auto at = [&](int i) { return (i < 0 || i >= n) ? 0.0 : u[i]; };
  Vector out(n);
  for (int i = 0; i < n; ++i) out[i] = (at(i - 1) - 2 * at(i) + at(i + 1)) / (h * h);
  return out;
}

// Periodic kernel cosh(s (pi - d)) / (2 s sinh(pi s)) at periodic distance
// d in [0, pi], in overflow-safe exponential form, with the small-s series.
double periodic_kernel(double s, double d) {
  if (kPi * s < 1e-4) {
    return 1.0 / (2.0 * kPi * s * s) + 0.5 * (kPi / 3.0 - d + d * d / (2.0 * kPi));
  }
  return (std::exp(-s * d) + std::exp(-s * (2.0 * kPi - d))) /
         (2.0 * s * (-std::expm1(-2.0 * kPi * s)));
}

double periodic_distance(double d) {
  d = std::abs(d);
  return std::min(d, 2.0 * kPi - d);
}

// Kernel building block cosh(s a) / (2 s sinh s) on [0,1], a in [-1, 1].
double interval_cosh_term(double s, double a) {
  a = std::abs(a);
  return (std::exp(-s * (1.0 - a)) + std::exp(-s * (1.0 + a))) /
         (2.0 * s * (-std::expm1(-2.0 * s)));
}

Vector interval_resolvent(double lambda, const Vector& v, double sign) {
  if (lambda <= 0.0) throw std::invalid_argument("interval resolvent: lambda must be positive");
  const int m = static_cast<int>(v.size()) - 1;
  if (m < 2) throw std::invalid_argument("interval resolvent: need at least 3 samples");
  const double h = 1.0 / m;
  const double s = std::sqrt(lambda);
  Vector out(m + 1);
  for (int i = 0; i <= m; ++i) {
    const double x = i * h;
    double acc = 0.0;
    for (int j = 0; j <= m; ++j) {
      const double y = j * h;
      double k;
      if (s < 1e-4) {
        const double a = 1.0 - std::abs(x - y), b = 1.0 - x - y;
        if (sign < 0)
          k = (a * a - b * b) / 4.0;
        else
          k = 1.0 / (s * s) + (a * a + b * b) / 4.0 - 1.0 / 6.0;
      } else {
        k = interval_cosh_term(s, 1.0 - std::abs(x - y)) +
            sign * interval_cosh_term(s, 1.0 - x - y);
      }
      const double w = (j == 0 || j == m) ? 0.5 * h : h;
      acc += w * k * v[j];
    }
    // Kernel-kink correction; skipped at the Dirichlet boundary, where the
    // kernel row vanishes identically.
    if (sign > 0 || (i > 0 && i < m)) acc -= (h * h / 12.0) * v[i];
    out[i] = acc;
  }
  return out;
}

}  // namespace

LineGrid::LineGrid(double half_width, int panels) : half_width(half_width), panels(panels) {
  if (half_width <= 0.0) throw std::invalid_argument("LineGrid: half width must be positive");
  if (panels < 4) throw std::invalid_argument("LineGrid: need at least 4 panels");
}

Vector LineGrid::nodes() const {
  Vector x(points());
  for (int i = 0; i < points(); ++i) x[i] = node(i);
  return x;
}

Vector resolvent_whole_line(double lambda, const LineGrid& line, const Vector& v) {
  if (lambda <= 0.0)
    throw std::invalid_argument("resolvent_whole_line: lambda must be positive");
  if (v.size() != line.points())
    throw std::invalid_argument("resolvent_whole_line: sample count does not match grid");
  const int m = line.panels;
  if (std::max(std::abs(v[0]), std::abs(v[m])) > kDecayTolerance)
    std::cerr << "resolvent_whole_line: warning: |v| at the truncation boundary exceeds "
              << kDecayTolerance << "; result may be inaccurate\n";
  const double h = line.spacing();
  Vector f = neg_laplace4(v, h);
  f -= (h * h / 12.0) * second_difference(f, h);
  Vector g = hat_kernel_coeffs(std::sqrt(lambda), h, m);
  return (v - toeplitz_apply(g, f)) / lambda;
}

ResolventMap whole_line_resolvent_map(const LineGrid& line) {
  ResolventMap map;
  map.solve = [line](double lambda, const Vector& u) {
    return resolvent_whole_line(lambda, line, u);
  };
  map.positivity_preserving = false;
  return map;
}

GridFunction resolvent_periodic(double lambda, const GridFunction& v) {
  if (lambda <= 0.0) throw std::invalid_argument("resolvent_periodic: lambda must be positive");
  const Grid& grid = v.grid;
  const int n = grid.subintervals();
  const double h = grid.spacing();
  const double s = std::sqrt(lambda);
  Vector out(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double xi = grid.node(i);
    double acc = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double xj = grid.node(j);
      const double k = periodic_kernel(s, periodic_distance(xi - xj)) +
                       periodic_kernel(s, periodic_distance(xi + xj));
      const double w = (j == 0 || j == n) ? 0.5 * h : h;
      acc += w * k * v.values[j];
    }
    // Trapezoidal endpoint correction for the kernel's derivative jump at y=x.
    out[i] = acc - (h * h / 12.0) * v.values[i];
  }
  return GridFunction(grid, out);
}

Matrix periodic_resolvent_matrix(double lambda, const Grid& grid) {
  if (lambda <= 0.0)
    throw std::invalid_argument("periodic_resolvent_matrix: lambda must be positive");
  const int n = grid.subintervals();
  const double h = grid.spacing();
  const double s = std::sqrt(lambda);
  Matrix mat(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    const double xi = grid.node(i);
    for (int j = 0; j <= n; ++j) {
      const double xj = grid.node(j);
      const double k = periodic_kernel(s, periodic_distance(xi - xj)) +
                       periodic_kernel(s, periodic_distance(xi + xj));
      const double w = (j == 0 || j == n) ? 0.5 * h : h;
      mat(i, j) = w * k;
    }
  }
  return mat;
}

std::function<Matrix(double)> periodic_resolvent_matrix_fn(const Grid& grid) {
  auto cache = std::make_shared<std::map<double, Matrix>>();
  auto lock = std::make_shared<std::mutex>();
  return [grid, cache, lock](double lambda) -> Matrix {
    std::scoped_lock guard(*lock);
    auto it = cache->find(lambda);
    if (it == cache->end())
      it = cache->emplace(lambda, periodic_resolvent_matrix(lambda, grid)).first;
    return it->second;
  };
}

ResolventMap periodic_resolvent_map(const Grid& grid) {
  return map_from_matrix_fn(periodic_resolvent_matrix_fn(grid), /*positivity_preserving=*/true);
}

Vector resolvent_dirichlet(double lambda, const Vector& v) {
  return interval_resolvent(lambda, v, -1.0);
}

Vector resolvent_neumann(double lambda, const Vector& v) {
  return interval_resolvent(lambda, v, +1.0);
}

Vector singular_integral_frac(const LineGrid& line, const Vector& v, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("singular_integral_frac: alpha must lie strictly inside (0, 1)");
  if (v.size() != line.points())
    throw std::invalid_argument("singular_integral_frac: sample count does not match grid");
  const int m = line.panels;
  if (std::max(std::abs(v[0]), std::abs(v[m])) > kDecayTolerance)
    std::cerr << "singular_integral_frac: warning: |v| at the truncation boundary exceeds "
              << kDecayTolerance << "; result may be inaccurate\n";
  const double h = line.spacing();
  const double radius = m * h;
  const double cst = std::sin(kPi * alpha) / kPi * std::tgamma(2.0 * alpha + 1.0);
  // Out-of-window samples continue with the boundary value: exact for
  // constants, and indistinguishable from zero padding for decaying data.
  auto at = [&](int i) { return i < 0 ? v[0] : (i > m ? v[m] : v[i]); };
  Vector out(m + 1);
  for (int i = 0; i <= m; ++i) {
    // |z| < h: second-difference Taylor estimate of the cancelled singularity.
    const double vpp = (at(i - 1) - 2.0 * at(i) + at(i + 1)) / (h * h);
    const double inner = -vpp * std::pow(h, 2.0 - 2.0 * alpha) / (2.0 - 2.0 * alpha);
    // h <= |z| <= R: trapezoidal sum of the symmetric difference quotient.
    auto density = [&](int k) {
      return (2.0 * at(i) - at(i + k) - at(i - k)) / std::pow(k * h, 2.0 * alpha + 1.0);
    };
    double outer = -0.5 * (density(1) + density(m));
    for (int k = 1; k <= m; ++k) outer += density(k);
    outer *= h;
    // Euler-Maclaurin endpoint term at z = h (the far end decays to zero).
    outer += (h * h / 12.0) * (-3.0 * density(1) + 4.0 * density(2) - density(3)) / (2.0 * h);
    // |z| > R: the symmetric difference freezes at the boundary values.
    const double tail =
        (2.0 * at(i) - v[0] - v[m]) * std::pow(radius, -2.0 * alpha) / (2.0 * alpha);
    out[i] = cst * (inner + outer + tail);
  }
  return out;
}

}  // namespace fracblow
