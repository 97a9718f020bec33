#pragma once

#include "fracblow/fracpow.hpp"
#include "fracblow/grid.hpp"

namespace fracblow {

// Uniform grid on [-L, L] for the whole-line kernels.
struct LineGrid {
  double half_width;
  int panels;

  LineGrid(double half_width = 10.0, int panels = 400);

  int points() const { return panels + 1; }
  double spacing() const { return 2.0 * half_width / panels; }
  double node(int i) const { return -half_width + i * spacing(); }
  Vector nodes() const;
};

// (lambda - d^2/dx^2)^{-1} v on [-L, L]: the kernel e^{-sqrt(lambda)|x-y|} /
// (2 sqrt(lambda)) integrated exactly against the piecewise-linear
// interpolant of the forcing, in the deflated form (v - R(A_h v)) / lambda
// (A_h a fourth-order difference Laplacian).  Warns on stderr when |v(+-L)|
// exceeds the decay tolerance.
Vector resolvent_whole_line(double lambda, const LineGrid& line, const Vector& v);

// ResolventMap wrapper around resolvent_whole_line, for the quadrature module.
ResolventMap whole_line_resolvent_map(const LineGrid& line);

// Periodic resolvent via the cosh kernel, trapezoidal in y with the standard
// kernel-kink endpoint correction; spectrally accurate for smooth data.
GridFunction resolvent_periodic(double lambda, const GridFunction& v);

// Plain trapezoidal kernel matrix (no kink correction): every entry is a
// nonnegative kernel value times a positive weight, so positivity of the
// kernel is preserved manifestly.  Used for the positivity experiments.
Matrix periodic_resolvent_matrix(double lambda, const Grid& grid);

// Matrix-valued resolvent function over the plain periodic kernel; results
// are memoized per lambda so repeated quadratures reuse the kernel matrices.
std::function<Matrix(double)> periodic_resolvent_matrix_fn(const Grid& grid);

// ResolventMap over periodic_resolvent_matrix_fn (positivity preserving).
ResolventMap periodic_resolvent_map(const Grid& grid);

// Resolvents on [0,1]; v sampled on the uniform grid with v.size()-1 panels.
Vector resolvent_dirichlet(double lambda, const Vector& v);
Vector resolvent_neumann(double lambda, const Vector& v);

// Singular-integral form of A^alpha on the truncated line, with endpoint
// correction and analytic tail.
Vector singular_integral_frac(const LineGrid& line, const Vector& v, double alpha);

}  // namespace fracblow
