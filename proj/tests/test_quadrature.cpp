#include "fracblow/quadrature.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace fracblow;

namespace {

// int_{-1}^{1} (1-x)^a (1+x)^b x^k dx through beta-function moments.
double jacobi_moment(double a, double b, int k) {
  auto beta01 = [](double p, double q) {
    return std::exp(std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q));
  };
  // x = 2t - 1 binomial expansion.
  double acc = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    acc += binom * std::pow(2.0, j) * std::pow(-1.0, k - j) * beta01(b + j + 1.0, a + 1.0);
    binom *= static_cast<double>(k - j) / (j + 1);
  }
  return std::pow(2.0, a + b + 1.0) * acc;
}

}  // namespace

TEST_CASE("gauss_legendre integrates polynomials exactly") {
  QuadratureRule rule = gauss_legendre(5);
  CHECK(rule.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
  for (int k = 0; k <= 9; ++k) {
    double got = 0.0;
    for (int i = 0; i < 5; ++i) got += rule.weights[i] * std::pow(rule.nodes[i], k);
    const double want = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
    CHECK(got == doctest::Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("gauss_legendre nodes are symmetric and inside (-1,1)") {
  QuadratureRule rule = gauss_legendre(8);
  for (int i = 0; i < 8; ++i) {
    CHECK(std::abs(rule.nodes[i]) < 1.0);
    CHECK(rule.nodes[i] == doctest::Approx(-rule.nodes[7 - i]).epsilon(1e-13));
    CHECK(rule.weights[i] > 0.0);
  }
}

TEST_CASE("gauss_jacobi reproduces weight-function moments") {
  for (double alpha : {0.2, 0.5, 0.8}) {
    const double a = -alpha, b = alpha - 1.0;
    QuadratureRule rule = gauss_jacobi(12, a, b);
    CHECK(rule.weights.sum() ==
          doctest::Approx(oracles::pi / std::sin(oracles::pi * alpha)).epsilon(1e-12));
    for (int k = 1; k <= 6; ++k) {
      double got = 0.0;
      for (int i = 0; i < 12; ++i) got += rule.weights[i] * std::pow(rule.nodes[i], k);
      CHECK(got == doctest::Approx(jacobi_moment(a, b, k)).epsilon(1e-11));
    }
  }
}

TEST_CASE("gauss_jacobi rejects bad arguments") {
  CHECK_THROWS_AS(gauss_jacobi(0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_jacobi(4, -1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_jacobi(4, 0.0, -1.5), std::invalid_argument);
}
