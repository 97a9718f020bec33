#include "fracblow/analysis.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace fracblow;

namespace {

GridFunction cosine_mode(const Grid& grid, int n, double scale = 1.0) {
  Vector v(grid.points());
  for (int j = 0; j < grid.points(); ++j)
    v[j] = scale * static_cast<double>(grid.cosine(n, j));
  return GridFunction(grid, v);
}

SolverConfig ode_config() {
  SolverConfig cfg;
  cfg.zero_operator = true;
  cfg.initial.kind = InitialData::Kind::Constant;
  cfg.initial.b = 1.0;
  cfg.n_grid = 8;
  return cfg;
}

}  // namespace

TEST_CASE("inner_product on the full period") {
  Grid grid(100);
  GridFunction ones(grid, Vector::Ones(grid.points()));
  CHECK(inner_product(ones, ones) == doctest::Approx(2.0 * oracles::pi).epsilon(1e-13));

  GridFunction c1 = cosine_mode(grid, 1);
  GridFunction c2 = cosine_mode(grid, 2);
  CHECK(inner_product(c1, c1) == doctest::Approx(oracles::pi).epsilon(1e-12));
  CHECK(std::abs(inner_product(c1, c2)) < 1e-12);
  CHECK(std::abs(inner_product(c1, ones)) < 1e-12);

  Grid other(50);
  GridFunction small(other, Vector::Ones(other.points()));
  CHECK_THROWS_AS(inner_product(ones, small), std::invalid_argument);
}

TEST_CASE("levine_check") {
  Grid grid(100);

  // Constant data: the quadratic form vanishes, any positive constant blows up.
  GridFunction two(grid, Vector::Constant(grid.points(), 2.0));
  LevineReport flat = levine_check(two, 0.5, 2);
  CHECK(flat.g_value == doctest::Approx(8.0 * 2.0 * oracles::pi / 3.0).epsilon(1e-12));
  CHECK(std::abs(flat.quad_value) < 1e-8);
  CHECK(flat.predicts_blowup);

  // Small zero-mean data: cos^3 integrates to zero, the quadratic form wins.
  LevineReport tiny = levine_check(cosine_mode(grid, 1, 0.1), 0.5, 2);
  CHECK(std::abs(tiny.g_value) < 1e-12);
  CHECK(tiny.quad_value == doctest::Approx(0.5 * 0.01 * oracles::pi).epsilon(1e-8));
  CHECK(!tiny.predicts_blowup);

  // cos x + 1: G = 5 pi / 3, quadratic form pi / 2 for every order.
  InitialData init;
  GridFunction u0 = init.sample(grid);
  for (double alpha : {0.5, 0.7, 1.0}) {
    LevineReport rep = levine_check(u0, alpha, 2);
    CHECK(rep.g_value == doctest::Approx(5.0 * oracles::pi / 3.0).epsilon(1e-6));
    CHECK(rep.quad_value == doctest::Approx(0.5 * oracles::pi).epsilon(1e-6));
    CHECK(rep.predicts_blowup);
  }
}

TEST_CASE("principal eigenpair of the periodic operator") {
  Grid grid(16);
  EigenPair pair = principal_eigenpair(grid);
  CHECK(pair.kappa0 == 0.0);
  CHECK((pair.phi0.values.array() - 1.0).abs().maxCoeff() == 0.0);
}

TEST_CASE("jensen trace reduces to equality for the pure reaction ODE") {
  SolverConfig cfg = ode_config();
  cfg.t_end = 1e-4;
  cfg.snapshot_times = {0.0, 1e-4};
  SimulationResult r = run_simulation(cfg);
  EigenPair pair = principal_eigenpair(Grid(cfg.n_grid));
  JensenTrace trace = jensen_projection_trace(r, pair, 0.5, 2);

  CHECK(trace.jensen_constant == doctest::Approx(1.0 / (2.0 * oracles::pi)).epsilon(1e-13));
  CHECK(trace.violations == 0);
  REQUIRE(trace.rows.size() == 2);
  // Linear interpolation inside a single Euler step makes the projected slope
  // hit the comparison bound exactly: phi' = c_J phi^2 with phi(0) = 2 pi.
  CHECK(trace.rows[0].phi == doctest::Approx(2.0 * oracles::pi).epsilon(1e-13));
  CHECK(trace.rows[0].slope == doctest::Approx(trace.rows[0].bound).epsilon(1e-6));
  CHECK(trace.t_bound == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("jensen trace for a blow-up run stays above the comparison ODE") {
  SolverConfig cfg;
  cfg.alpha = 0.5;
  cfg.c = 0.5;
  cfg.snapshot_times = {0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
  SimulationResult r = run_simulation(cfg);
  REQUIRE(r.outcome == Outcome::BlewUp);

  EigenPair pair = principal_eigenpair(Grid(cfg.n_grid));
  JensenTrace trace = jensen_projection_trace(r, pair, cfg.alpha, cfg.p);
  CHECK(trace.violations == 0);
  CHECK(trace.worst_violation == 0.0);
  // phi(0) = (u0, 1) = 2 pi, so the comparison ODE blows up at exactly t = 1,
  // and the observed blow-up must come earlier.
  CHECK(trace.t_bound == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.t_num <= trace.t_bound);
}

TEST_CASE("jensen trace rejects degenerate input") {
  Grid grid(8);
  EigenPair pair = principal_eigenpair(grid);
  SimulationResult r;
  r.snapshots.emplace_back(0.0, GridFunction(grid, Vector::Ones(grid.points())));
  CHECK_THROWS_AS(jensen_projection_trace(r, pair, 0.5, 2), std::invalid_argument);

  r.snapshots.emplace_back(0.1, GridFunction(grid, Vector::Constant(grid.points(), -1.0)));
  CHECK_THROWS_AS(jensen_projection_trace(r, pair, 0.5, 2), std::invalid_argument);
}

TEST_CASE("alpha_sweep basics") {
  SolverConfig base = ode_config();
  base.t_end = 0.1;

  SweepResult single = alpha_sweep(base, {0.5});
  REQUIRE(single.rows.size() == 1);
  CHECK(single.rows[0].outcome == Outcome::ReachedTEnd);

  // With the diffusion term disabled the order cannot matter.
  SolverConfig ode = ode_config();
  SweepResult rows = alpha_sweep(ode, {0.3, 0.6});
  REQUIRE(rows.rows.size() == 2);
  CHECK(rows.rows[0].t_num == rows.rows[1].t_num);
  CHECK(rows.rows[0].outcome == Outcome::BlewUp);
  CHECK(!rows.t_num_increasing);
  CHECK(!rows.t_num_decreasing);

  CHECK_THROWS_AS(alpha_sweep(base, {}), std::invalid_argument);
  CHECK_THROWS_AS(alpha_sweep(base, {0.6, 0.5}), std::invalid_argument);
}

TEST_CASE("alpha_sweep is deterministic across thread counts") {
  SolverConfig base;
  base.n_grid = 40;
  base.c = 0.2;
  base.u_stop = 1e6;
  base.snapshot_times = {0.3};
  const std::vector<double> alphas = {0.4, 0.5, 0.6};

  SweepResult serial = alpha_sweep(base, alphas, 1);
  SweepResult pooled = alpha_sweep(base, alphas, 3);
  REQUIRE(serial.rows.size() == pooled.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    CHECK(serial.rows[i].alpha == pooled.rows[i].alpha);
    CHECK(serial.rows[i].outcome == pooled.rows[i].outcome);
    CHECK(serial.rows[i].t_num == pooled.rows[i].t_num);          // bitwise
    CHECK(serial.rows[i].max_at_snapshot == pooled.rows[i].max_at_snapshot);
    CHECK(serial.rows[i].outcome == Outcome::BlewUp);
  }
}

TEST_CASE("max ordering between two orders") {
  SolverConfig base;
  base.c = 0.5;
  OrderingReport rep = max_ordering_check(base, 0.7, 0.5, {0.2, 0.5});
  CHECK(!rep.equal_orders);
  CHECK(rep.ordering_holds_everywhere);  // the lower order grows faster
  for (const auto& row : rep.rows) CHECK(row.max_alpha < row.max_beta);

  OrderingReport same = max_ordering_check(base, 0.6, 0.6, {0.2});
  CHECK(same.equal_orders);
  CHECK(!same.ordering_holds_everywhere);  // strict inequality fails on equality
  CHECK(!same.any_crossing);
}

TEST_CASE("profiles of different orders cross away from the peak") {
  SolverConfig base;
  base.scheme = Scheme::Implicit;
  OrderingReport rep = max_ordering_check(base, 1.1, 0.7, {0.6});
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].ordered);
  CHECK(rep.any_crossing);
}

TEST_CASE("dichotomy scan on the pure reaction ODE") {
  SolverConfig base = ode_config();
  base.t_end = 5.0;
  DichotomyReport rep = dichotomy_scan(base, {0.0, 0.01, 10.0});
  REQUIRE(rep.rows.size() == 3);

  CHECK(rep.rows[0].outcome == Outcome::ReachedTEnd);
  CHECK(rep.rows[0].t_num == 5.0);
  CHECK(rep.rows[1].outcome == Outcome::ReachedTEnd);
  CHECK(rep.rows[2].outcome == Outcome::BlewUp);
  // u' = u^2, u(0) = b: T = 1/b, and the adaptive march with tau = c/u gives
  // u_{n+1} = (1+c) u_n exactly, so T_num = (1+c)/b up to the truncated tail.
  CHECK(rep.rows[2].t_num == doctest::Approx((1.0 + base.c) / 10.0).epsilon(1e-6));

  CHECK(rep.largest_surviving == 0.01);
  CHECK(rep.smallest_blowup == 10.0);
}
