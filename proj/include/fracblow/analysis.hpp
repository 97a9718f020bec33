#pragma once

#include "fracblow/grid.hpp"
#include "fracblow/timestepper.hpp"

#include <vector>

namespace fracblow {

// Trapezoidal L^2(-pi, pi) inner product of even functions from half-period
// samples: the interior weights double, the endpoints keep single weight h.
double inner_product(const GridFunction& u, const GridFunction& v);

struct LevineReport {
  double g_value;     // (u0^p, u0) / (p+1)
  double quad_value;  // (1/2) (u0, A^alpha u0)
  bool predicts_blowup;
};

LevineReport levine_check(const GridFunction& u0, double alpha, int p);

struct EigenPair {
  double kappa0;
  GridFunction phi0;
};

// Principal eigenpair of the periodic operator: kappa0 = 0, phi0 constant 1.
EigenPair principal_eigenpair(const Grid& grid);

struct JensenTraceRow {
  double t;
  double phi;
  double slope;  // (phi_{k+1} - phi_k) / (t_{k+1} - t_k), NaN on the last row
  double bound;  // -kappa0^alpha phi_k + c_J phi_k^p
};

struct JensenTrace {
  std::vector<JensenTraceRow> rows;
  int violations;
  double worst_violation;  // most negative slope - bound margin
  double jensen_constant;
  double t_bound;          // blow-up time of the comparison ODE phi' = c_J phi^p
};

JensenTrace jensen_projection_trace(const SimulationResult& result, const EigenPair& pair,
                                    double alpha, int p, double tolerance = 1e-8);

struct SweepRow {
  double alpha;
  Outcome outcome;
  double t_num;
  double max_at_snapshot;  // max of the first configured snapshot, NaN if absent
  std::string failure_reason;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  bool t_num_increasing;  // empirical direction among BlewUp rows; not asserted
  bool t_num_decreasing;
};

SweepResult alpha_sweep(const SolverConfig& base, const std::vector<double>& alphas,
                        int threads = 1);

struct OrderingRow {
  double t;
  double max_alpha;   // u_alpha(t, 0)
  double max_beta;    // u_beta(t, 0)
  bool ordered;       // max_alpha < max_beta (higher order damps harder)
  bool crossing;      // some grid point where the profile ordering reverses
};

struct OrderingReport {
  std::vector<OrderingRow> rows;
  bool ordering_holds_everywhere;
  bool any_crossing;
  bool equal_orders;
};

OrderingReport max_ordering_check(const SolverConfig& base, double alpha, double beta,
                                  const std::vector<double>& times);

struct DichotomyRow {
  double amplitude;
  Outcome outcome;
  double t_num;
};

struct DichotomyReport {
  std::vector<DichotomyRow> rows;
  double largest_surviving;   // NaN if none survived
  double smallest_blowup;     // NaN if none blew up
};

DichotomyReport dichotomy_scan(const SolverConfig& base, const std::vector<double>& amplitudes);

}  // namespace fracblow
