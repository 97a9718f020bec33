#pragma once

#include "fracblow/grid.hpp"
#include "fracblow/spectral.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fracblow {

enum class Scheme { Explicit, Implicit };

struct InitialData {
  enum class Kind { CosPlusConst, Constant, Modes };
  Kind kind = Kind::CosPlusConst;
  double a = 1.0;              // coefficient of cos x
  double b = 1.0;              // constant offset
  std::vector<double> modes;   // raw cosine coefficients gamma_0..gamma_k

  GridFunction sample(const Grid& grid) const;
  InitialData scaled(double amplitude) const;
};

struct SolverConfig {
  double alpha = 0.5;
  int n_grid = 100;
  int p = 2;
  double tau0 = 1e-3;
  double c = 1e-3;
  Scheme scheme = Scheme::Explicit;
  InitialData initial;
  double u_stop = 1e8;
  std::optional<double> t_end;
  long max_steps = 2'000'000;
  std::vector<double> snapshot_times;
  bool zero_operator = false;  // drop the diffusion term (pure ODE mode)
  int record_stride = 1;

  void validate() const;  // throws std::invalid_argument; warns for alpha <= 1/4
};

struct StepRecord {
  long step;
  double t;
  double tau;
  double max_u;
  int argmax_index;
};

enum class Outcome { BlewUp, ReachedTEnd, MaxStepsExceeded, NumericalFailure };

std::string outcome_name(Outcome o);

struct SimulationResult {
  std::vector<StepRecord> records;
  Outcome outcome;
  double t_num = 0.0;  // accumulated time; the blow-up estimate when BlewUp
  std::vector<std::pair<double, GridFunction>> snapshots;
  std::string failure_reason;  // set when outcome == NumericalFailure
};

double adaptive_tau(const GridFunction& u, double tau0, double c);

GridFunction step_explicit(const GridFunction& u, const FractionalOperator& op, int p,
                           double tau, bool with_reaction = true);
// Zero-operator variant (pure reaction ODE).
GridFunction step_explicit(const GridFunction& u, int p, double tau);

GridFunction step_implicit(const GridFunction& u, double alpha, int p, double tau,
                           bool with_reaction = true);

SimulationResult run_simulation(const SolverConfig& config);

struct MonotoneReport {
  bool snapshots_nondecreasing;
  double worst_drop;               // most negative snapshot increment
  bool initial_condition_holds;    // -A^alpha u0 + u0^p >= 0 on the grid
  double min_initial_residual;
};

MonotoneReport monotone_time_check(const SimulationResult& result, const SolverConfig& config);

}  // namespace fracblow
