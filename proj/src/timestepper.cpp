#include "fracblow/timestepper.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace fracblow {

GridFunction InitialData::sample(const Grid& grid) const {
  const int n = grid.subintervals();
  Vector u(n + 1);
  switch (kind) {
    case Kind::CosPlusConst:
      for (int j = 0; j <= n; ++j) u[j] = a * static_cast<double>(grid.cosine(1, j)) + b;
      break;
    case Kind::Constant:
      u.setConstant(b);
      break;
    case Kind::Modes: {
      if (modes.empty() || static_cast<int>(modes.size()) > n + 1)
        throw std::invalid_argument("InitialData: mode count must be between 1 and N+1");
      Vector coeffs = Vector::Zero(n + 1);
      for (std::size_t k = 0; k < modes.size(); ++k) coeffs[static_cast<int>(k)] = modes[k];
      return synthesize(CosineSpectrum(grid, coeffs));
    }
  }
  return GridFunction(grid, u);
}

InitialData InitialData::scaled(double amplitude) const {
  InitialData out = *this;
  out.a *= amplitude;
  out.b *= amplitude;
  for (double& m : out.modes) m *= amplitude;
  return out;
}

void SolverConfig::validate() const {
  if (n_grid < 2) throw std::invalid_argument("SolverConfig: N must be at least 2");
  if (!zero_operator && alpha <= 0.0)
    throw std::invalid_argument("SolverConfig: alpha must be positive");
  if (p < 2) throw std::invalid_argument("SolverConfig: p must be at least 2");
  if (tau0 <= 0.0) throw std::invalid_argument("SolverConfig: tau0 must be positive");
  if (c <= 0.0) throw std::invalid_argument("SolverConfig: c must be positive");
  if (u_stop <= 0.0) throw std::invalid_argument("SolverConfig: U_stop must be positive");
  if (max_steps < 1) throw std::invalid_argument("SolverConfig: max_steps must be positive");
  if (record_stride < 1) throw std::invalid_argument("SolverConfig: record_stride must be positive");
  if (!zero_operator && alpha <= 0.25)
    std::cerr << "SolverConfig: warning: alpha <= 1/4 is below the regularity threshold; "
                 "results are exploratory\n";
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::BlewUp: return "BlewUp";
    case Outcome::ReachedTEnd: return "ReachedTEnd";
    case Outcome::MaxStepsExceeded: return "MaxStepsExceeded";
    case Outcome::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

double adaptive_tau(const GridFunction& u, double tau0, double c) {
  const double m = u.values.cwiseAbs().maxCoeff();
  if (m == 0.0) return tau0;
  return std::min(tau0, c / m);
}

GridFunction step_explicit(const GridFunction& u, const FractionalOperator& op, int p,
                           double tau, bool with_reaction) {
  if (tau <= 0.0) throw std::invalid_argument("step_explicit: tau must be positive");
  Vector rhs = op.apply(u).values;
  if (with_reaction) rhs += u.values.array().pow(p).matrix();
  return GridFunction(u.grid, u.values + tau * rhs);
}

GridFunction step_explicit(const GridFunction& u, int p, double tau) {
  if (tau <= 0.0) throw std::invalid_argument("step_explicit: tau must be positive");
  return GridFunction(u.grid, u.values + tau * u.values.array().pow(p).matrix());
}

GridFunction step_implicit(const GridFunction& u, double alpha, int p, double tau,
                           bool with_reaction) {
  if (tau <= 0.0) throw std::invalid_argument("step_implicit: tau must be positive");
  Vector rhs = u.values;
  if (with_reaction) rhs += tau * u.values.array().pow(p).matrix();
  return apply_implicit_resolvent(GridFunction(u.grid, rhs), alpha, tau);
}

SimulationResult run_simulation(const SolverConfig& config) {
  config.validate();
  Grid grid(config.n_grid);
  GridFunction u = config.initial.sample(grid);
  if (config.u_stop <= u.values.maxCoeff())
    throw std::invalid_argument("SolverConfig: U_stop must exceed the initial maximum");

  SimulationResult res;
  res.outcome = Outcome::MaxStepsExceeded;

  if (config.scheme == Scheme::Explicit && !config.zero_operator &&
      config.tau0 * std::pow(config.n_grid, 2.0 * config.alpha) > 2.0) {
    res.outcome = Outcome::NumericalFailure;
    res.failure_reason =
        "explicit stability guard: tau0 * N^(2 alpha) > 2; reduce tau0 or use the implicit scheme";
    return res;
  }

  std::optional<FractionalOperator> op;
  if (!config.zero_operator && config.scheme == Scheme::Explicit)
    op.emplace(grid, config.alpha);

  std::vector<double> pending = config.snapshot_times;
  std::sort(pending.begin(), pending.end());
  std::size_t next_snap = 0;
  while (next_snap < pending.size() && pending[next_snap] <= 0.0) {
    res.snapshots.emplace_back(pending[next_snap], u);
    ++next_snap;
  }

  double t = 0.0;
  long step = 0;
  while (true) {
    int argmax = 0;
    const double max_u = u.values.maxCoeff(&argmax);
    if (max_u >= config.u_stop) {
      res.outcome = Outcome::BlewUp;
      break;
    }
    if (config.t_end && t >= *config.t_end - 1e-12) {
      res.outcome = Outcome::ReachedTEnd;
      break;
    }
    if (step >= config.max_steps) {
      res.outcome = Outcome::MaxStepsExceeded;
      break;
    }
    const double tau = adaptive_tau(u, config.tau0, config.c);
    if (step % config.record_stride == 0)
      res.records.push_back({step, t, tau, max_u, argmax});

    GridFunction next = u;
    try {
      if (config.zero_operator) {
        next = config.scheme == Scheme::Explicit
                   ? step_explicit(u, config.p, tau)
                   : GridFunction(grid, u.values + tau * u.values.array().pow(config.p).matrix());
      } else if (config.scheme == Scheme::Explicit) {
        next = step_explicit(u, *op, config.p, tau);
      } else {
        next = step_implicit(u, config.alpha, config.p, tau);
      }
    } catch (const std::invalid_argument& e) {
      res.outcome = Outcome::NumericalFailure;
      res.failure_reason = e.what();
      res.snapshots.emplace_back(t, u);  // last valid state
      break;
    }

    const double t_next = t + tau;
    while (next_snap < pending.size() && t_next >= pending[next_snap]) {
      const double ts = pending[next_snap];
      const double theta = (ts - t) / tau;
      res.snapshots.emplace_back(
          ts, GridFunction(grid, (1.0 - theta) * u.values + theta * next.values));
      ++next_snap;
    }
    u = std::move(next);
    t = t_next;
    ++step;
  }
  res.t_num = t;
  return res;
}

MonotoneReport monotone_time_check(const SimulationResult& result, const SolverConfig& config) {
  if (result.snapshots.size() < 2)
    throw std::invalid_argument("monotone_time_check: need at least two snapshots");
  MonotoneReport report{};
  report.worst_drop = 0.0;
  for (std::size_t k = 0; k + 1 < result.snapshots.size(); ++k) {
    const Vector diff = result.snapshots[k + 1].second.values - result.snapshots[k].second.values;
    report.worst_drop = std::min(report.worst_drop, diff.minCoeff());
  }
  report.snapshots_nondecreasing = report.worst_drop >= -1e-9;

  Grid grid(config.n_grid);
  GridFunction u0 = config.initial.sample(grid);
  Vector residual = u0.values.array().pow(config.p).matrix();
  if (!config.zero_operator) {
    FractionalOperator op(grid, config.alpha);
    residual += op.apply(u0).values;  // op stores -A^alpha
  }
  report.min_initial_residual = residual.minCoeff();
  report.initial_condition_holds = report.min_initial_residual >= -1e-10;
  return report;
}

}  // namespace fracblow
