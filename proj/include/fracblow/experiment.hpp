#pragma once

#include "fracblow/timestepper.hpp"

#include <string>
#include <vector>

namespace fracblow {

enum class ExperimentKind { Run, Figure1, Figure2, Sweep, Levine, QuadCheck, KernelCheck, Dichotomy };

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::Run;
  SolverConfig config;
  std::vector<double> alphas;      // sweep / figure kinds
  std::vector<double> amplitudes;  // dichotomy kind
  int threads = 1;
  std::string output_dir = ".";
};

// Parses the flat key=value format ('#' comments, dotted keys); throws
// ConfigError with the offending line number or key name.
ExperimentSpec load_config(const std::string& path);

// Executes the experiment and writes its CSV outputs into spec.output_dir.
// Throws ConfigError / NumericalError / IoError; returns normally on success.
void run_experiment(const ExperimentSpec& spec);

// 17-significant-digit round-trippable serialization used in all CSVs.
std::string format_value(double x);

}  // namespace fracblow
