#include "fracblow/errors.hpp"
#include "fracblow/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"fracblow: fractional-order semilinear heat equation experiments"};

  std::string spec_file;
  std::string out_dir = ".";
  int threads = 0;
  unsigned seed = 0;
  app.add_option("spec-file", spec_file, "experiment description (key = value format)")
      ->required();
  app.add_option("--out", out_dir, "output directory for CSV files");
  app.add_option("--threads", threads, "worker threads for sweep rows");
  app.add_option("--seed", seed, "seed for randomized test utilities (simulations ignore it)");
  CLI11_PARSE(app, argc, argv);

  try {
    fracblow::ExperimentSpec spec = fracblow::load_config(spec_file);
    spec.output_dir = out_dir;
    if (threads > 0) spec.threads = threads;
    fracblow::run_experiment(spec);
    return 0;
  } catch (const fracblow::ConfigError& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return 2;
  } catch (const fracblow::IoError& e) {
    std::cerr << "error: io: " << e.what() << "\n";
    return 4;
  } catch (const fracblow::NumericalError& e) {
    std::cerr << "error: numerical: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: numerical: " << e.what() << "\n";
    return 3;
  }
}
