#include "fracblow/experiment.hpp"

#include "fracblow/analysis.hpp"
#include "fracblow/errors.hpp"
#include "fracblow/fracpow.hpp"
#include "fracblow/kernels.hpp"
#include "fracblow/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

namespace fracblow {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("invalid number '" + item + "' in key '" + key + "'");
    }
  }
  if (out.empty()) throw ConfigError("empty list for key '" + key + "'");
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double x = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("invalid number '" + value + "' for key '" + key + "'");
  }
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    long x = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer '" + value + "' for key '" + key + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("invalid boolean '" + value + "' for key '" + key + "'");
}

ExperimentKind parse_kind(const std::string& value) {
  if (value == "run") return ExperimentKind::Run;
  if (value == "figure1") return ExperimentKind::Figure1;
  if (value == "figure2") return ExperimentKind::Figure2;
  if (value == "sweep") return ExperimentKind::Sweep;
  if (value == "levine") return ExperimentKind::Levine;
  if (value == "quadcheck") return ExperimentKind::QuadCheck;
  if (value == "kernelcheck") return ExperimentKind::KernelCheck;
  if (value == "dichotomy") return ExperimentKind::Dichotomy;
  throw ConfigError("unknown experiment kind '" + value + "'");
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& header) : path_(path.string()) {
    out_.open(path);
    if (!out_) throw IoError("cannot open '" + path_ + "' for writing");
    out_ << header << "\n";
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
  }

  ~CsvWriter() = default;

  void close() {
    out_.close();
    if (!out_) throw IoError("failed writing '" + path_ + "'");
  }

 private:
  std::string path_;
  std::ofstream out_;
};

std::string short_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

void write_timeseries(const std::filesystem::path& path, const SimulationResult& result,
                      const Grid& grid) {
  CsvWriter csv(path, "step,t,tau,max_u,argmax_x");
  for (const auto& rec : result.records)
    csv.row({std::to_string(rec.step), format_value(rec.t), format_value(rec.tau),
             format_value(rec.max_u), format_value(grid.node(rec.argmax_index))});
  csv.close();
}

void write_profile(const std::filesystem::path& path, const GridFunction& u) {
  CsvWriter csv(path, "x,u");
  for (int j = 0; j < u.grid.points(); ++j)
    csv.row({format_value(u.grid.node(j)), format_value(u.values[j])});
  csv.close();
}

double max_near(const SimulationResult& result, double t_ref) {
  double best = std::numeric_limits<double>::quiet_NaN();
  double dist = std::numeric_limits<double>::infinity();
  for (const auto& [t, u] : result.snapshots) {
    const double d = std::abs(t - t_ref);
    if (d < dist) {
      dist = d;
      best = u.values.maxCoeff();
    }
  }
  return best;
}

void run_single(const ExperimentSpec& spec, const std::filesystem::path& dir) {
  SimulationResult result = run_simulation(spec.config);
  Grid grid(spec.config.n_grid);
  write_timeseries(dir / "timeseries.csv", result, grid);
  for (const auto& [t, u] : result.snapshots)
    write_profile(dir / ("profile_" + short_number(t) + ".csv"), u);
  CsvWriter summary(dir / "summary.csv", "alpha,outcome,T_num,max_at_t0.6");
  summary.row({format_value(spec.config.alpha), outcome_name(result.outcome),
               format_value(result.t_num), format_value(max_near(result, 0.6))});
  summary.close();
  if (result.outcome == Outcome::NumericalFailure)
    throw NumericalError("run: " + result.failure_reason);
}

void run_family(const ExperimentSpec& spec, const std::filesystem::path& dir) {
  const std::vector<double>& alphas = spec.alphas;
  if (alphas.empty()) throw ConfigError("experiment kind requires key 'alphas'");
  std::vector<SimulationResult> results(alphas.size());
  std::atomic<std::size_t> cursor{0};
  std::vector<std::string> errors(alphas.size());
  auto worker = [&]() {
    for (std::size_t i = cursor.fetch_add(1); i < alphas.size(); i = cursor.fetch_add(1)) {
      SolverConfig cfg = spec.config;
      cfg.alpha = alphas[i];
      try {
        results[i] = run_simulation(cfg);
      } catch (const std::exception& e) {
        results[i].outcome = Outcome::NumericalFailure;
        results[i].failure_reason = e.what();
        errors[i] = e.what();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(spec.threads, static_cast<int>(alphas.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  Grid grid(spec.config.n_grid);
  CsvWriter summary(dir / "summary.csv", "alpha,outcome,T_num,max_at_t0.6");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const std::string tag = "alpha" + short_number(alphas[i]);
    write_timeseries(dir / ("timeseries_" + tag + ".csv"), results[i], grid);
    for (const auto& [t, u] : results[i].snapshots)
      write_profile(dir / ("profile_" + tag + "_t" + short_number(t) + ".csv"), u);
    summary.row({format_value(alphas[i]), outcome_name(results[i].outcome),
                 format_value(results[i].t_num), format_value(max_near(results[i], 0.6))});
  }
  summary.close();
  for (std::size_t i = 0; i < alphas.size(); ++i)
    if (results[i].outcome == Outcome::NumericalFailure)
      throw NumericalError("alpha=" + short_number(alphas[i]) + ": " +
                           results[i].failure_reason);
}

void run_levine(const ExperimentSpec& spec, const std::filesystem::path& dir) {
  Grid grid(spec.config.n_grid);
  GridFunction u0 = spec.config.initial.sample(grid);
  LevineReport report = levine_check(u0, spec.config.alpha, spec.config.p);
  CsvWriter csv(dir / "levine.csv", "alpha,G,quad,predicts_blowup");
  csv.row({format_value(spec.config.alpha), format_value(report.g_value),
           format_value(report.quad_value), report.predicts_blowup ? "true" : "false"});
  csv.close();
}

void run_quadcheck(const ExperimentSpec& spec, const std::filesystem::path& dir) {
  const std::vector<double> kappas = {0.1, 1.0, 2.0, 10.0, 100.0};
  CsvWriter csv(dir / "quadcheck.csv", "kappa,alpha,value,exact,rel_err");
  double worst = 0.0;
  for (double kappa : kappas) {
    for (int i = 1; i <= 9; ++i) {
      const double alpha = i / 10.0;
      const double value = scalar_frac_power(kappa, alpha);
      const double exact = std::pow(kappa, alpha);
      const double rel = std::abs(value - exact) / exact;
      worst = std::max(worst, rel);
      csv.row({format_value(kappa), format_value(alpha), format_value(value),
               format_value(exact), format_value(rel)});
    }
  }
  csv.close();
  (void)spec;
  if (worst > 1e-8)
    throw NumericalError("quadcheck: worst relative error " + std::to_string(worst));
}

void run_kernelcheck(const ExperimentSpec& spec, const std::filesystem::path& dir) {
  CsvWriter csv(dir / "kernelcheck.csv", "domain,case,lambda,rel_err");
  bool ok = true;

  Grid grid(spec.config.n_grid);
  for (int n : {0, 1, 3}) {
    Vector v(grid.points());
    for (int j = 0; j < grid.points(); ++j) v[j] = static_cast<double>(grid.cosine(n, j));
    const double lambda = 1.0;
    GridFunction got = resolvent_periodic(lambda, GridFunction(grid, v));
    Vector want = v / (lambda + n * n);
    const double rel = (got.values - want).lpNorm<Eigen::Infinity>() /
                       want.lpNorm<Eigen::Infinity>();
    ok &= rel <= 1e-6;
    csv.row({"periodic", "cos" + std::to_string(n) + "x", format_value(lambda),
             format_value(rel)});
  }

  const int m = 200;
  Vector sv(m + 1), cv(m + 1);
  for (int j = 0; j <= m; ++j) {
    sv[j] = std::sin(kPi * j / m);
    cv[j] = std::cos(kPi * j / m);
  }
  {
    Vector got = resolvent_dirichlet(1.0, sv);
    Vector want = sv / (1.0 + kPi * kPi);
    const double rel = (got - want).lpNorm<Eigen::Infinity>() / want.lpNorm<Eigen::Infinity>();
    ok &= rel <= 1e-4 * (1.0 + kPi * kPi);  // absolute 1e-4 on the profile
    csv.row({"dirichlet", "sin_pi_x", format_value(1.0), format_value(rel)});
  }
  {
    Vector got = resolvent_neumann(1.0, cv);
    Vector want = cv / (1.0 + kPi * kPi);
    const double rel = (got - want).lpNorm<Eigen::Infinity>() / want.lpNorm<Eigen::Infinity>();
    ok &= rel <= 1e-4 * (1.0 + kPi * kPi);
    csv.row({"neumann", "cos_pi_x", format_value(1.0), format_value(rel)});
  }
  {
    LineGrid line;
    Vector v(line.points());
    for (int i = 0; i < line.points(); ++i) v[i] = std::exp(-line.node(i) * line.node(i));
    const double lambda = 1e4;
    Vector got = resolvent_whole_line(lambda, line, v);
    Vector want = v / lambda;
    double rel = 0.0;
    for (int i = 0; i < line.points(); ++i)
      if (std::abs(line.node(i)) <= 5.0)
        rel = std::max(rel, std::abs(got[i] - want[i]));
    rel /= want.lpNorm<Eigen::Infinity>();
    ok &= rel <= 1e-3;
    csv.row({"wholeline", "gaussian_large_lambda", format_value(lambda), format_value(rel)});
  }
  csv.close();
  if (!ok) throw NumericalError("kernelcheck: a kernel residual exceeded its tolerance");
}

void run_dichotomy(const ExperimentSpec& spec, const std::filesystem::path& dir) {
  if (spec.amplitudes.empty()) throw ConfigError("dichotomy requires key 'amplitudes'");
  DichotomyReport report = dichotomy_scan(spec.config, spec.amplitudes);
  CsvWriter csv(dir / "dichotomy.csv", "amplitude,outcome,T_num");
  for (const auto& row : report.rows)
    csv.row({format_value(row.amplitude), outcome_name(row.outcome), format_value(row.t_num)});
  csv.close();
}

}  // namespace

std::string format_value(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ExperimentSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");

  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key or value");
    if (kv.count(key))
      throw ConfigError(path + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv[key] = value;
  }

  ExperimentSpec spec;
  bool c_given = false;
  for (const auto& [key, value] : kv) {
    if (key == "kind") spec.kind = parse_kind(value);
    else if (key == "alpha") spec.config.alpha = parse_double(key, value);
    else if (key == "alphas") spec.alphas = parse_list(key, value);
    else if (key == "n") spec.config.n_grid = static_cast<int>(parse_long(key, value));
    else if (key == "p") spec.config.p = static_cast<int>(parse_long(key, value));
    else if (key == "tau0") spec.config.tau0 = parse_double(key, value);
    else if (key == "c") { spec.config.c = parse_double(key, value); c_given = true; }
    else if (key == "scheme") {
      if (value == "explicit") spec.config.scheme = Scheme::Explicit;
      else if (value == "implicit") spec.config.scheme = Scheme::Implicit;
      else throw ConfigError("invalid value '" + value + "' for key 'scheme'");
    }
    else if (key == "u_stop") spec.config.u_stop = parse_double(key, value);
    else if (key == "t_end") spec.config.t_end = parse_double(key, value);
    else if (key == "max_steps") spec.config.max_steps = parse_long(key, value);
    else if (key == "record_stride") spec.config.record_stride = static_cast<int>(parse_long(key, value));
    else if (key == "zero_operator") spec.config.zero_operator = parse_bool(key, value);
    else if (key == "snapshot_times") spec.config.snapshot_times = parse_list(key, value);
    else if (key == "amplitudes") spec.amplitudes = parse_list(key, value);
    else if (key == "threads") spec.threads = static_cast<int>(parse_long(key, value));
    else if (key == "initial.kind") {
      if (value == "cos_plus_const") spec.config.initial.kind = InitialData::Kind::CosPlusConst;
      else if (value == "constant") spec.config.initial.kind = InitialData::Kind::Constant;
      else if (value == "modes") spec.config.initial.kind = InitialData::Kind::Modes;
      else throw ConfigError("invalid value '" + value + "' for key 'initial.kind'");
    }
    else if (key == "initial.a") spec.config.initial.a = parse_double(key, value);
    else if (key == "initial.b") spec.config.initial.b = parse_double(key, value);
    else if (key == "initial.modes") spec.config.initial.modes = parse_list(key, value);
    else throw ConfigError("unknown key '" + key + "'");
  }
  if (!c_given) spec.config.c = spec.config.tau0;

  // Kind-specific defaults and validation.
  if (spec.kind == ExperimentKind::Figure1) {
    spec.config.scheme = Scheme::Explicit;
    if (spec.alphas.empty()) spec.alphas = {0.5, 0.6, 0.7};
    if (spec.config.snapshot_times.empty()) spec.config.snapshot_times = {0.6};
  } else if (spec.kind == ExperimentKind::Figure2) {
    spec.config.scheme = Scheme::Implicit;
    if (spec.alphas.empty()) spec.alphas = {0.7, 1.1, 1.3};
    if (spec.config.snapshot_times.empty()) spec.config.snapshot_times = {0.6};
  } else if (spec.kind == ExperimentKind::Sweep && spec.alphas.empty()) {
    throw ConfigError("sweep requires key 'alphas'");
  } else if (spec.kind == ExperimentKind::Dichotomy && spec.amplitudes.empty()) {
    throw ConfigError("dichotomy requires key 'amplitudes'");
  }

  try {
    spec.config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (spec.threads < 1) throw ConfigError("invalid value for key 'threads'");
  for (std::size_t i = 1; i < spec.alphas.size(); ++i)
    if (spec.alphas[i] <= spec.alphas[i - 1])
      throw ConfigError("key 'alphas' must be strictly increasing");
  return spec;
}

void run_experiment(const ExperimentSpec& spec) {
  std::filesystem::path dir(spec.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "'");

  switch (spec.kind) {
    case ExperimentKind::Run: run_single(spec, dir); break;
    case ExperimentKind::Figure1:
    case ExperimentKind::Figure2:
    case ExperimentKind::Sweep: run_family(spec, dir); break;
    case ExperimentKind::Levine: run_levine(spec, dir); break;
    case ExperimentKind::QuadCheck: run_quadcheck(spec, dir); break;
    case ExperimentKind::KernelCheck: run_kernelcheck(spec, dir); break;
    case ExperimentKind::Dichotomy: run_dichotomy(spec, dir); break;
  }
}

}  // namespace fracblow
