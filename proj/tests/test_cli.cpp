#include "fracblow/experiment.hpp"

#include "fracblow/errors.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <fstream>
#include <sstream>
#include <string>

using namespace fracblow;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("fracblow_test_" + std::to_string(std::rand()) + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

fs::path write_file(const TempDir& dir, const std::string& name, const std::string& text) {
  fs::path p = dir.path / name;
  std::ofstream out(p);
  out << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_data_row(const fs::path& p, std::string* header = nullptr) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::string head, row;
  std::getline(in, head);
  std::getline(in, row);
  if (header) *header = head;
  return row;
}

}  // namespace

TEST_CASE("load_config fills documented defaults") {
  TempDir tmp;
  fs::path cfg = write_file(tmp, "minimal.cfg", "alpha = 0.5\n");
  ExperimentSpec spec = load_config(cfg.string());
  CHECK(spec.kind == ExperimentKind::Run);
  CHECK(spec.config.alpha == 0.5);
  CHECK(spec.config.n_grid == 100);
  CHECK(spec.config.p == 2);
  CHECK(spec.config.tau0 == 0.001);
  CHECK(spec.config.c == 0.001);
  CHECK(spec.config.u_stop == 1e8);
  CHECK(spec.config.scheme == Scheme::Explicit);
  CHECK(spec.config.initial.kind == InitialData::Kind::CosPlusConst);
  CHECK(!spec.config.t_end.has_value());

  // c tracks tau0 when not given explicitly.
  fs::path cfg2 = write_file(tmp, "tau.cfg", "alpha = 0.5\ntau0 = 0.01\n");
  CHECK(load_config(cfg2.string()).config.c == 0.01);
  fs::path cfg3 = write_file(tmp, "c.cfg", "alpha = 0.5\ntau0 = 0.01\nc = 0.5\n");
  CHECK(load_config(cfg3.string()).config.c == 0.5);
}

TEST_CASE("load_config rejects bad input with location or key") {
  TempDir tmp;

  fs::path bad = write_file(tmp, "bad.cfg", "alpha = -1\n");
  CHECK_THROWS_WITH_AS(load_config(bad.string()),
                       doctest::Contains("alpha"), ConfigError);

  fs::path noeq = write_file(tmp, "noeq.cfg", "# comment\n\nalpha 0.5\n");
  CHECK_THROWS_WITH_AS(load_config(noeq.string()), doctest::Contains(":3"), ConfigError);

  fs::path dup = write_file(tmp, "dup.cfg", "alpha = 0.5\nalpha = 0.6\n");
  CHECK_THROWS_WITH_AS(load_config(dup.string()), doctest::Contains(":2"), ConfigError);

  fs::path unknown = write_file(tmp, "unknown.cfg", "alpha = 0.5\nbogus = 1\n");
  CHECK_THROWS_WITH_AS(load_config(unknown.string()), doctest::Contains("bogus"), ConfigError);

  fs::path num = write_file(tmp, "num.cfg", "alpha = fast\n");
  CHECK_THROWS_AS(load_config(num.string()), ConfigError);

  CHECK_THROWS_AS(load_config((tmp.path / "missing.cfg").string()), ConfigError);
}

TEST_CASE("shipped figure1 config") {
  ExperimentSpec spec = load_config(std::string(FRACBLOW_CONFIG_DIR) + "/figure1.cfg");
  CHECK(spec.kind == ExperimentKind::Figure1);
  REQUIRE(spec.alphas.size() == 3);
  CHECK(spec.alphas[0] == 0.5);
  CHECK(spec.alphas[1] == 0.6);
  CHECK(spec.alphas[2] == 0.7);
  CHECK(spec.config.n_grid == 100);
  CHECK(spec.config.tau0 == 0.001);
  CHECK(spec.config.scheme == Scheme::Explicit);
  CHECK(spec.config.initial.kind == InitialData::Kind::CosPlusConst);
  CHECK(spec.config.initial.a == 1.0);
  CHECK(spec.config.initial.b == 1.0);
  bool has_06 = false;
  for (double t : spec.config.snapshot_times) has_06 |= t == 0.6;
  CHECK(has_06);
}

TEST_CASE("run experiment writes the documented CSVs") {
  TempDir tmp;
  fs::path cfg = write_file(tmp, "ode.cfg",
                            "kind = run\n"
                            "zero_operator = true\n"
                            "initial.kind = constant\n"
                            "initial.b = 1\n"
                            "n = 4\n"
                            "snapshot_times = 0.5\n");
  ExperimentSpec spec = load_config(cfg.string());
  spec.output_dir = (tmp.path / "out").string();
  run_experiment(spec);

  std::string header;
  std::string srow = first_data_row(tmp.path / "out" / "summary.csv", &header);
  CHECK(header == "alpha,outcome,T_num,max_at_t0.6");
  std::stringstream ss(srow);
  std::string alpha, outcome, t_num;
  std::getline(ss, alpha, ',');
  std::getline(ss, outcome, ',');
  std::getline(ss, t_num, ',');
  CHECK(outcome == "BlewUp");
  const double t = std::stod(t_num);
  CHECK(t > 0.9);
  CHECK(t < 1.1);

  first_data_row(tmp.path / "out" / "timeseries.csv", &header);
  CHECK(header == "step,t,tau,max_u,argmax_x");
  first_data_row(tmp.path / "out" / "profile_0.5.csv", &header);
  CHECK(header == "x,u");
}

TEST_CASE("identical specs produce byte-identical outputs") {
  TempDir tmp;
  fs::path cfg = write_file(tmp, "sweep.cfg",
                            "kind = sweep\n"
                            "alphas = 0.4, 0.6\n"
                            "n = 40\n"
                            "c = 0.2\n"
                            "u_stop = 1e6\n"
                            "snapshot_times = 0.3\n"
                            "threads = 2\n");
  ExperimentSpec spec = load_config(cfg.string());
  spec.output_dir = (tmp.path / "a").string();
  run_experiment(spec);
  spec.output_dir = (tmp.path / "b").string();
  run_experiment(spec);

  for (const auto& entry : fs::directory_iterator(tmp.path / "a")) {
    const fs::path other = tmp.path / "b" / entry.path().filename();
    REQUIRE(fs::exists(other));
    CHECK(slurp(entry.path()) == slurp(other));
  }
}

TEST_CASE("serialized values round-trip exactly") {
  for (double x : {1.0 / 3.0, 3.141592653589793, 1e-17, 0.1, -2.5e300, 0.0}) {
    const std::string s = format_value(x);
    CHECK(std::stod(s) == x);
  }
}

TEST_CASE("command line exit codes") {
  TempDir tmp;
  const std::string cli = FRACBLOW_CLI_PATH;
  auto run = [&](const std::string& args) {
    const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
    return WEXITSTATUS(std::system(cmd.c_str()));
  };

  fs::path good = write_file(tmp, "good.cfg",
                             "kind = run\nzero_operator = true\n"
                             "initial.kind = constant\ninitial.b = 1\nn = 4\n");
  CHECK(run(good.string() + " --out " + (tmp.path / "out").string()) == 0);

  fs::path bad = write_file(tmp, "bad.cfg", "alpha = -1\n");
  CHECK(run(bad.string()) == 2);
  CHECK(run((tmp.path / "absent.cfg").string()) == 2);

  // Unwritable output directory.
  CHECK(run(good.string() + " --out /proc/nope") == 4);
}
