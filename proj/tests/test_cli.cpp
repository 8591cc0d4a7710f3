#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "formctl/config.hpp"
#include "formctl/trace.hpp"

namespace fs = std::filesystem;
using namespace formctl;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

struct Invocation {
  int code = -1;
  std::string out;
  std::string err;
};

const fs::path kScratch = "cli_scratch";

// Build system bakes in the CLI location; the environment may override it.
std::string cli_path() {
  if (const char* env = std::getenv("FORMCTL_CLI_PATH")) return env;
#ifdef FORMCTL_CLI_PATH
  return FORMCTL_CLI_PATH;
#else
  return {};
#endif
}

Invocation invoke(const std::string& args, const std::string& tag) {
  const std::string cli = cli_path();
  Invocation r;
  if (cli.empty()) return r;
  const fs::path out_file = kScratch / (tag + ".out");
  const fs::path err_file = kScratch / (tag + ".err");
  const std::string cmd = std::string("\"") + cli + "\" " + args + " > " + out_file.string() +
                          " 2> " + err_file.string();
  const int status = std::system(cmd.c_str());
  if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

// Demo scenario shrunk to a fraction of a second so CLI tests stay quick.
std::string short_config_json(double horizon, const char* variant = nullptr,
                              double a_hat0 = 0.1) {
  ScenarioConfig cfg = demo_config();
  cfg.horizon = horizon;
  cfg.c_hat0.a_hat = a_hat0;
  if (variant != nullptr) cfg.variant = variant_from_name(variant);
  return resolved_config_json(cfg);
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

double first_field(const std::string& csv_line) { return std::strtod(csv_line.c_str(), nullptr); }

}  // namespace

TEST_CASE("harness wiring") {
  REQUIRE(!cli_path().empty());
  fs::remove_all(kScratch);
  fs::create_directories(kScratch);
  CHECK(fs::exists(cli_path()));
}

TEST_CASE("usage errors exit 1, help exits 0") {
  CHECK(invoke("--help", "help").code == 0);
  CHECK(invoke("", "nosub").code == 1);
  CHECK(invoke("run", "noconfig").code == 1);
  CHECK(invoke("frobnicate", "badsub").code == 1);
  const Invocation help = invoke("--help", "help2");
  CHECK(help.out.find("run") != std::string::npos);
  CHECK(help.out.find("compare") != std::string::npos);
  CHECK(help.out.find("validate") != std::string::npos);
  CHECK(help.out.find("demo") != std::string::npos);
}

TEST_CASE("demo emits its own scenario, which validates cleanly") {
  const fs::path emitted = kScratch / "demo.json";
  const Invocation emit = invoke("demo --emit-config " + emitted.string(), "emit");
  REQUIRE(emit.code == 0);
  CHECK(slurp(emitted) == resolved_config_json(demo_config()));

  const Invocation val = invoke("validate --config " + emitted.string(), "validate_demo");
  CHECK(val.code == 0);
  CHECK(val.out.find("configuration valid") != std::string::npos);
  CHECK(val.out.find("h_matrix minimum eigenvalue") != std::string::npos);
  CHECK(val.out.find("resolved configuration:") != std::string::npos);
}

TEST_CASE("run writes a trace that spans exactly the horizon") {
  const fs::path cfg_path = kScratch / "short.json";
  spit(cfg_path, short_config_json(0.2));
  const fs::path out_dir = kScratch / "run_out";
  const Invocation r =
      invoke("run --config " + cfg_path.string() + " --out " + out_dir.string(), "run");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("total_velocity_error") != std::string::npos);

  const std::string csv = slurp(out_dir / "trace.csv");
  const std::vector<std::string> rows = lines_of(csv);
  REQUIRE(rows.size() > 2);
  std::string header;
  for (size_t c = 0; c < kTraceColumns.size(); ++c) {
    if (c) header += ',';
    header += kTraceColumns[c];
  }
  CHECK(rows[0] == header);
  CHECK(first_field(rows[1]) == 0.0);
  CHECK(first_field(rows.back()) == doctest::Approx(0.2).epsilon(1e-9));

  const std::string metrics = slurp(out_dir / "metrics.txt");
  CHECK(metrics.find("variant = bioinspired_learning") != std::string::npos);
  CHECK(metrics.find("robot_3.total_velocity_error = ") != std::string::npos);
  CHECK(metrics.find("robot_1.final_formation_error = ") != std::string::npos);

  // A horizon override shrinks the span without touching the config file.
  const fs::path short_dir = kScratch / "run_short";
  const Invocation s = invoke("run --config " + cfg_path.string() + " --horizon 0.1 --out " +
                                  short_dir.string(),
                              "run_override");
  REQUIRE(s.code == 0);
  const std::vector<std::string> short_rows = lines_of(slurp(short_dir / "trace.csv"));
  CHECK(first_field(short_rows.back()) == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("identical invocations produce identical bytes") {
  const fs::path cfg_path = kScratch / "repeat.json";
  spit(cfg_path, short_config_json(0.1));
  const fs::path dir_a = kScratch / "rep_a";
  const fs::path dir_b = kScratch / "rep_b";
  REQUIRE(invoke("run --config " + cfg_path.string() + " --out " + dir_a.string(), "rep_a").code ==
          0);
  REQUIRE(invoke("run --config " + cfg_path.string() + " --out " + dir_b.string(), "rep_b").code ==
          0);
  CHECK(slurp(dir_a / "trace.csv") == slurp(dir_b / "trace.csv"));
  CHECK(slurp(dir_a / "metrics.txt") == slurp(dir_b / "metrics.txt"));
  CHECK(!slurp(dir_a / "trace.csv").empty());
}

TEST_CASE("validation failures exit 1 and say why") {
  const fs::path bad_gain = kScratch / "bad_gain.json";
  spit(bad_gain, R"({"kinematic_gains": {"k1": -1.0}})");
  const Invocation val = invoke("validate --config " + bad_gain.string(), "val_bad");
  CHECK(val.code == 1);
  CHECK(val.out.find("configuration invalid") != std::string::npos);
  CHECK(val.out.find("positive design constant") != std::string::npos);
  const Invocation r = invoke("run --config " + bad_gain.string(), "run_bad");
  CHECK(r.code == 1);
  CHECK(r.err.find("positive design constant") != std::string::npos);

  const fs::path typo = kScratch / "typo.json";
  spit(typo, R"({"kinematic_gains": {"klx": 2.0}})");
  const Invocation t = invoke("validate --config " + typo.string(), "val_typo");
  CHECK(t.code == 1);
  CHECK(t.err.find("unrecognized key 'klx'") != std::string::npos);

  const Invocation missing = invoke("run --config no_such_file.json", "missing");
  CHECK(missing.code == 1);
  CHECK(missing.err.find("cannot read config file") != std::string::npos);
}

TEST_CASE("runtime guard trips exit 2 and leave no partial outputs") {
  const fs::path cfg_path = kScratch / "underflow.json";
  spit(cfg_path, short_config_json(0.1, nullptr, 0.0));

  // The degenerate initial estimate is structurally fine...
  const Invocation val = invoke("validate --config " + cfg_path.string(), "val_underflow");
  CHECK(val.code == 0);

  // ...but the torque law rejects it on the first step.
  const fs::path out_dir = kScratch / "underflow_out";
  const Invocation r =
      invoke("run --config " + cfg_path.string() + " --out " + out_dir.string(), "run_underflow");
  CHECK(r.code == 2);
  CHECK(r.err.find("parameter estimate underflow") != std::string::npos);
  CHECK(r.err.find("robot 1") != std::string::npos);
  CHECK(!fs::exists(out_dir / "trace.csv"));
  CHECK(!fs::exists(out_dir / "metrics.txt"));
}

TEST_CASE("compare writes the report and all per-variant artifacts") {
  const fs::path cfg_path = kScratch / "cmp.json";
  spit(cfg_path, short_config_json(0.05));
  const fs::path out_dir = kScratch / "cmp_out";
  const Invocation r =
      invoke("compare --config " + cfg_path.string() + " --out " + out_dir.string(), "compare");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("total velocity error by variant and follower") != std::string::npos);
  CHECK(r.out.find("per-follower ranking") != std::string::npos);

  CHECK(fs::exists(out_dir / "compare.txt"));
  for (const char* variant :
       {"backstepping", "bioinspired", "backstepping_learning", "bioinspired_learning"}) {
    CHECK(fs::exists(out_dir / ("trace_" + std::string(variant) + ".csv")));
    CHECK(fs::exists(out_dir / ("metrics_" + std::string(variant) + ".txt")));
  }
  const std::string report = slurp(out_dir / "compare.txt");
  CHECK(report.find("robot_1: ") != std::string::npos);
  CHECK(report.find(" < ") != std::string::npos);
}

TEST_CASE("demo honors overrides") {
  const fs::path out_dir = kScratch / "demo_out";
  const Invocation r = invoke(
      "demo --horizon 0.05 --variant backstepping --out " + out_dir.string(), "demo_run");
  REQUIRE(r.code == 0);
  CHECK(slurp(out_dir / "metrics.txt").find("variant = backstepping") != std::string::npos);

  const fs::path cmp_dir = kScratch / "demo_cmp";
  const Invocation c =
      invoke("demo --compare --horizon 0.02 --out " + cmp_dir.string(), "demo_compare");
  REQUIRE(c.code == 0);
  CHECK(fs::exists(cmp_dir / "compare.txt"));
  CHECK(fs::exists(cmp_dir / "trace_bioinspired.csv"));

  CHECK(invoke("demo --variant bogus", "demo_badvariant").code == 1);
  CHECK(invoke("demo --dt 0.02 --horizon 0.05", "demo_baddt").code == 1);
}
