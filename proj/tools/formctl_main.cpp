#include <filesystem>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "formctl/config.hpp"
#include "formctl/graph.hpp"
#include "formctl/trace.hpp"

namespace {

namespace fs = std::filesystem;
using namespace formctl;

struct Overrides {
  double dt = -1.0;
  double horizon = -1.0;
  int decimation = -1;
  std::string variant;

  void apply(ScenarioConfig& cfg) const {
    if (dt > 0.0) cfg.dt = dt;
    if (horizon > 0.0) cfg.horizon = horizon;
    if (decimation > 0) cfg.decimation = decimation;
    if (!variant.empty()) cfg.variant = variant_from_name(variant);
  }
};

void add_override_options(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--dt", ov.dt, "Override the integration step (s)");
  cmd->add_option("--horizon", ov.horizon, "Override the simulated duration (s)");
  cmd->add_option("--decimation", ov.decimation, "Override the trace logging stride (steps)");
  cmd->add_option("--variant", ov.variant,
                  "Override the controller variant: backstepping, bioinspired, "
                  "backstepping_learning, bioinspired_learning");
}

// All outputs of one command are staged in memory and written together;
// if anything fails, every file written so far is removed again.
void commit_outputs(const std::string& out_dir,
                    const std::vector<std::pair<std::string, std::string>>& files) {
  fs::create_directories(out_dir);
  std::vector<std::string> written;
  try {
    for (const auto& [name, content] : files) {
      const std::string path = (fs::path(out_dir) / name).string();
      write_file_atomically(path, content);
      written.push_back(path);
    }
  } catch (...) {
    for (const std::string& path : written) {
      std::error_code ec;
      fs::remove(path, ec);
    }
    throw;
  }
  for (const auto& [name, content] : files) {
    std::cout << "wrote " << (fs::path(out_dir) / name).string() << '\n';
  }
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
}

void print_run_summary(const RunResult& r) {
  std::cout << "variant " << variant_name(r.variant) << ", " << r.n << " followers, dt " << r.dt
            << ", horizon " << r.horizon << ", " << r.steps << " steps\n";
  for (int i = 0; i < r.n; ++i) {
    std::cout << "robot_" << i + 1 << ": total_velocity_error = "
              << r.metrics[static_cast<size_t>(i)].total_velocity_error << '\n';
  }
}

int do_run(const ScenarioConfig& cfg, const std::string& out_dir) {
  const RunResult result = run(cfg);
  print_warnings(result.warnings);
  print_run_summary(result);
  commit_outputs(out_dir, {{"trace.csv", trace_csv(result.trace)},
                           {"metrics.txt", metrics_text(result)}});
  return 0;
}

int do_compare(const ScenarioConfig& cfg, const std::string& out_dir) {
  const CompareResult result = compare(cfg);
  print_warnings(result.runs.front().warnings);
  std::vector<std::pair<std::string, std::string>> files;
  files.emplace_back("compare.txt", compare_report(result));
  for (const RunResult& r : result.runs) {
    files.emplace_back("trace_" + variant_name(r.variant) + ".csv", trace_csv(r.trace));
    files.emplace_back("metrics_" + variant_name(r.variant) + ".txt", metrics_text(r));
  }
  std::cout << compare_report(result);
  commit_outputs(out_dir, files);
  return 0;
}

int do_validate(const ScenarioConfig& cfg) {
  const std::vector<std::string> problems = validate_config(cfg);
  if (problems.empty()) {
    std::cout << "configuration valid\n";
    std::cout << "h_matrix minimum eigenvalue = " << min_symmetric_eigenvalue(h_matrix(cfg.topology))
              << '\n';
    const double g1 = cfg.gamma1 ? *cfg.gamma1
                                 : sampled_max_linear_accel(cfg.trajectory, cfg.horizon, 1000);
    const double g2 = cfg.gamma2 ? *cfg.gamma2
                                 : sampled_max_angular_accel(cfg.trajectory, cfg.horizon, 1000);
    print_warnings(gain_sufficiency_warning(cfg.estimator_gains, g1, g2, cfg.topology.n));
  } else {
    std::cout << "configuration invalid:\n";
    for (const std::string& p : problems) std::cout << "  - " << p << '\n';
  }
  std::cout << "resolved configuration:\n" << resolved_config_json(cfg);
  return problems.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic leader-follower formation control simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string emit_config_path;
  bool demo_compare = false;
  Overrides ov;

  CLI::App* cmd_run = app.add_subcommand("run", "Simulate one scenario; writes trace.csv and metrics.txt");
  cmd_run->add_option("--config", config_path, "Scenario JSON")->required();
  cmd_run->add_option("--out", out_dir, "Output directory (default .)");
  add_override_options(cmd_run, ov);

  CLI::App* cmd_compare = app.add_subcommand(
      "compare", "Simulate all four controller variants; writes compare.txt and per-variant traces");
  cmd_compare->add_option("--config", config_path, "Scenario JSON")->required();
  cmd_compare->add_option("--out", out_dir, "Output directory (default .)");
  add_override_options(cmd_compare, ov);

  CLI::App* cmd_validate =
      app.add_subcommand("validate", "Check a scenario and echo the resolved configuration");
  cmd_validate->add_option("--config", config_path, "Scenario JSON")->required();
  add_override_options(cmd_validate, ov);

  CLI::App* cmd_demo = app.add_subcommand("demo", "Run the built-in demo scenario");
  cmd_demo->add_option("--out", out_dir, "Output directory (default .)");
  cmd_demo->add_flag("--compare", demo_compare, "Run all four variants instead of one");
  cmd_demo->add_option("--emit-config", emit_config_path,
                       "Write the demo scenario as JSON to this path and exit");
  add_override_options(cmd_demo, ov);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    ScenarioConfig cfg;
    if (cmd_demo->parsed()) {
      cfg = demo_config();
    } else {
      cfg = load_config(config_path);
    }
    ov.apply(cfg);

    if (cmd_validate->parsed()) return do_validate(cfg);
    if (cmd_demo->parsed() && !emit_config_path.empty()) {
      write_file_atomically(emit_config_path, resolved_config_json(cfg));
      std::cout << "wrote " << emit_config_path << '\n';
      return 0;
    }
    {
      std::vector<std::string> problems = validate_config(cfg);
      if (!problems.empty()) throw ConfigError(std::move(problems));
    }
    if (cmd_compare->parsed() || (cmd_demo->parsed() && demo_compare)) {
      return do_compare(cfg, out_dir);
    }
    return do_run(cfg, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
