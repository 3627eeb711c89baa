#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "freeride/config.hpp"
#include "freeride/engine.hpp"
#include "freeride/errors.hpp"
#include "freeride/presets.hpp"
#include "freeride/report.hpp"
#include "freeride/verification.hpp"

namespace {

int run_and_write(freeride::SimulationConfig cfg, const std::string& out_dir,
                  std::optional<std::uint64_t> seed) {
  if (seed) cfg.root_seed = *seed;
  const freeride::MetricsSeries series = freeride::run_replicas(cfg);
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out(std::filesystem::path(out_dir) / "config.json");
    out << freeride::serialize_config(cfg);
  }
  for (const std::string& path : freeride::write_outputs(cfg, series, out_dir))
    std::cout << "wrote " << path << "\n";
  std::cout << "wrote " << (std::filesystem::path(out_dir) / "config.json").string() << "\n";
  return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed) {
  using freeride::CheckResult;
  std::vector<CheckResult> results;
  if (suite == "kl") results = freeride::run_kl_suite(seed);
  else if (suite == "ucb_floor") results = freeride::run_ucb_floor_suite(2.0, 2.5, 3, 1000, 100000, 20, seed);
  else if (suite == "coupling") results = freeride::run_coupling_suite(seed);
  else if (suite == "all") results = freeride::run_all_suites(seed);
  else throw freeride::UnknownSuite("unknown suite '" + suite + "' (kl, ucb_floor, coupling, all)");

  bool ok = true;
  for (const CheckResult& r : results) {
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
    ok = ok && r.passed;
  }
  std::cout << (ok ? "all checks passed" : "some checks FAILED") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-agent bandit free-riding simulation lab"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", preset_name, suite = "all";
  std::optional<std::uint64_t> seed;
  bool full_scale = false;

  CLI::App* run = app.add_subcommand("run", "run an experiment from a config file");
  run->add_option("config", config_path, "path to a JSON config")->required();
  run->add_option("--out", out_dir, "output directory (default: out)");
  run->add_option("--seed", seed, "override the config's root seed");

  CLI::App* preset = app.add_subcommand("preset", "run a canned scenario");
  std::string names;
  for (const auto& n : freeride::preset_names()) names += n + " ";
  preset->add_option("name", preset_name, "one of: " + names)->required();
  preset->add_option("--out", out_dir, "output directory (default: out)");
  preset->add_option("--seed", seed, "override the preset's root seed");
  preset->add_flag("--full-scale", full_scale, "fig2_scaled: 50 players, 30 arms, d=10");

  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("suite", suite, "kl | ucb_floor | coupling | all");
  std::uint64_t verify_seed = 0;
  verify->add_option("--seed", verify_seed, "root seed for the checks");

  CLI::App* schema = app.add_subcommand("schema", "print the config file schema");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return run_and_write(freeride::parse_config_file(config_path), out_dir, seed);
    if (preset->parsed())
      return run_and_write(freeride::make_preset(preset_name, seed, full_scale), out_dir,
                           std::nullopt);
    if (verify->parsed()) return run_verify(suite, verify_seed);
    if (schema->parsed()) {
      std::cout << freeride::config_schema_text();
      return 0;
    }
  } catch (const freeride::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
