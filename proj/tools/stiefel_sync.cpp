// stiefel_sync: simulate, sample and classify Kuramoto-type consensus on
// Stiefel manifolds.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "stiefel/equilibria.hpp"
#include "stiefel/harness.hpp"

namespace fs = std::filesystem;
using namespace stiefel;

namespace {

constexpr int kConfigError = 1;
constexpr int kNumericError = 2;

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

Scenario load_scenario(const fs::path& path, std::optional<std::uint64_t> seed) {
  Scenario s = scenario_from_json(read_json(path));
  if (seed) s.seed = *seed;
  return s;
}

fs::path prepare_out(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("--out: cannot create " + dir.string() + ": " + ec.message());
  return dir;
}

void write_json(const fs::path& path, const nlohmann::ordered_json& j) {
  write_text(path, j.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Consensus dynamics on Stiefel manifolds"};
  app.require_subcommand(1);

  fs::path scenario_path, out_dir = ".", state_path;
  std::optional<std::uint64_t> seed;
  std::size_t trials = 100;
  int n_max = 16;
  std::string family = "circle";
  std::size_t agents = 5;
  double tol = 1e-10;

  auto* simulate = app.add_subcommand("simulate", "Integrate one scenario");
  simulate->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  simulate->add_option("--out", out_dir, "Output directory");
  simulate->add_option("--seed", seed, "Override the scenario seed");

  auto* montecarlo = app.add_subcommand("montecarlo", "Haar-random trials");
  montecarlo->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  montecarlo->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
  montecarlo->add_option("--out", out_dir, "Output directory");
  montecarlo->add_option("--seed", seed, "Base seed; trial k uses seed + k");

  auto* classify_cmd = app.add_subcommand("classify", "Threshold table for 1 <= p < n <= nmax");
  classify_cmd->add_option("--nmax", n_max, "Largest n")->check(CLI::Range(2, 64));
  classify_cmd->add_option("--out", out_dir, "Output directory");

  auto* splay = app.add_subcommand("splay", "Write a splay equilibrium state file");
  splay->add_option("--family", family, "circle, sphere or st23")
      ->check(CLI::IsMember({"circle", "sphere", "st23"}));
  splay->add_option("--agents", agents, "Number of agents on the cycle")->check(CLI::Range(3, 100000));
  splay->add_option("--out", out_dir, "Output directory");

  auto* check = app.add_subcommand("check", "Equilibrium certificate for a state file");
  check->add_option("--state", state_path, "State JSON")->required()->check(CLI::ExistingFile);
  check->add_option("--tol", tol, "Residual tolerance")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*simulate) {
      const Scenario s = load_scenario(scenario_path, seed);
      const fs::path dir = prepare_out(out_dir);
      const RunResult r = run_scenario(s);
      write_trajectory_csv(r.trajectory, dir / "trajectory.csv");
      write_json(dir / "summary.json", summary_json(r.summary));
      std::printf("final V %.6g, synced %s -> %s\n", r.summary.final_V,
                  r.summary.synced ? "yes" : "no", dir.string().c_str());
    } else if (*montecarlo) {
      const Scenario s = load_scenario(scenario_path, seed);
      const fs::path dir = prepare_out(out_dir);
      const MonteCarloResult r = monte_carlo(s, trials);
      write_json(dir / "montecarlo.json", montecarlo_json(r));
      std::printf("sync_fraction %.4f (%zu/%zu); consensus %zu, splay_like %zu, other %zu\n",
                  r.sync_fraction, r.synced_count, r.trials,
                  r.outcome_histogram.at("consensus"), r.outcome_histogram.at("splay_like"),
                  r.outcome_histogram.at("other"));
    } else if (*classify_cmd) {
      const fs::path dir = prepare_out(out_dir);
      const std::string csv = classify_csv(classify_table(n_max));
      write_text(dir / "classify.csv", csv);
      std::cout << csv;
    } else if (*splay) {
      const fs::path dir = prepare_out(out_dir);
      const Configuration c = family == "circle"   ? splay_circle(agents)
                              : family == "sphere" ? splay_sphere(agents)
                                                   : splay_st23(agents);
      const fs::path file = dir / ("splay_" + family + ".json");
      write_json(file, state_json(c, cycle_graph(agents)));
      std::printf("%s\n", file.string().c_str());
    } else if (*check) {
      const auto [c, g] = state_from_json(read_json(state_path));
      const EquilibriumCertificate cert = equilibrium_check(c, g, tol);
      nlohmann::ordered_json j;
      j["residual"] = cert.residual;
      j["gamma_asymmetry"] = cert.gamma_asymmetry;
      j["is_equilibrium"] = cert.is_equilibrium;
      j["potential"] = potential(c, g);
      j["trace_m"] = trace_m(c, g);
      j["distance_to_consensus"] = distance_to_consensus(c);
      std::cout << j.dump(2) << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.numeric() ? kNumericError : kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericError;
  }
  return 0;
}
