#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stiefel/dynamics.hpp"
#include "stiefel/stability.hpp"

namespace stiefel {

enum class InitialKind {
  haar,
  splay_circle,
  splay_sphere,
  splay_st23,
  perturbed_splay,
  explicit_agents
};

struct InitialSpec {
  InitialKind kind = InitialKind::haar;
  /// Splay family perturbed by `perturbed_splay`.
  InitialKind base = InitialKind::splay_st23;
  /// Frobenius norm of the tangent perturbation applied to each agent.
  double magnitude = 0.0;
  std::vector<Matrix> agents;
};

struct Scenario {
  Eigen::Index n = 2;
  Eigen::Index p = 1;
  WeightedGraph graph = cycle_graph(5);
  /// Present iff the model is "kuramoto".
  std::optional<FrequencySet> frequencies;
  InitialSpec initial;
  double t_end = 500.0;
  double dt = 0.01;
  std::size_t record_every = 100;
  std::uint64_t seed = 0;
  double sync_eps = 1e-6;
};

/// Parses the scenario schema; unknown fields and bad values raise
/// ConfigError naming the offending field.
Scenario scenario_from_json(const nlohmann::json& j);

/// Builds the initial configuration for `seed`.
Configuration initial_configuration(const Scenario& s, std::uint64_t seed);

/// Adds a random tangent direction of Frobenius norm `magnitude` to each
/// agent, then retracts.
Configuration perturb(const Configuration& c, double magnitude, Rng& rng);

struct RunSummary {
  double final_V = 0.0;
  bool synced = false;
  double t_end = 0.0;
  Eigen::Index n = 0;
  Eigen::Index p = 0;
  std::size_t N = 0;
  std::uint64_t seed = 0;
};

struct RunResult {
  Trajectory trajectory;
  RunSummary summary;
};

/// Deterministic in the scenario and its seed.
RunResult run_scenario(const Scenario& s);

enum class Outcome { consensus, splay_like, other };
std::string to_string(Outcome o);

/// Pairwise-distance tolerance for the circle splay signature.
inline constexpr double kSplaySignatureTol = 1e-3;

struct TrialSummary {
  std::uint64_t seed = 0;
  double final_V = 0.0;
  double final_distance = 0.0;
  /// Distance to the circle splay signature; NaN off St(1,2).
  double splay_error = 0.0;
  Outcome label = Outcome::other;
};

struct MonteCarloResult {
  std::size_t trials = 0;
  std::size_t synced_count = 0;
  double sync_fraction = 0.0;
  std::map<std::string, std::size_t> outcome_histogram;
  std::vector<TrialSummary> per_trial;
};

/// One trial from a Haar start drawn with `seed`; only the final state is
/// kept.
TrialSummary run_trial(const Scenario& s, std::uint64_t seed);

/// Labels a final state: consensus when synchronized to `sync_eps`,
/// splay_like when on St(1,2) and within kSplaySignatureTol of the splay
/// distance signature, other otherwise.
Outcome label_state(const Configuration& c, double sync_eps);

/// Trials use seeds s.seed, s.seed + 1, ... and run on the OpenMP pool.
/// Requires a Haar initial condition.
MonteCarloResult monte_carlo(const Scenario& s, std::size_t trials);

MonteCarloResult summarize_trials(std::vector<TrialSummary> trials);

/// Both classifiers for all 1 <= p < n <= n_max. Throws std::logic_error if
/// they ever disagree.
std::vector<StabilityReport> classify_table(int n_max);

// Artifact writers.
void write_trajectory_csv(const Trajectory& t, const std::filesystem::path& path);
nlohmann::ordered_json summary_json(const RunSummary& s);
nlohmann::ordered_json montecarlo_json(const MonteCarloResult& r);
std::string classify_csv(const std::vector<StabilityReport>& rows);
void write_text(const std::filesystem::path& path, const std::string& text);

// State files used by the `splay` and `check` subcommands:
// {"n": n, "p": p, "agents": [[[row], ...], ...], "graph": {...}}.
nlohmann::ordered_json state_json(const Configuration& c, const WeightedGraph& g);
std::pair<Configuration, WeightedGraph> state_from_json(const nlohmann::json& j);

Matrix matrix_from_json(const nlohmann::json& j, const std::string& field);
nlohmann::json matrix_to_json(const Matrix& m);

}  // namespace stiefel
