#include "stiefel/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stiefel/equilibria.hpp"
#include "stiefel/parallel.hpp"

namespace stiefel {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* k) { return it.key() == k; })) {
      throw ConfigError(where + ": unknown field '" + it.key() + "'");
    }
  }
}

template <typename T>
T get_field(const json& j, const std::string& field) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(field + ": wrong type");
  }
}

InitialKind splay_kind(const std::string& name, const std::string& field) {
  if (name == "splay_circle") return InitialKind::splay_circle;
  if (name == "splay_sphere") return InitialKind::splay_sphere;
  if (name == "splay_st23") return InitialKind::splay_st23;
  throw ConfigError(field + ": unknown splay family '" + name + "'");
}

InitialSpec parse_initial(const json& j) {
  InitialSpec spec;
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "haar") return spec;
    if (name == "perturbed_splay" || name == "explicit") {
      throw ConfigError("initial: '" + name + "' needs the object form");
    }
    spec.kind = splay_kind(name, "initial");
    return spec;
  }
  if (!j.is_object() || !j.contains("kind")) {
    throw ConfigError("initial: expected a string or an object with 'kind'");
  }
  const auto kind = get_field<std::string>(j["kind"], "initial.kind");
  if (kind == "haar") {
    reject_unknown(j, "initial", {"kind"});
  } else if (kind == "perturbed_splay") {
    reject_unknown(j, "initial", {"kind", "base", "magnitude"});
    spec.kind = InitialKind::perturbed_splay;
    spec.base = splay_kind(j.value("base", std::string("splay_st23")),
                           "initial.base");
    if (!j.contains("magnitude")) {
      throw ConfigError("initial.magnitude: required for perturbed_splay");
    }
    spec.magnitude = get_field<double>(j["magnitude"], "initial.magnitude");
    if (!(spec.magnitude >= 0.0)) {
      throw ConfigError("initial.magnitude: must be nonnegative");
    }
  } else if (kind == "explicit") {
    reject_unknown(j, "initial", {"kind", "agents"});
    spec.kind = InitialKind::explicit_agents;
    if (!j.contains("agents") || !j["agents"].is_array()) {
      throw ConfigError("initial.agents: expected an array of matrices");
    }
    for (std::size_t i = 0; i < j["agents"].size(); ++i) {
      spec.agents.push_back(matrix_from_json(
          j["agents"][i], "initial.agents[" + std::to_string(i) + "]"));
    }
  } else {
    reject_unknown(j, "initial", {"kind"});
    spec.kind = splay_kind(kind, "initial.kind");
  }
  return spec;
}

std::vector<Matrix> parse_matrix_list(const json& j, const std::string& key,
                                      std::size_t agents, Eigen::Index dim) {
  const std::string common = key + "_common";
  if (j.contains(key) && j.contains(common)) {
    throw ConfigError("frequencies: give either '" + key + "' or '" + common +
                      "', not both");
  }
  if (j.contains(common)) {
    return std::vector<Matrix>(agents,
                               matrix_from_json(j[common], "frequencies." + common));
  }
  if (j.contains(key)) {
    if (!j[key].is_array() || j[key].size() != agents) {
      throw ConfigError("frequencies." + key + ": expected one matrix per agent");
    }
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < agents; ++i) {
      out.push_back(matrix_from_json(
          j[key][i], "frequencies." + key + "[" + std::to_string(i) + "]"));
    }
    return out;
  }
  return std::vector<Matrix>(agents, Matrix::Zero(dim, dim));
}

}  // namespace

Matrix matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    throw ConfigError(field + ": expected a nonempty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ConfigError(field + ": ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = get_field<double>(row[static_cast<std::size_t>(c)], field);
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("scenario: expected a JSON object");
  reject_unknown(j, "scenario",
                 {"manifold", "graph", "model", "frequencies", "initial", "t_end",
                  "dt", "record_every", "seed", "sync_eps"});
  Scenario s;

  if (!j.contains("manifold") || !j["manifold"].is_object()) {
    throw ConfigError("manifold: required object {\"n\": n, \"p\": p}");
  }
  reject_unknown(j["manifold"], "manifold", {"n", "p"});
  if (!j["manifold"].contains("n") || !j["manifold"].contains("p")) {
    throw ConfigError("manifold: both n and p are required");
  }
  const auto n = get_field<long long>(j["manifold"]["n"], "manifold.n");
  const auto p = get_field<long long>(j["manifold"]["p"], "manifold.p");
  if (p < 1 || p > n) throw ConfigError("manifold: need 1 <= p <= n");
  s.n = static_cast<Eigen::Index>(n);
  s.p = static_cast<Eigen::Index>(p);

  if (!j.contains("graph")) throw ConfigError("graph: required");
  s.graph = graph_from_json(j["graph"]);
  const std::size_t agents = s.graph.n_nodes();

  const std::string model =
      j.contains("model") ? get_field<std::string>(j["model"], "model") : "gradient";
  if (model != "gradient" && model != "kuramoto") {
    throw ConfigError("model: expected \"gradient\" or \"kuramoto\"");
  }
  if (model == "gradient" && j.contains("frequencies")) {
    throw ConfigError("frequencies: only allowed with model \"kuramoto\"");
  }
  if (model == "kuramoto") {
    const json freq = j.value("frequencies", json::object());
    if (!freq.is_object()) throw ConfigError("frequencies: expected an object");
    reject_unknown(freq, "frequencies", {"omega", "omega_common", "xi", "xi_common"});
    FrequencySet f{parse_matrix_list(freq, "omega", agents, s.n),
                   parse_matrix_list(freq, "xi", agents, s.p)};
    try {
      f.validate(agents, s.n, s.p);
    } catch (const Error& e) {
      throw ConfigError(std::string("frequencies: ") + e.what());
    }
    s.frequencies = std::move(f);
  }

  if (j.contains("initial")) s.initial = parse_initial(j["initial"]);
  if (j.contains("t_end")) s.t_end = get_field<double>(j["t_end"], "t_end");
  if (j.contains("dt")) s.dt = get_field<double>(j["dt"], "dt");
  if (j.contains("record_every")) {
    const auto r = get_field<long long>(j["record_every"], "record_every");
    if (r < 1) throw ConfigError("record_every: must be >= 1");
    s.record_every = static_cast<std::size_t>(r);
  }
  if (j.contains("seed")) s.seed = get_field<std::uint64_t>(j["seed"], "seed");
  if (j.contains("sync_eps")) s.sync_eps = get_field<double>(j["sync_eps"], "sync_eps");
  if (!(s.t_end >= 0.0)) throw ConfigError("t_end: must be nonnegative");
  if (!(s.dt > 0.0)) throw ConfigError("dt: must be positive");
  if (!(s.sync_eps > 0.0)) throw ConfigError("sync_eps: must be positive");

  // Surface shape problems of the initial condition at parse time.
  if (s.initial.kind != InitialKind::haar) initial_configuration(s, s.seed);
  return s;
}

namespace {

Configuration splay_for(InitialKind kind, const Scenario& s) {
  const std::size_t agents = s.graph.n_nodes();
  auto require = [&](Eigen::Index n, Eigen::Index p, const char* name) {
    if (s.n != n || s.p != p) {
      throw ConfigError(std::string("initial: ") + name + " lives on St(" +
                        std::to_string(p) + "," + std::to_string(n) +
                        "), scenario manifold differs");
    }
    if (agents < 3) throw ConfigError("initial: splay states need N >= 3");
  };
  switch (kind) {
    case InitialKind::splay_circle:
      require(2, 1, "splay_circle");
      return splay_circle(agents);
    case InitialKind::splay_sphere:
      require(3, 1, "splay_sphere");
      return splay_sphere(agents);
    case InitialKind::splay_st23:
      require(3, 2, "splay_st23");
      return splay_st23(agents);
    default:
      throw ConfigError("initial: not a splay family");
  }
}

}  // namespace

Configuration perturb(const Configuration& c, double magnitude, Rng& rng) {
  std::normal_distribution<double> normal;
  std::vector<StiefelPoint> agents;
  for (const auto& s : c.agents()) {
    Matrix g(s.n(), s.p());
    for (Eigen::Index col = 0; col < g.cols(); ++col) {
      for (Eigen::Index row = 0; row < g.rows(); ++row) g(row, col) = normal(rng);
    }
    Matrix t = project_raw(g, s.data());
    const double norm = t.norm();
    if (norm > 0.0) t *= magnitude / norm;
    agents.push_back(StiefelPoint::trusted(qr_factor(s.data() + t)));
  }
  return Configuration(std::move(agents));
}

Configuration initial_configuration(const Scenario& s, std::uint64_t seed) {
  const std::size_t agents = s.graph.n_nodes();
  Rng rng(seed);
  switch (s.initial.kind) {
    case InitialKind::haar: {
      std::vector<StiefelPoint> pts;
      for (std::size_t i = 0; i < agents; ++i) pts.push_back(haar_sample(s.n, s.p, rng));
      return Configuration(std::move(pts));
    }
    case InitialKind::perturbed_splay:
      return perturb(splay_for(s.initial.base, s), s.initial.magnitude, rng);
    case InitialKind::explicit_agents: {
      if (s.initial.agents.size() != agents) {
        throw ConfigError("initial.agents: expected " + std::to_string(agents) +
                          " matrices");
      }
      std::vector<StiefelPoint> pts;
      for (std::size_t i = 0; i < agents; ++i) {
        const Matrix& m = s.initial.agents[i];
        const std::string field = "initial.agents[" + std::to_string(i) + "]";
        if (m.rows() != s.n || m.cols() != s.p) {
          throw ConfigError(field + ": shape differs from the manifold");
        }
        try {
          pts.push_back(validate(m));
        } catch (const Error& e) {
          throw ConfigError(field + ": " + e.what());
        }
      }
      return Configuration(std::move(pts));
    }
    default:
      return splay_for(s.initial.kind, s);
  }
}

RunResult run_scenario(const Scenario& s) {
  RunResult r;
  const Configuration c0 = initial_configuration(s, s.seed);
  r.trajectory = integrate(c0, s.graph, s.frequencies,
                           {s.t_end, s.dt, s.record_every});
  const Configuration& last = r.trajectory.states.back();
  r.summary = RunSummary{r.trajectory.potential_values.back(),
                         sync_state(last, s.sync_eps),
                         s.t_end,
                         s.n,
                         s.p,
                         s.graph.n_nodes(),
                         s.seed};
  return r;
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::consensus: return "consensus";
    case Outcome::splay_like: return "splay_like";
    default: return "other";
  }
}

Outcome label_state(const Configuration& c, double sync_eps) {
  if (sync_state(c, sync_eps)) return Outcome::consensus;
  if (c.n() == 2 && c.p() == 1 && c.size() >= 3 &&
      splay_signature_error(c) <= kSplaySignatureTol) {
    return Outcome::splay_like;
  }
  return Outcome::other;
}

TrialSummary run_trial(const Scenario& s, std::uint64_t seed) {
  const Configuration c0 = initial_configuration(s, seed);
  const Trajectory t = integrate(c0, s.graph, s.frequencies,
                                 {s.t_end, s.dt, std::numeric_limits<std::size_t>::max()});
  const Configuration& last = t.states.back();
  TrialSummary out;
  out.seed = seed;
  out.final_V = t.potential_values.back();
  out.final_distance = distance_to_consensus(last);
  out.splay_error = (last.n() == 2 && last.p() == 1 && last.size() >= 3)
                        ? splay_signature_error(last)
                        : std::numeric_limits<double>::quiet_NaN();
  out.label = label_state(last, s.sync_eps);
  return out;
}

MonteCarloResult summarize_trials(std::vector<TrialSummary> trials) {
  MonteCarloResult r;
  r.trials = trials.size();
  r.outcome_histogram = {{"consensus", 0}, {"splay_like", 0}, {"other", 0}};
  for (const auto& t : trials) {
    ++r.outcome_histogram[to_string(t.label)];
    if (t.label == Outcome::consensus) ++r.synced_count;
  }
  r.sync_fraction = r.trials == 0 ? 0.0
                                  : static_cast<double>(r.synced_count) /
                                        static_cast<double>(r.trials);
  r.per_trial = std::move(trials);
  return r;
}

MonteCarloResult monte_carlo(const Scenario& s, std::size_t trials) {
  if (trials < 1) throw ConfigError("trials: must be >= 1");
  if (s.initial.kind != InitialKind::haar) {
    throw ConfigError("initial: Monte Carlo needs a \"haar\" initial condition");
  }
  return summarize_trials(parallel::run_trials(s, trials));
}

std::vector<StabilityReport> classify_table(int n_max) {
  if (n_max < 2) throw ConfigError("nmax: must be >= 2");
  std::vector<StabilityReport> rows;
  for (int n = 2; n <= n_max; ++n) {
    for (int p = 1; p < n; ++p) {
      StabilityReport r = integer_program(p, n);
      if (r.agas_guaranteed != (r.optimal_objective == Rational(0))) {
        throw std::logic_error("classifiers disagree at p=" + std::to_string(p) +
                               ", n=" + std::to_string(n));
      }
      rows.push_back(r);
    }
  }
  return rows;
}

}  // namespace stiefel
