#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "stiefel/harness.hpp"

namespace stiefel {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

void write_trajectory_csv(const Trajectory& t, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << "t,agent,col,row,value,V\n";
  for (std::size_t k = 0; k < t.states.size(); ++k) {
    const std::string time = fmt17(t.times[k]);
    const std::string v = fmt17(t.potential_values[k]);
    const Configuration& c = t.states[k];
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Matrix& m = c[i].data();
      for (Eigen::Index col = 0; col < m.cols(); ++col) {
        for (Eigen::Index row = 0; row < m.rows(); ++row) {
          out << time << ',' << i << ',' << col << ',' << row << ','
              << fmt17(m(row, col)) << ',' << v << '\n';
        }
      }
    }
  }
  if (!out) throw Error("failed writing " + path.string());
}

nlohmann::ordered_json summary_json(const RunSummary& s) {
  nlohmann::ordered_json j;
  j["final_V"] = s.final_V;
  j["synced"] = s.synced;
  j["t_end"] = s.t_end;
  j["n"] = s.n;
  j["p"] = s.p;
  j["N"] = s.N;
  j["seed"] = s.seed;
  return j;
}

nlohmann::ordered_json montecarlo_json(const MonteCarloResult& r) {
  nlohmann::ordered_json j;
  j["trials"] = r.trials;
  j["synced_count"] = r.synced_count;
  j["sync_fraction"] = r.sync_fraction;
  nlohmann::ordered_json hist;
  for (const char* key : {"consensus", "splay_like", "other"}) {
    hist[key] = r.outcome_histogram.count(key) ? r.outcome_histogram.at(key) : 0;
  }
  j["outcome_histogram"] = hist;
  nlohmann::ordered_json trials = nlohmann::ordered_json::array();
  for (const auto& t : r.per_trial) {
    nlohmann::ordered_json row;
    row["seed"] = t.seed;
    row["final_V"] = t.final_V;
    row["final_distance"] = t.final_distance;
    if (std::isnan(t.splay_error)) {
      row["splay_error"] = nullptr;
    } else {
      row["splay_error"] = t.splay_error;
    }
    row["label"] = to_string(t.label);
    trials.push_back(std::move(row));
  }
  j["per_trial"] = std::move(trials);
  return j;
}

std::string classify_csv(const std::vector<StabilityReport>& rows) {
  std::ostringstream out;
  out << "p,n,agas_guaranteed,optimal_objective,m_minus,m_star,m_plus,lambda_star\n";
  for (const auto& r : rows) {
    out << r.p << ',' << r.n << ',' << (r.agas_guaranteed ? "true" : "false") << ','
        << fmt17(to_double(r.optimal_objective)) << ',' << r.optimal.minus << ','
        << r.optimal.star << ',' << r.optimal.plus << ','
        << fmt17(to_double(r.lambda_star)) << '\n';
  }
  return out.str();
}

nlohmann::ordered_json state_json(const Configuration& c, const WeightedGraph& g) {
  nlohmann::ordered_json j;
  j["n"] = c.n();
  j["p"] = c.p();
  nlohmann::ordered_json agents = nlohmann::ordered_json::array();
  for (const auto& s : c.agents()) agents.push_back(nlohmann::ordered_json(matrix_to_json(s.data())));
  j["agents"] = std::move(agents);
  j["graph"] = graph_to_json(g);
  return j;
}

std::pair<Configuration, WeightedGraph> state_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("agents") || !j.contains("graph")) {
    throw ConfigError("state: expected {\"agents\": [...], \"graph\": {...}}");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() != "n" && it.key() != "p" && it.key() != "agents" &&
        it.key() != "graph") {
      throw ConfigError("state: unknown field '" + it.key() + "'");
    }
  }
  WeightedGraph g = graph_from_json(j["graph"]);
  if (!j["agents"].is_array() || j["agents"].empty()) {
    throw ConfigError("state.agents: expected a nonempty array of matrices");
  }
  std::vector<StiefelPoint> agents;
  for (std::size_t i = 0; i < j["agents"].size(); ++i) {
    const std::string field = "state.agents[" + std::to_string(i) + "]";
    const Matrix m = matrix_from_json(j["agents"][i], field);
    try {
      agents.push_back(validate(m));
    } catch (const Error& e) {
      throw ConfigError(field + ": " + e.what());
    }
  }
  try {
    Configuration c(std::move(agents));
    if (j.contains("n") && j["n"] != c.n()) throw ConfigError("state.n: disagrees with agents");
    if (j.contains("p") && j["p"] != c.p()) throw ConfigError("state.p: disagrees with agents");
    check_sizes(c, g);
    return {std::move(c), std::move(g)};
  } catch (const SizeMismatch& e) {
    throw ConfigError(std::string("state: ") + e.what());
  }
}

}  // namespace stiefel
