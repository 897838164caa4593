#include "stiefel/dynamics.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>

#include "stiefel/kernels.hpp"

namespace stiefel {

namespace {

constexpr double kSkewTol = 1e-12;

void require_skew(const Matrix& m, Eigen::Index dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim) {
    throw SizeMismatch(std::string(what) + " must be " + std::to_string(dim) +
                       "x" + std::to_string(dim));
  }
  const double defect = sym(m).norm();
  if (defect > kSkewTol) {
    throw NotSkew(std::string(what) + " is not skew-symmetric (sym part " +
                  std::to_string(defect) + ")");
  }
}

kernels::FieldEvaluator make_field(const Configuration& c,
                                   const WeightedGraph& g,
                                   const std::optional<FrequencySet>& f) {
  if (f) {
    f->validate(c.size(), c.n(), c.p());
    return kernels::FieldEvaluator(g, c.n(), c.p(), f->omega, f->xi);
  }
  return kernels::FieldEvaluator(g, c.n(), c.p());
}

std::vector<TangentVector> unpack_tangent(const Configuration& c,
                                          const Matrix& field) {
  std::vector<TangentVector> out;
  out.reserve(c.size());
  const Eigen::Index p = c.p();
  for (std::size_t i = 0; i < c.size(); ++i) {
    // Tangency holds analytically; the loose tolerance absorbs roundoff
    // proportional to the coupling strength.
    out.emplace_back(field.middleCols(static_cast<Eigen::Index>(i) * p, p),
                     c[i], 1e-8 * (1.0 + field.norm()));
  }
  return out;
}

}  // namespace

Configuration::Configuration(std::vector<StiefelPoint> agents)
    : agents_(std::move(agents)) {
  if (agents_.empty()) throw SizeMismatch("configuration has no agents");
  for (const auto& a : agents_) {
    if (a.n() != agents_.front().n() || a.p() != agents_.front().p()) {
      throw SizeMismatch("agents live on different Stiefel manifolds");
    }
  }
}

Configuration Configuration::from_packed(const Matrix& packed, Eigen::Index p) {
  if (p < 1 || packed.cols() % p != 0) {
    throw SizeMismatch("packed state width is not a multiple of p");
  }
  std::vector<StiefelPoint> agents;
  for (Eigen::Index i = 0; i < packed.cols() / p; ++i) {
    agents.push_back(StiefelPoint::trusted(packed.middleCols(i * p, p)));
  }
  return Configuration(std::move(agents));
}

Configuration Configuration::from_packed_checked(const Matrix& packed,
                                                 Eigen::Index p, double tol) {
  if (p < 1 || packed.cols() % p != 0) {
    throw SizeMismatch("packed state width is not a multiple of p");
  }
  std::vector<StiefelPoint> agents;
  for (Eigen::Index i = 0; i < packed.cols() / p; ++i) {
    agents.push_back(validate(packed.middleCols(i * p, p), tol));
  }
  return Configuration(std::move(agents));
}

Matrix Configuration::packed() const {
  const Eigen::Index p = this->p();
  Matrix out(n(), static_cast<Eigen::Index>(size()) * p);
  for (std::size_t i = 0; i < size(); ++i) {
    out.middleCols(static_cast<Eigen::Index>(i) * p, p) = agents_[i].data();
  }
  return out;
}

FrequencySet FrequencySet::common(std::size_t agents, const Matrix& omega,
                                  const Matrix& xi) {
  return FrequencySet{std::vector<Matrix>(agents, omega),
                      std::vector<Matrix>(agents, xi)};
}

void FrequencySet::validate(std::size_t agents, Eigen::Index n,
                            Eigen::Index p) const {
  if (omega.size() != agents || xi.size() != agents) {
    throw SizeMismatch("frequency set needs one Omega and one Xi per agent");
  }
  for (const auto& m : omega) require_skew(m, n, "Omega");
  for (const auto& m : xi) require_skew(m, p, "Xi");
}

void check_sizes(const Configuration& c, const WeightedGraph& g) {
  if (c.size() != g.n_nodes()) {
    throw SizeMismatch("configuration has " + std::to_string(c.size()) +
                       " agents but the graph has " +
                       std::to_string(g.n_nodes()) + " nodes");
  }
}

double potential(const Configuration& c, const WeightedGraph& g) {
  check_sizes(c, g);
  double v = 0.0;
  for (const Edge& e : g.edges()) {
    v += e.weight * (c[e.i].data() - c[e.j].data()).squaredNorm();
  }
  return v;
}

std::vector<TangentVector> gradient(const Configuration& c,
                                    const WeightedGraph& g) {
  check_sizes(c, g);
  kernels::FieldEvaluator field(g, c.n(), c.p());
  Matrix out;
  field(c.packed(), out);
  return unpack_tangent(c, -out);
}

std::vector<TangentVector> flow_field(const Configuration& c,
                                      const WeightedGraph& g,
                                      const std::optional<FrequencySet>& f) {
  check_sizes(c, g);
  auto field = make_field(c, g, f);
  Matrix out;
  field(c.packed(), out);
  return unpack_tangent(c, out);
}

Trajectory integrate(const Configuration& c0, const WeightedGraph& g,
                     const std::optional<FrequencySet>& f,
                     const IntegrateOptions& opts) {
  check_sizes(c0, g);
  if (!(opts.dt > 0.0)) throw Error("integrate: dt must be positive");
  if (!(opts.t_end >= 0.0)) throw Error("integrate: t_end must be nonnegative");
  if (opts.record_every == 0) throw Error("integrate: record_every must be >= 1");

  kernels::Rk4Stepper stepper(make_field(c0, g, f));
  const Eigen::Index p = c0.p();
  Matrix state = c0.packed();

  Trajectory traj;
  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.states.push_back(Configuration::from_packed(state, p));
    traj.potential_values.push_back(kernels::packed_potential(g, state, p));
  };
  record(0.0);

  const auto steps = static_cast<std::size_t>(
      std::ceil(opts.t_end / opts.dt - 1e-9));
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t_prev = static_cast<double>(k - 1) * opts.dt;
    const double t = k == steps ? opts.t_end : static_cast<double>(k) * opts.dt;
    if (!stepper.step(state, t - t_prev)) {
      throw RankDeficient("integrate: retraction lost rank at t = " +
                          std::to_string(t) + "; reduce dt");
    }
    if (k % opts.record_every == 0 || k == steps) record(t);
  }
  return traj;
}

Matrix expm_skew(const Matrix& a) {
  require_skew(a, a.rows(), "matrix exponential argument");
  Matrix e = a.exp();
  return e;
}

Trajectory rotating_frame(const Trajectory& traj, const Matrix& omega,
                          const Matrix& xi) {
  if (traj.states.empty()) return traj;
  const Eigen::Index n = traj.states.front().n();
  const Eigen::Index p = traj.states.front().p();
  require_skew(omega, n, "Omega");
  require_skew(xi, p, "Xi");
  Trajectory out;
  out.times = traj.times;
  out.potential_values = traj.potential_values;
  out.states.reserve(traj.states.size());
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const double t = traj.times[k];
    const Matrix left = expm_skew(-t * omega);
    const Matrix right = expm_skew(-t * xi);
    std::vector<StiefelPoint> agents;
    for (const auto& s : traj.states[k].agents()) {
      agents.push_back(StiefelPoint::trusted(left * s.data() * right));
    }
    out.states.emplace_back(std::move(agents));
  }
  return out;
}

double max_pairwise_distance(const Configuration& c) {
  return kernels::packed_max_pairwise(c.packed(), c.p());
}

bool sync_state(const Configuration& c, double eps) {
  if (!(eps > 0.0)) throw Error("sync_state: eps must be positive");
  return max_pairwise_distance(c) <= eps;
}

}  // namespace stiefel
