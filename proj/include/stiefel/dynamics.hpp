#pragma once

#include <optional>
#include <vector>

#include "stiefel/graph.hpp"
#include "stiefel/manifold.hpp"

namespace stiefel {

/// N agents on a common St(p,n).
class Configuration {
 public:
  /// Throws SizeMismatch if agents disagree on (n,p) or the list is empty.
  explicit Configuration(std::vector<StiefelPoint> agents);

  /// Unpacks an n×(N·p) matrix whose blocks are already orthonormal.
  static Configuration from_packed(const Matrix& packed, Eigen::Index p);

  /// Validates every block of `packed` against `tol`.
  static Configuration from_packed_checked(const Matrix& packed, Eigen::Index p,
                                           double tol = kOrthonormalTol);

  Matrix packed() const;

  const std::vector<StiefelPoint>& agents() const noexcept { return agents_; }
  const StiefelPoint& operator[](std::size_t i) const { return agents_[i]; }
  std::size_t size() const noexcept { return agents_.size(); }
  Eigen::Index n() const noexcept { return agents_.front().n(); }
  Eigen::Index p() const noexcept { return agents_.front().p(); }

 private:
  std::vector<StiefelPoint> agents_;
};

/// Per-agent frequency terms Ω_i ∈ so(n) and Ξ_i ∈ so(p).
struct FrequencySet {
  std::vector<Matrix> omega;
  std::vector<Matrix> xi;

  /// Same Ω and Ξ for every agent.
  static FrequencySet common(std::size_t agents, const Matrix& omega,
                             const Matrix& xi);

  /// Throws SizeMismatch on wrong counts/shapes and NotSkew when a matrix
  /// has ‖sym(M)‖_F > 1e-12.
  void validate(std::size_t agents, Eigen::Index n, Eigen::Index p) const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Configuration> states;
  std::vector<double> potential_values;
};

struct IntegrateOptions {
  double t_end = 0.0;
  double dt = 0.01;
  /// Record every k-th step; the final state is always recorded.
  std::size_t record_every = 1;
};

/// V = Σ_e a_ij ‖S_i − S_j‖².
double potential(const Configuration& c, const WeightedGraph& g);

/// ∇_i V = −Π_i Σ_j a_ij S_j for every agent. This is the ascent direction
/// of the flow below; it equals the Riemannian gradient of ½V.
std::vector<TangentVector> gradient(const Configuration& c,
                                    const WeightedGraph& g);

/// Ω_i S_i + S_i Ξ_i − ∇_i V; without frequencies just −∇_i V.
std::vector<TangentVector> flow_field(const Configuration& c,
                                      const WeightedGraph& g,
                                      const std::optional<FrequencySet>& f = {});

/// RK4 in the ambient space with a QR retraction per agent after each step.
/// Throws RankDeficient if a retraction fails.
Trajectory integrate(const Configuration& c0, const WeightedGraph& g,
                     const std::optional<FrequencySet>& f,
                     const IntegrateOptions& opts);

/// exp(A) for a skew-symmetric A (scaling and squaring Padé).
Matrix expm_skew(const Matrix& a);

/// S_i(t) = exp(−tΩ) X_i(t) exp(−tΞ) at every recorded time.
Trajectory rotating_frame(const Trajectory& traj, const Matrix& omega,
                          const Matrix& xi);

/// Largest chordal distance over all agent pairs.
double max_pairwise_distance(const Configuration& c);

/// All pairwise chordal distances are at most `eps`.
bool sync_state(const Configuration& c, double eps = 1e-6);

void check_sizes(const Configuration& c, const WeightedGraph& g);

}  // namespace stiefel
