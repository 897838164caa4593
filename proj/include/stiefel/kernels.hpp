#pragma once

// Allocation-free inner loops shared by the dynamics and harness modules.
// A configuration of N agents on St(p,n) is packed as one n×(N·p) matrix,
// agent i occupying columns [i·p, (i+1)·p).

#include <Eigen/Dense>

#include <vector>

#include "stiefel/graph.hpp"

namespace stiefel::kernels {

using Matrix = Eigen::MatrixXd;

/// In-place thin QR (Gram-Schmidt with one reorthogonalization pass);
/// leaves the Q factor with positive R diagonal. Returns false on rank loss.
bool orthonormalize_columns(Eigen::Ref<Matrix> q);

/// Evaluates Ω_i S_i + S_i Ξ_i + Π_i Σ_j a_ij S_j for every agent using the
/// polynomial extension of Π, which stays defined off the manifold.
class FieldEvaluator {
 public:
  /// `omega`/`xi` are either empty or hold one matrix per agent.
  FieldEvaluator(const WeightedGraph& g, Eigen::Index n, Eigen::Index p,
                 std::vector<Matrix> omega = {}, std::vector<Matrix> xi = {});

  void operator()(const Matrix& state, Matrix& out);

  Eigen::Index n() const noexcept { return n_; }
  Eigen::Index p() const noexcept { return p_; }
  std::size_t agents() const noexcept { return graph_->n_nodes(); }

 private:
  const WeightedGraph* graph_;
  Eigen::Index n_, p_;
  std::vector<Matrix> omega_, xi_;
  Matrix sigma_, gram_, gram_sym_;
};

/// Classical RK4 on the packed ambient state followed by per-agent QR.
class Rk4Stepper {
 public:
  explicit Rk4Stepper(FieldEvaluator field);

  /// Advances `state` by `dt`. Returns false when a QR lost rank.
  bool step(Matrix& state, double dt);

  FieldEvaluator& field() noexcept { return field_; }

 private:
  FieldEvaluator field_;
  Matrix k1_, k2_, k3_, k4_, tmp_;
};

/// Σ_e a_ij ‖S_i − S_j‖² on a packed state.
double packed_potential(const WeightedGraph& g, const Matrix& state,
                        Eigen::Index p);

/// max over all pairs of ‖S_i − S_j‖_F on a packed state.
double packed_max_pairwise(const Matrix& state, Eigen::Index p);

}  // namespace stiefel::kernels
