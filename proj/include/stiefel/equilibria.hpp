#pragma once

#include <vector>

#include "stiefel/dynamics.hpp"

namespace stiefel {

struct EquilibriumCertificate {
  /// √(Σ_i ‖∇_i V‖²), the norm of the gradient-flow field.
  double residual = 0.0;
  /// Γ_i = S_iᵀ Σ_j a_ij S_j, symmetric at an equilibrium.
  std::vector<Matrix> gamma;
  /// max_i ‖skew(Γ_i)‖_F.
  double gamma_asymmetry = 0.0;
  bool is_equilibrium = false;
};

EquilibriumCertificate equilibrium_check(const Configuration& c,
                                         const WeightedGraph& g,
                                         double tol = 1e-10);

/// Agent i at angle 2πi/N on St(1,2).
Configuration splay_circle(std::size_t n_agents);

/// The circle splay on the equator of St(1,3).
Configuration splay_sphere(std::size_t n_agents);

/// St(2,3): first column e₃ for every agent, second column at angle 2πi/N
/// in the orthogonal plane.
Configuration splay_st23(std::size_t n_agents);

/// Max pairwise chordal distance; zero exactly on the consensus set.
double distance_to_consensus(const Configuration& c);

/// Sorted all-pairs chordal distances of `n_agents` equally spaced points
/// on a unit circle, 2 sin(π·k/N) for every pair.
std::vector<double> splay_distance_signature(std::size_t n_agents);

/// Sorted all-pairs chordal distances of a configuration.
std::vector<double> pairwise_distances(const Configuration& c);

/// Max deviation between the configuration's sorted pairwise distances and
/// the circle splay signature.
double splay_signature_error(const Configuration& c);

}  // namespace stiefel
