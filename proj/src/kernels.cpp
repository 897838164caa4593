#include "stiefel/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace stiefel::kernels {

bool orthonormalize_columns(Eigen::Ref<Matrix> q) {
  const Eigen::Index p = q.cols();
  for (Eigen::Index k = 0; k < p; ++k) {
    auto v = q.col(k);
    const double original = v.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < k; ++j) v -= q.col(j).dot(v) * q.col(j);
    }
    const double norm = v.norm();
    if (!(norm > 1e-12 * original) || !std::isfinite(norm)) return false;
    v /= norm;
  }
  return true;
}

FieldEvaluator::FieldEvaluator(const WeightedGraph& g, Eigen::Index n,
                               Eigen::Index p, std::vector<Matrix> omega,
                               std::vector<Matrix> xi)
    : graph_(&g),
      n_(n),
      p_(p),
      omega_(std::move(omega)),
      xi_(std::move(xi)),
      sigma_(n, p),
      gram_(p, p),
      gram_sym_(p, p) {}

void FieldEvaluator::operator()(const Matrix& state, Matrix& out) {
  const std::size_t agents = graph_->n_nodes();
  out.resize(n_, static_cast<Eigen::Index>(agents) * p_);
  for (std::size_t i = 0; i < agents; ++i) {
    const auto s = state.middleCols(static_cast<Eigen::Index>(i) * p_, p_);
    auto o = out.middleCols(static_cast<Eigen::Index>(i) * p_, p_);
    sigma_.setZero();
    for (const Neighbor& nb : graph_->neighbors(i)) {
      sigma_.noalias() +=
          nb.weight * state.middleCols(static_cast<Eigen::Index>(nb.node) * p_, p_);
    }
    // Π(Σ,S) = Σ − S·sym(SᵀΣ)
    gram_.noalias() = s.transpose() * sigma_;
    gram_sym_ = 0.5 * (gram_ + gram_.transpose());
    o = sigma_;
    o.noalias() -= s * gram_sym_;
    if (!omega_.empty()) o.noalias() += omega_[i] * s;
    if (!xi_.empty()) o.noalias() += s * xi_[i];
  }
}

Rk4Stepper::Rk4Stepper(FieldEvaluator field) : field_(std::move(field)) {}

bool Rk4Stepper::step(Matrix& state, double dt) {
  field_(state, k1_);
  tmp_ = state + (0.5 * dt) * k1_;
  field_(tmp_, k2_);
  tmp_ = state + (0.5 * dt) * k2_;
  field_(tmp_, k3_);
  tmp_ = state + dt * k3_;
  field_(tmp_, k4_);
  state += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
  const Eigen::Index p = field_.p();
  const Eigen::Index agents = state.cols() / p;
  for (Eigen::Index i = 0; i < agents; ++i) {
    if (!orthonormalize_columns(state.middleCols(i * p, p))) return false;
  }
  return true;
}

double packed_potential(const WeightedGraph& g, const Matrix& state,
                        Eigen::Index p) {
  double v = 0.0;
  for (const Edge& e : g.edges()) {
    v += e.weight * (state.middleCols(static_cast<Eigen::Index>(e.i) * p, p) -
                     state.middleCols(static_cast<Eigen::Index>(e.j) * p, p))
                        .squaredNorm();
  }
  return v;
}

double packed_max_pairwise(const Matrix& state, Eigen::Index p) {
  const Eigen::Index agents = state.cols() / p;
  double d = 0.0;
  for (Eigen::Index i = 0; i < agents; ++i) {
    for (Eigen::Index j = i + 1; j < agents; ++j) {
      d = std::max(d, (state.middleCols(i * p, p) - state.middleCols(j * p, p))
                          .squaredNorm());
    }
  }
  return std::sqrt(d);
}

}  // namespace stiefel::kernels
