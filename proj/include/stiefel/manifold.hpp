#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>

#include "stiefel/errors.hpp"

namespace stiefel {

using Matrix = Eigen::MatrixXd;

/// Tolerance on ‖SᵀS − I‖_F used when accepting external matrices.
inline constexpr double kOrthonormalTol = 1e-10;

/// Seeded random source used everywhere a sample is drawn.
using Rng = std::mt19937_64;

inline Matrix sym(const Matrix& a) { return 0.5 * (a + a.transpose()); }
inline Matrix skew(const Matrix& a) { return 0.5 * (a - a.transpose()); }

/// Frobenius inner product ⟨A,B⟩ = trace(AᵀB).
inline double inner(const Matrix& a, const Matrix& b) {
  return (a.array() * b.array()).sum();
}

/// ‖MᵀM − I‖_F.
double orthonormality_defect(const Matrix& m);

/// A point on St(p,n): an n×p matrix with orthonormal columns.
class StiefelPoint {
 public:
  /// Wraps a matrix the caller already knows to be orthonormal (output of a
  /// QR factor or an orthogonal transform). Only shape is checked.
  static StiefelPoint trusted(Matrix m);

  const Matrix& data() const noexcept { return data_; }
  Eigen::Index n() const noexcept { return data_.rows(); }
  Eigen::Index p() const noexcept { return data_.cols(); }

  friend bool operator==(const StiefelPoint& a, const StiefelPoint& b) {
    return a.data_ == b.data_;
  }

 private:
  explicit StiefelPoint(Matrix m) : data_(std::move(m)) {}
  Matrix data_;
};

/// A matrix in the tangent space of its base point.
class TangentVector {
 public:
  /// Checks sym(baseᵀ·data) ≈ 0 to `tol`.
  TangentVector(Matrix data, StiefelPoint base, double tol = kOrthonormalTol);

  const Matrix& data() const noexcept { return data_; }
  const StiefelPoint& base() const noexcept { return base_; }

 private:
  struct Unchecked {};
  TangentVector(Unchecked, Matrix data, StiefelPoint base)
      : data_(std::move(data)), base_(std::move(base)) {}
  friend TangentVector tangent_project(const Matrix&, const StiefelPoint&);

  Matrix data_;
  StiefelPoint base_;
};

/// Accepts `m` as a Stiefel point when ‖MᵀM − I‖_F ≤ tol.
/// Throws ShapeError for p > n or empty input, NotOrthonormal otherwise.
StiefelPoint validate(const Matrix& m, double tol = kOrthonormalTol);

/// Π(X,S) = S·skew(SᵀX) + (I − SSᵀ)X.
TangentVector tangent_project(const Matrix& x, const StiefelPoint& s);

/// Same formula on raw matrices, valid for any S (used off-manifold by the
/// integrator). Equal to X − S·sym(SᵀX).
Matrix project_raw(const Matrix& x, const Matrix& s);

/// Thin QR factor of `m` with nonnegative R diagonal.
/// Throws RankDeficient when a column collapses.
Matrix qr_factor(const Matrix& m);

/// Q factor of S + t·V (QR retraction).
StiefelPoint retract(const StiefelPoint& s, const TangentVector& v, double t);

/// Haar-distributed point: QR of an n×p standard normal matrix.
StiefelPoint haar_sample(Eigen::Index n, Eigen::Index p, Rng& rng);

/// Haar-distributed element of O(n).
Matrix haar_orthogonal(Eigen::Index n, Rng& rng);

/// ‖S1 − S2‖_F.
double chordal_distance(const StiefelPoint& a, const StiefelPoint& b);

}  // namespace stiefel
