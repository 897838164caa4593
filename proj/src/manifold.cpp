#include "stiefel/manifold.hpp"

#include <cmath>
#include <string>

#include "stiefel/kernels.hpp"

namespace stiefel {

double orthonormality_defect(const Matrix& m) {
  const Eigen::Index p = m.cols();
  return (m.transpose() * m - Matrix::Identity(p, p)).norm();
}

StiefelPoint StiefelPoint::trusted(Matrix m) {
  if (m.cols() == 0 || m.rows() == 0 || m.cols() > m.rows()) {
    throw ShapeError("Stiefel point needs 1 <= p <= n, got " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  return StiefelPoint(std::move(m));
}

TangentVector::TangentVector(Matrix data, StiefelPoint base, double tol)
    : data_(std::move(data)), base_(std::move(base)) {
  if (data_.rows() != base_.n() || data_.cols() != base_.p()) {
    throw ShapeError("tangent vector shape does not match its base point");
  }
  const double defect = sym(base_.data().transpose() * data_).norm();
  if (defect > tol) {
    throw ShapeError("matrix is not tangent at base (sym part " +
                     std::to_string(defect) + ")");
  }
}

StiefelPoint validate(const Matrix& m, double tol) {
  if (m.cols() == 0 || m.rows() == 0 || m.cols() > m.rows()) {
    throw ShapeError("Stiefel point needs 1 <= p <= n, got " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  const double defect = orthonormality_defect(m);
  if (!(defect <= tol)) throw NotOrthonormal(defect);
  return StiefelPoint::trusted(m);
}

Matrix project_raw(const Matrix& x, const Matrix& s) {
  if (x.rows() != s.rows() || x.cols() != s.cols()) {
    throw ShapeError("projection operand shape mismatch");
  }
  return s * skew(s.transpose() * x) + x - s * (s.transpose() * x);
}

TangentVector tangent_project(const Matrix& x, const StiefelPoint& s) {
  return TangentVector(TangentVector::Unchecked{}, project_raw(x, s.data()), s);
}

Matrix qr_factor(const Matrix& m) {
  if (m.cols() > m.rows()) throw ShapeError("QR factor needs p <= n");
  Matrix q = m;
  if (!kernels::orthonormalize_columns(q)) {
    throw RankDeficient("QR retraction lost column rank; reduce the step size");
  }
  return q;
}

StiefelPoint retract(const StiefelPoint& s, const TangentVector& v, double t) {
  if (!(v.base() == s)) throw ShapeError("tangent vector based at another point");
  if (t == 0.0) return s;
  return StiefelPoint::trusted(qr_factor(s.data() + t * v.data()));
}

StiefelPoint haar_sample(Eigen::Index n, Eigen::Index p, Rng& rng) {
  if (p < 1 || p > n) throw ShapeError("haar_sample needs 1 <= p <= n");
  std::normal_distribution<double> normal;
  Matrix g(n, p);
  // Column-major fill order is part of the determinism contract.
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = normal(rng);
  }
  return StiefelPoint::trusted(qr_factor(g));
}

Matrix haar_orthogonal(Eigen::Index n, Rng& rng) {
  return haar_sample(n, n, rng).data();
}

double chordal_distance(const StiefelPoint& a, const StiefelPoint& b) {
  if (a.n() != b.n() || a.p() != b.p()) {
    throw ShapeError("chordal distance between different Stiefel manifolds");
  }
  return (a.data() - b.data()).norm();
}

}  // namespace stiefel
