#include "stiefel/stability.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace stiefel {

double f_bound(const StiefelPoint& x, const StiefelPoint& y) {
  if (x.n() != y.n() || x.p() != y.p()) {
    throw ShapeError("f_bound needs two points on the same Stiefel manifold");
  }
  const double n = static_cast<double>(x.n());
  const double p = static_cast<double>(x.p());
  const double ip = inner(x.data(), y.data());
  const double cross = (x.data().transpose() * y.data()).squaredNorm();
  // Same polynomial, grouped so that every bracket vanishes at X = Y.
  return (n - 0.5 * (p + 1.0)) * (ip - p) - 0.25 * (p + 2.0) * (cross - p) -
         0.25 * (ip - p) * (ip + p);
}

double trace_m(const Configuration& c, const WeightedGraph& g) {
  check_sizes(c, g);
  double half = 0.0;
  for (const Edge& e : g.edges()) half += e.weight * f_bound(c[e.j], c[e.i]);
  return 2.0 * half;
}

namespace {

double f_raw(const Matrix& x, const Matrix& y) {
  const double n = static_cast<double>(x.rows());
  const double p = static_cast<double>(x.cols());
  const double ip = inner(x, y);
  return (n - 0.5 * (p + 1.0)) * ip -
         0.25 * (p + 2.0) * (x.transpose() * y).squaredNorm() - 0.25 * ip * ip +
         (1.0 - n + p) * p;
}

// Euclidean partial of f with respect to the first argument; f is symmetric,
// so swapping the arguments gives the other partial.
Matrix f_partial(const Matrix& x, const Matrix& y) {
  const double n = static_cast<double>(x.rows());
  const double p = static_cast<double>(x.cols());
  const double ip = inner(x, y);
  return (n - 0.5 * (p + 1.0) - 0.5 * ip) * y -
         0.5 * (p + 2.0) * y * (y.transpose() * x);
}

}  // namespace

FAscent f_bound_ascent(const StiefelPoint& x0, const StiefelPoint& y0,
                       int max_iterations, double grad_tol) {
  if (x0.n() != y0.n() || x0.p() != y0.p()) {
    throw ShapeError("f_bound_ascent needs two points on the same manifold");
  }
  FAscent r{x0.data(), y0.data(), f_raw(x0.data(), y0.data()), 0};
  double step = 1.0;
  for (; r.iterations < max_iterations; ++r.iterations) {
    const Matrix gx = project_raw(f_partial(r.x, r.y), r.x);
    const Matrix gy = project_raw(f_partial(r.y, r.x), r.y);
    const double g2 = gx.squaredNorm() + gy.squaredNorm();
    if (std::sqrt(g2) <= grad_tol) break;
    step = std::min(1.0, 2.0 * step);
    bool moved = false;
    while (step > 1e-14) {
      const Matrix xn = qr_factor(r.x + step * gx);
      const Matrix yn = qr_factor(r.y + step * gy);
      const double fn = f_raw(xn, yn);
      if (fn >= r.value + 1e-4 * step * g2) {
        r.x = xn;
        r.y = yn;
        r.value = fn;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return r;
}

namespace {

void require_dims(int p, int n) {
  if (p < 1 || p >= n) {
    throw InvalidDimensions("need 1 <= p < n, got p=" + std::to_string(p) +
                            ", n=" + std::to_string(n));
  }
}

}  // namespace

Rational lambda_star(int p, int n, int m_minus, int m_star) {
  require_dims(p, n);
  if (m_minus < 0 || m_star < 0 || m_minus + m_star > p) {
    throw InvalidMultiplicities("multiplicities (" + std::to_string(m_minus) +
                                ", " + std::to_string(m_star) +
                                ") do not fit in p=" + std::to_string(p));
  }
  return Rational(2 * n - 2 * p - 1 + 2 * m_minus + m_star, p + 2 + m_star);
}

Rational ip_objective(int p, int n, const Multiplicities& m) {
  if (m.plus < 0 || m.minus + m.star + m.plus != p) {
    throw InvalidMultiplicities("multiplicities must sum to p");
  }
  const Rational lam = lambda_star(p, n, m.minus, m.star);
  const Rational tr = Rational(m.plus - m.minus) + lam * m.star;
  const Rational tr2 = Rational(m.plus + m.minus) + lam * lam * m.star;
  return (Rational(2 * n - p - 1, 2)) * tr - Rational(p + 2, 4) * tr2 -
         Rational(1, 4) * tr * tr + Rational((1 - n + p) * p);
}

bool ip_feasible(int p, int n, const Multiplicities& m) {
  if (m.star == 0) return true;
  const Rational lam = lambda_star(p, n, m.minus, m.star);
  return lam >= Rational(-1) && lam <= Rational(1);
}

StabilityReport integer_program(int p, int n) {
  require_dims(p, n);
  StabilityReport best;
  best.p = p;
  best.n = n;
  bool found = false;
  for (int minus = 0; minus <= p; ++minus) {
    for (int star = 0; minus + star <= p; ++star) {
      const Multiplicities m{minus, star, p - minus - star};
      if (!ip_feasible(p, n, m)) continue;
      const Rational g = ip_objective(p, n, m);
      if (m.minus == 0) {
        // With m₋ = 0 the objective collapses to ½(n − 3(p+1)/2)(trace Z − p).
        const Rational lam = lambda_star(p, n, 0, m.star);
        const Rational tr = Rational(m.plus) + lam * m.star;
        if (g != Rational(2 * n - 3 * (p + 1), 4) * (tr - p)) {
          throw std::logic_error("closed-form objective mismatch at p=" +
                                 std::to_string(p) + ", n=" + std::to_string(n));
        }
      }
      const bool better =
          !found || g > best.optimal_objective ||
          (g == best.optimal_objective &&
           (m.plus > best.optimal.plus ||
            (m.plus == best.optimal.plus && m.minus < best.optimal.minus)));
      if (better) {
        found = true;
        best.optimal = m;
        best.optimal_objective = g;
        best.lambda_star = lambda_star(p, n, m.minus, m.star);
      }
    }
  }
  best.agas_guaranteed = classify(p, n);
  return best;
}

bool classify(int p, int n) {
  require_dims(p, n);
  return 3 * p <= 2 * n - 3;
}

}  // namespace stiefel
