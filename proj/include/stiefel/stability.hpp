#pragma once

#include <boost/rational.hpp>

#include "stiefel/dynamics.hpp"

namespace stiefel {

using Rational = boost::rational<long long>;

/// Multiplicities of the eigenvalues −1, λ★ and 1 of Z = XᵀY.
struct Multiplicities {
  int minus = 0;
  int star = 0;
  int plus = 0;
  friend bool operator==(const Multiplicities&, const Multiplicities&) = default;
};

struct StabilityReport {
  int p = 0;
  int n = 0;
  Multiplicities optimal;
  Rational lambda_star;
  Rational optimal_objective;
  bool agas_guaranteed = false;
};

/// Per-edge Hessian trace term
///   f(X,Y) = (n − (p+1)/2)⟨X,Y⟩ − ((p+2)/4)‖XᵀY‖² − ¼⟨X,Y⟩² + (1 − n + p)p.
double f_bound(const StiefelPoint& x, const StiefelPoint& y);

/// trace M = 2 Σ_e a_ik f(S_k, S_i). Defined for any configuration; it is a
/// trace of the Hessian quadratic form restricted to tangent directions
/// Π_i Δ only at equilibria, where a negative value certifies instability.
double trace_m(const Configuration& c, const WeightedGraph& g);

/// Result of projected gradient ascent on f over St(p,n) × St(p,n).
struct FAscent {
  Matrix x;
  Matrix y;
  double value = 0.0;
  int iterations = 0;
};

/// Riemannian gradient ascent with Armijo backtracking from (x0, y0).
FAscent f_bound_ascent(const StiefelPoint& x0, const StiefelPoint& y0,
                       int max_iterations = 2000, double grad_tol = 1e-12);

/// λ★ = (2n − 2p − 1 + 2m₋ + m★) / (p + 2 + m★).
/// Throws InvalidMultiplicities unless m₋, m★ ≥ 0 and m₋ + m★ ≤ p,
/// InvalidDimensions unless 1 ≤ p < n.
Rational lambda_star(int p, int n, int m_minus, int m_star);

/// Objective g of the multiplicity program at one candidate, in rationals.
Rational ip_objective(int p, int n, const Multiplicities& m);

/// λ★ must be a possible eigenvalue of XᵀY, i.e. lie in [−1, 1], whenever
/// it actually occurs (m★ > 0).
bool ip_feasible(int p, int n, const Multiplicities& m);

/// Exhaustive search over m₋ + m★ + m₊ = p. Ties go to the largest m₊,
/// then the smallest m₋. Throws InvalidDimensions unless 1 ≤ p < n.
StabilityReport integer_program(int p, int n);

/// 3p ≤ 2n − 3, i.e. p ≤ ⅔n − 1. Throws InvalidDimensions unless 1 ≤ p < n.
bool classify(int p, int n);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace stiefel
