#pragma once

#include "pmm/errors.hpp"
#include "pmm/linalg.hpp"

namespace pmm {

/// A point of the probability simplex Δ^{n-1}, renormalised on construction.
class SimplexPoint {
 public:
  /// Throws InvalidArgument on empty input, non-finite or negative weights, or zero mass.
  /// Negative weights down to -1e-12 are clamped to zero.
  explicit SimplexPoint(Vector weights);

  static SimplexPoint uniform(int n);
  static SimplexPoint vertex(int n, int j);

  const Vector& weights() const noexcept { return weights_; }
  int size() const noexcept { return static_cast<int>(weights_.size()); }
  double operator[](int i) const { return weights_(i); }

  /// Indices with strictly positive weight.
  bool in_support(int i) const { return weights_(i) > 0.0; }

 private:
  Vector weights_;
};

/// Euclidean projection onto Δ^{n-1} by sort-and-threshold.
SimplexPoint project_to_simplex(const Vector& y);

/// Smallest ε ≥ 0 with −vᵀ(β'−β) ≤ ε‖β'−β‖₁ for every β' in the simplex.
double l1_stationarity_gap(const Vector& v, const SimplexPoint& beta);

/// Direction attaining the ℓ1 gap: moving mass from `decrease` to `increase`.
/// Ties resolve to the lowest index.
struct GapWitness {
  double gap = 0.0;
  int increase = -1;
  int decrease = -1;
};
GapWitness l1_stationarity_witness(const Vector& v, const SimplexPoint& beta);

/// Euclidean projection onto the tangent cone T(β) = {d : Σd = 0, d_i ≥ 0 where β_i = 0}.
Vector project_to_tangent_cone(const Vector& w, const SimplexPoint& beta);

/// Smallest ε ≥ 0 with −vᵀd ≤ ε‖d‖₂ on T(β); equals ‖Π_T(−v)‖₂.
double l2_stationarity_gap(const Vector& v, const SimplexPoint& beta);

/// Q(β') = offset + vᵀ(β'−anchor) + ½C‖β'−anchor‖².
struct SimplexQuadratic {
  SimplexPoint anchor;
  Vector linear;
  double curvature = 1.0;
  double offset = 0.0;

  double value(const SimplexPoint& beta) const;
  Vector gradient(const SimplexPoint& beta) const;
};

struct SimplexSolveResult {
  SimplexPoint point;
  double l1_gap = 0.0;
  double l2_gap = 0.0;
  int iterations = 0;

  /// The stricter of the two normalisations (the ℓ2 one, since ‖·‖₂ ≤ ‖·‖₁).
  double gap() const { return l1_gap > l2_gap ? l1_gap : l2_gap; }
};

class SimplexBudgetExceeded : public Error {
 public:
  SimplexBudgetExceeded(const std::string& what, SimplexSolveResult best)
      : Error(what), best_(std::move(best)) {}
  const SimplexSolveResult& best() const noexcept { return best_; }

 private:
  SimplexSolveResult best_;
};

/// Projected gradient with step 1/C from Q.anchor until both gaps are ≤ tol_gap.
/// Throws SimplexBudgetExceeded carrying the best iterate.
SimplexSolveResult minimize_quadratic_over_simplex(const SimplexQuadratic& q, double tol_gap,
                                                   int max_iters);

/// Projected gradient for ½βᵀPβ + qᵀβ with P positive semidefinite, step 1/λ_max(P).
/// Stops once both stationarity gaps are ≤ tol_gap, or after max_iters and returns the
/// best iterate without throwing (callers inspect the gaps).
SimplexSolveResult minimize_convex_quadratic_over_simplex(const Matrix& P, const Vector& q,
                                                          const SimplexPoint& start,
                                                          double tol_gap, int max_iters);

/// min over β in the simplex of ‖Gβ‖₂ for a d×n matrix G (min-norm element of conv of columns).
struct MinNormResult {
  SimplexPoint beta;
  double norm = 0.0;
};
MinNormResult min_norm_convex_combination(const Matrix& G, int max_iters = 20000);

}  // namespace pmm
