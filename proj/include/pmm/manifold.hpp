#pragma once

#include <optional>

#include "pmm/errors.hpp"
#include "pmm/problem.hpp"

namespace pmm {

/// A pair (x, β) with its scalarized gradient norm ‖∇f_β(x)‖₂.
struct ManifoldPoint {
  Vector x;
  SimplexPoint beta;
  double residual = 0.0;
};

double scalarized_residual(const ObjectiveSet& F, const Vector& x, const SimplexPoint& beta);
ManifoldPoint make_manifold_point(const ObjectiveSet& F, Vector x, SimplexPoint beta);

enum class InnerMethod { gradient_descent, newton };

class InnerBudgetExceeded : public Error {
 public:
  InnerBudgetExceeded(const std::string& what, ManifoldPoint best)
      : Error(what), best_(std::move(best)) {}
  const ManifoldPoint& best() const noexcept { return best_; }

 private:
  ManifoldPoint best_;
};

struct XStarSolve {
  ManifoldPoint point;
  int iterations = 0;
};

/// Minimises f_β to ‖∇f_β(x)‖₂ ≤ tol. Gradient descent uses step 1/L. Without a warm start the
/// solve begins at Σ β_i m_i. Throws InvalidArgument for bad inputs, InnerBudgetExceeded
/// when the budget runs out, and NumericalFailure on NaN/Inf.
XStarSolve solve_x_star_detailed(const ObjectiveSet& F, const SimplexPoint& beta, double tol,
                                 int max_iters, const std::optional<Vector>& warm_start = std::nullopt,
                                 InnerMethod method = InnerMethod::gradient_descent);

ManifoldPoint solve_x_star(const ObjectiveSet& F, const SimplexPoint& beta, double tol, int max_iters,
                           const std::optional<Vector>& warm_start = std::nullopt,
                           InnerMethod method = InnerMethod::gradient_descent);

enum class JacobianKind { exact, estimated };

struct Jacobian {
  Matrix matrix;  // d×n
  JacobianKind kind = JacobianKind::exact;
};

/// −[∇²f_β(x)]⁻¹ ∇F(x)ᵀ at a point treated as lying on the manifold. Zero for n = 1.
/// Throws NumericalFailure if ∇²f_β(x) − (μ/2)I is not positive definite.
Jacobian grad_x_star_exact(const ObjectiveSet& F, const ManifoldPoint& point);

/// The same formula evaluated at an arbitrary x.
Jacobian grad_x_star_estimate(const ObjectiveSet& F, const Vector& x, const SimplexPoint& beta);

/// (1/μ)(M1/(2M0)·‖∇f0(x)‖ + L0·M0): multiplies ‖∇f_β(x)‖ in the gradient error bound.
double err_grad_f0_factor(const ProblemInstance& problem, const Vector& x);

/// Bound on ‖∇(f0∘x*)(β) − ∇f0(x)ᵀ·estimate‖_{1,2}. Zero when n = 1.
double err_grad_f0(const ProblemInstance& problem, const Vector& x, const SimplexPoint& beta);

}  // namespace pmm
