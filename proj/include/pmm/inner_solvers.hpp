#pragma once

#include "pmm/function.hpp"

namespace pmm {

struct MinimizeResult {
  Vector x;
  double residual = 0.0;  // ‖∇f(x)‖₂
  int iterations = 0;
  bool converged = false;
};

/// Fixed-step gradient descent until ‖∇f‖₂ ≤ tol. Returns the best iterate with
/// converged = false when the budget runs out or progress stalls.
/// Throws NumericalFailure on non-finite gradients.
MinimizeResult gradient_descent(const SmoothFunction& f, const Vector& x0, double step, double tol,
                                int max_iters);

/// Damped Newton with Cholesky solves and backtracking.
/// Throws NumericalFailure on non-finite values or a Hessian that is not positive definite.
MinimizeResult newton_minimize(const SmoothFunction& f, const Vector& x0, double tol, int max_iters);

}  // namespace pmm
