#include "pmm/manifold.hpp"

#include "pmm/inner_solvers.hpp"

namespace pmm {

namespace {

void check_sizes(const ObjectiveSet& F, const Vector& x, const SimplexPoint& beta) {
  if (beta.size() != F.size()) throw InvalidArgument("weights do not match the number of objectives");
  if (x.size() != F.dim()) throw InvalidArgument("point does not match the objective dimension");
}

Matrix solve_against_hessian(const ObjectiveSet& F, const Vector& x, const SimplexPoint& beta,
                             const Matrix& rhs) {
  Matrix H = Matrix::Zero(F.dim(), F.dim());
  for (int i = 0; i < F.size(); ++i) {
    if (beta[i] != 0.0) H += beta[i] * F[i].hessian(x);
  }
  H = 0.5 * (H + H.transpose());
  if (!H.allFinite()) throw NumericalFailure("non-finite scalarized Hessian");
  const Matrix floor = H - 0.5 * F.mu() * Matrix::Identity(F.dim(), F.dim());
  if (Eigen::LLT<Matrix>(floor).info() != Eigen::Success) {
    throw NumericalFailure("scalarized Hessian falls below the declared strong convexity");
  }
  Eigen::LLT<Matrix> llt(H);
  if (llt.info() != Eigen::Success) throw NumericalFailure("scalarized Hessian is not positive definite");
  return llt.solve(rhs);
}

}  // namespace

double scalarized_residual(const ObjectiveSet& F, const Vector& x, const SimplexPoint& beta) {
  check_sizes(F, x, beta);
  return (F.gradients(x) * beta.weights()).norm();
}

ManifoldPoint make_manifold_point(const ObjectiveSet& F, Vector x, SimplexPoint beta) {
  const double r = scalarized_residual(F, x, beta);
  return ManifoldPoint{std::move(x), std::move(beta), r};
}

XStarSolve solve_x_star_detailed(const ObjectiveSet& F, const SimplexPoint& beta, double tol,
                                 int max_iters, const std::optional<Vector>& warm_start,
                                 InnerMethod method) {
  if (!(tol > 0.0)) throw InvalidArgument("inner tolerance must be positive");
  if (max_iters < 0) throw InvalidArgument("inner budget must be nonnegative");
  const Vector start = warm_start ? *warm_start : F.weighted_minimizer(beta);
  check_sizes(F, start, beta);

  if (F.size() == 1) {
    ManifoldPoint p = make_manifold_point(F, F.minimizers().front(), beta);
    if (p.residual <= tol) return XStarSolve{std::move(p), 0};
  }

  const SmoothFunction f = scalarize(F, beta);
  const MinimizeResult res = method == InnerMethod::newton
                                 ? newton_minimize(f, start, tol, max_iters)
                                 : gradient_descent(f, start, 1.0 / F.L(), tol, max_iters);
  ManifoldPoint p{res.x, beta, res.residual};
  if (!res.converged) {
    throw InnerBudgetExceeded("inner solve stopped at residual " + std::to_string(res.residual) +
                                  " above tolerance " + std::to_string(tol),
                              std::move(p));
  }
  return XStarSolve{std::move(p), res.iterations};
}

ManifoldPoint solve_x_star(const ObjectiveSet& F, const SimplexPoint& beta, double tol, int max_iters,
                           const std::optional<Vector>& warm_start, InnerMethod method) {
  return solve_x_star_detailed(F, beta, tol, max_iters, warm_start, method).point;
}

Jacobian grad_x_star_exact(const ObjectiveSet& F, const ManifoldPoint& point) {
  check_sizes(F, point.x, point.beta);
  if (F.size() == 1) return Jacobian{Matrix::Zero(F.dim(), 1), JacobianKind::exact};
  Matrix J = -solve_against_hessian(F, point.x, point.beta, F.gradients(point.x));
  if (!J.allFinite()) throw NumericalFailure("non-finite Jacobian");
  return Jacobian{std::move(J), JacobianKind::exact};
}

Jacobian grad_x_star_estimate(const ObjectiveSet& F, const Vector& x, const SimplexPoint& beta) {
  check_sizes(F, x, beta);
  Matrix J = -solve_against_hessian(F, x, beta, F.gradients(x));
  if (!J.allFinite()) throw NumericalFailure("non-finite Jacobian estimate");
  return Jacobian{std::move(J), JacobianKind::estimated};
}

double err_grad_f0_factor(const ProblemInstance& problem, const Vector& x) {
  const ConstantBundle& c = problem.constants();
  return (c.estimator_ratio * problem.f0().gradient(x).norm() + problem.L0() * c.M0) / problem.F().mu();
}

double err_grad_f0(const ProblemInstance& problem, const Vector& x, const SimplexPoint& beta) {
  if (problem.n() == 1) return 0.0;
  return err_grad_f0_factor(problem, x) * scalarized_residual(problem.F(), x, beta);
}

}  // namespace pmm
