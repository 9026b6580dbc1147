#include "pmm/inner_solvers.hpp"

#include <cmath>

#include "pmm/errors.hpp"

namespace pmm {

namespace {

constexpr int kStallWindow = 500;

Vector checked_gradient(const SmoothFunction& f, const Vector& x) {
  Vector g = f.gradient(x);
  if (!g.allFinite()) throw NumericalFailure("non-finite gradient in inner solve");
  return g;
}

}  // namespace

MinimizeResult gradient_descent(const SmoothFunction& f, const Vector& x0, double step, double tol,
                                int max_iters) {
  if (!(step > 0.0)) throw InvalidArgument("step must be positive");
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (!x0.allFinite()) throw NumericalFailure("non-finite starting point");

  Vector x = x0;
  Vector g = checked_gradient(f, x);
  MinimizeResult best{x, g.norm(), 0, false};
  int since_improvement = 0;
  for (int it = 0; it < max_iters; ++it) {
    if (best.residual <= tol) break;
    x -= step * g;
    g = checked_gradient(f, x);
    const double r = g.norm();
    if (r < best.residual) {
      best = MinimizeResult{x, r, it + 1, false};
      since_improvement = 0;
    } else if (++since_improvement >= kStallWindow) {
      break;
    }
  }
  best.converged = best.residual <= tol;
  return best;
}

MinimizeResult newton_minimize(const SmoothFunction& f, const Vector& x0, double tol, int max_iters) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (!x0.allFinite()) throw NumericalFailure("non-finite starting point");

  Vector x = x0;
  double fx = f.value(x);
  Vector g = checked_gradient(f, x);
  MinimizeResult best{x, g.norm(), 0, false};
  for (int it = 0; it < max_iters && best.residual > tol; ++it) {
    const Matrix H = f.hessian(x);
    if (!H.allFinite()) throw NumericalFailure("non-finite Hessian in inner solve");
    Eigen::LLT<Matrix> llt(0.5 * (H + H.transpose()));
    if (llt.info() != Eigen::Success) throw NumericalFailure("Hessian is not positive definite");
    const Vector dx = llt.solve(g);
    const double slope = g.dot(dx);

    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
      const Vector trial = x - t * dx;
      const double ft = f.value(trial);
      if (!std::isfinite(ft)) continue;
      const Vector gt = checked_gradient(f, trial);
      // Near machine precision values stop separating; gradient decrease still certifies progress.
      if (ft <= fx - 1e-4 * t * slope || gt.norm() < g.norm()) {
        x = trial;
        fx = ft;
        g = gt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    const double r = g.norm();
    if (r < best.residual) best = MinimizeResult{x, r, it + 1, false};
  }
  best.converged = best.residual <= tol;
  return best;
}

}  // namespace pmm
