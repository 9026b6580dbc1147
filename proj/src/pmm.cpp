#include "pmm/pmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pmm {

double SurrogateState::relative_value(const SimplexPoint& beta) const {
  const Vector d = beta.weights() - anchor.beta.weights();
  return linear.dot(d) + 0.5 * curvature * d.squaredNorm();
}

double SurrogateState::upper_bound(const SimplexPoint& beta) const {
  const Vector d = beta.weights() - anchor.beta.weights();
  return relative_value(beta) + err_term * d.lpNorm<1>();
}

SimplexQuadratic SurrogateState::as_simplex_quadratic() const {
  return SimplexQuadratic{anchor.beta, linear, curvature, 0.0};
}

SurrogateState build_surrogate(const ProblemInstance& problem, const ManifoldPoint& point) {
  const Jacobian J = grad_x_star_estimate(problem.F(), point.x, point.beta);
  SurrogateState s{point, J.matrix.transpose() * problem.f0().gradient(point.x),
                   problem.constants().mu_g, err_grad_f0(problem, point.x, point.beta)};
  return s;
}

StepConstants compute_c1_c2(double mu, double L, double L0, const ConstantBundle& constants,
                            double grad_f0_norm, double jacobian_norm) {
  const double mu_g = constants.mu_g;
  if (!(mu_g > 0.0)) return StepConstants{0.5, 1.0};
  const double err_scale = constants.estimator_ratio * grad_f0_norm + L0 * constants.M0;
  const double stationarity = 2.0 + 6.0 * L * grad_f0_norm / (mu * mu * mu_g);
  const double error_growth = 12.0 / (mu * mu_g) * err_scale * jacobian_norm;
  const double c1 = 1.0 / std::max(stationarity, error_growth);
  const double c2 = 1.0 / std::max(1.0, 2.0 / mu * err_scale * std::max(2.0, mu_g / (c1 * c1)));
  return StepConstants{c1, c2};
}

StepConstants compute_c1_c2(const ProblemInstance& problem, const Vector& x) {
  return compute_c1_c2(problem.F().mu(), problem.F().L(), problem.L0(), problem.constants(),
                       problem.f0().gradient(x).norm(), spectral_norm(problem.F().gradients(x)));
}

double iteration_bound(double mu_g, double c1, double eps0, double f_max, double f_min) {
  return 2.0 * mu_g * (f_max - f_min) / (c1 * c1 * eps0 * eps0);
}

void SolverConfig::validate() const {
  if (!(eps0 > 0.0) || !(eps > 0.0)) throw ConfigurationError("eps0 and eps must be positive");
  if (eps0 > 1.0) throw ConfigurationError("eps0 must not exceed 1");
  if (eps > eps0 * eps0 * (1.0 + 1e-12)) {
    throw ConfigurationError("eps must satisfy eps <= eps0^2");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigurationError("alpha must lie in (0, 1)");
  if (max_outer < 1) throw ConfigurationError("max_outer must be at least 1");
  if (simplex_max_iters < 1 || inner_max_iters < 1) {
    throw ConfigurationError("sub-solver budgets must be at least 1");
  }
  if (c1 && !(*c1 > 0.0)) throw ConfigurationError("fixed c1 must be positive");
  if (c2 && !(*c2 > 0.0 && *c2 <= 1.0)) throw ConfigurationError("fixed c2 must lie in (0, 1]");
}

StationarityCertificate verify_preference_stationarity(const ProblemInstance& problem,
                                                       const ManifoldPoint& point, double eps0,
                                                       double eps, double alpha,
                                                       const std::optional<Vector>& reference_x) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  auto evaluate_at = [&](const Vector& x, bool reference) {
    StationarityCertificate c;
    c.residual = point.residual;
    c.used_reference = reference;
    const Jacobian J = grad_x_star_estimate(problem.F(), x, point.beta);
    const Vector linear = J.matrix.transpose() * problem.f0().gradient(x);
    c.gap = l1_stationarity_gap(linear, point.beta);
    c.err = err_grad_f0(problem, x, point.beta);
    c.certified = c.residual <= eps && c.gap <= alpha * eps0 && c.err <= (1.0 - alpha) * eps0;
    return c;
  };
  StationarityCertificate own = evaluate_at(point.x, false);
  if (own.certified || !reference_x) return own;
  StationarityCertificate other = evaluate_at(*reference_x, true);
  return other.certified ? other : own;
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::certified:
      return "certified";
    case SolveStatus::budget_exceeded:
      return "budget_exceeded";
  }
  return "unknown";
}

namespace {

TraceRecord make_record(const ProblemInstance& problem, int k, const ManifoldPoint& p, double gap,
                        const StationarityCertificate& cert, const StepConstants& sc) {
  TraceRecord r;
  r.k = k;
  r.beta = p.beta.weights();
  r.x = p.x;
  r.residual = p.residual;
  r.f0 = problem.f0().value(p.x);
  r.gap = gap;
  r.err = cert.err;
  r.certified = cert.certified;
  r.c1 = sc.c1;
  r.c2 = sc.c2;
  return r;
}

}  // namespace

PmmResult pmm_solve(const ProblemInstance& problem, const SolverConfig& config,
                    const InitialPoint& init) {
  config.validate();
  const ObjectiveSet& F = problem.F();
  const ConstantBundle& constants = problem.constants();

  const SimplexPoint beta0 = init.beta ? *init.beta : SimplexPoint::uniform(F.size());
  if (beta0.size() != F.size()) throw InvalidArgument("initial weights do not match objective count");
  const Vector x_start = init.x ? *init.x : F.weighted_minimizer(beta0);
  if (x_start.size() != F.dim()) throw InvalidArgument("initial point has the wrong dimension");

  auto step_constants = [&](const Vector& x) {
    StepConstants sc = compute_c1_c2(problem, x);
    if (config.c1) sc.c1 = *config.c1;
    if (config.c2) sc.c2 = *config.c2;
    return sc;
  };

  PmmResult result{make_manifold_point(F, x_start, beta0), {}, SolveStatus::budget_exceeded, {}, 0.0};
  IterateTrace& trace = result.trace;
  trace.initial_beta = beta0.weights();
  trace.initial_x = x_start;

  if (!(constants.mu_g > 0.0)) {
    if (constants.R_bound > 0.0) {
      throw ConfigurationError("preference function needs L0 > 0 when the Pareto set is not a point");
    }
    // The Pareto set is a single point: every weight maps to it and the surrogate is flat.
    const StepConstants sc{0.5, 1.0};
    try {
      XStarSolve s = solve_x_star_detailed(F, beta0, config.eps, config.inner_max_iters,
                                           F.minimizers().front(), config.inner_method);
      result.point = s.point;
      result.certificate =
          verify_preference_stationarity(problem, s.point, config.eps0, config.eps, config.alpha);
      TraceRecord rec = make_record(problem, 1, s.point, 0.0, result.certificate, sc);
      rec.inner_iterations = s.iterations;
      trace.records.push_back(std::move(rec));
    } catch (const Error& e) {
      throw PmmFailure(e.what(), trace);
    }
    result.min_c1 = sc.c1;
    result.status = result.certificate.certified ? SolveStatus::certified : SolveStatus::budget_exceeded;
    return result;
  }

  std::optional<ManifoldPoint> start;
  try {
    const StepConstants sc = step_constants(x_start);
    start = solve_x_star(F, beta0, sc.c2 * config.eps, config.inner_max_iters, x_start,
                           config.inner_method);
  } catch (const Error& e) {
    throw PmmFailure(std::string("initial inner solve failed: ") + e.what(), trace);
  }
  ManifoldPoint current = std::move(*start);
  trace.initial_x = current.x;
  result.point = current;

  const double tube = constants.R_bound + 2.0 * config.eps / F.mu() + 1e-9 * (1.0 + constants.R_bound);
  double min_c1 = std::numeric_limits<double>::infinity();

  for (int k = 1; k <= config.max_outer; ++k) {
    TraceRecord rec;
    StationarityCertificate cert;
    std::optional<ManifoldPoint> next;
    try {
      const StepConstants sc = step_constants(current.x);
      min_c1 = std::min(min_c1, sc.c1);
      const SurrogateState surrogate = build_surrogate(problem, current);
      if (!surrogate.linear.allFinite() || !std::isfinite(surrogate.err_term)) {
        throw NumericalFailure("non-finite surrogate at iteration " + std::to_string(k));
      }
      const SimplexSolveResult step = minimize_quadratic_over_simplex(
          surrogate.as_simplex_quadratic(), sc.c1 * config.eps0, config.simplex_max_iters);
      const XStarSolve solved = solve_x_star_detailed(F, step.point, sc.c2 * config.eps,
                                                      config.inner_max_iters, current.x,
                                                      config.inner_method);
      next = solved.point;
      cert = verify_preference_stationarity(problem, *next, config.eps0, config.eps, config.alpha,
                                            current.x);
      rec = make_record(problem, k, *next, step.gap(), cert, sc);
      rec.simplex_iterations = step.iterations;
      rec.inner_iterations = solved.iterations;
    } catch (const Error& e) {
      throw PmmFailure("iteration " + std::to_string(k) + ": " + e.what(), trace);
    }
    trace.records.push_back(rec);
    if ((next->x - trace.initial_x).norm() > tube) {
      throw PmmFailure("iterate " + std::to_string(k) + " left the tube around the Pareto set", trace);
    }
    current = std::move(*next);
    result.point = current;
    result.certificate = cert;
    result.min_c1 = min_c1;
    if (cert.certified) {
      result.status = SolveStatus::certified;
      return result;
    }
  }
  result.status = SolveStatus::budget_exceeded;
  return result;
}

}  // namespace pmm
