#include "pmm/baselines.hpp"

#include <cmath>
#include <limits>

#include "pmm/errors.hpp"

namespace pmm {

namespace {

constexpr int kMaxPngObjectives = 20;
constexpr double kAngleTolerance = 1e-6;
constexpr double kDisplacementFraction = 0.5;
constexpr int kStallWindow = 100;
constexpr int kPolishIterations = 30;
constexpr double kBoundaryMargin = 1e-8;

// Angle between a and b, accurate for nearly parallel vectors.
double angle_between(const Vector& a, const Vector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return M_PI;
  const Vector ua = a / na;
  const Vector ub = b / nb;
  return 2.0 * std::atan2((ua - ub).norm(), (ua + ub).norm());
}

Matrix stack_columns(const std::vector<Vector>& vectors) {
  if (vectors.empty()) throw InvalidArgument("need at least one vector");
  const Eigen::Index d = vectors.front().size();
  Matrix V(d, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != d) throw InvalidArgument("vectors have different dimensions");
    V.col(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  return V;
}

// Orthogonal projector onto the column space of V.
Matrix column_space_projector(const Matrix& V) {
  Eigen::JacobiSVD<Matrix> svd(V, Eigen::ComputeFullU);
  const Vector& s = svd.singularValues();
  const double threshold = s.size() > 0 ? 1e-10 * s(0) : 0.0;
  Matrix P = Matrix::Zero(V.rows(), V.rows());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > threshold && s(i) > 0.0) P += svd.matrixU().col(i) * svd.matrixU().col(i).transpose();
  }
  return P;
}

// Zero exactly when v_c(x) is antiparallel to ∇f0(x) and the Pareto gap equals target.
Vector stationarity_residual(const ObjectiveSet& F, const SmoothFunction& f0, const Vector& x, double c,
                             double target) {
  const Vector v = png_vector(F, f0, x, c);
  const Vector g0 = f0.gradient(x);
  Vector r(x.size() + 1);
  r.head(x.size()) = v / v.norm() + g0 / g0.norm();
  r(x.size()) = min_norm_convex_combination(F.gradients(x)).norm - target;
  return r;
}

// Gauss-Newton with a central-difference Jacobian on the stationarity equations.
std::optional<Vector> polish_stationary_point(const ObjectiveSet& F, const SmoothFunction& f0, Vector x,
                                              double c, double target) {
  const Eigen::Index d = x.size();
  try {
    for (int it = 0; it < kPolishIterations; ++it) {
      const Vector r = stationarity_residual(F, f0, x, c, target);
      const double h = 1e-7 * std::max(1.0, x.norm());
      Matrix J(d + 1, d);
      for (Eigen::Index j = 0; j < d; ++j) {
        Vector xp = x;
        Vector xm = x;
        xp(j) += h;
        xm(j) -= h;
        J.col(j) = (stationarity_residual(F, f0, xp, c, target) - stationarity_residual(F, f0, xm, c, target)) /
                   (2.0 * h);
      }
      const Vector dx = J.completeOrthogonalDecomposition().solve(-r);
      if (!dx.allFinite()) return std::nullopt;
      x += dx;
      if (dx.norm() <= 1e-14 * std::max(1.0, x.norm())) break;
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  return x;
}

}  // namespace

void PngConfig::validate() const {
  if (!(c > 0.0) || !(step > 0.0) || !(eps_stop > 0.0) || max_iters <= 0) {
    throw ConfigurationError("PNG settings c, step, eps_stop and max_iters must all be positive");
  }
}

Vector png_vector(const ObjectiveSet& F, const SmoothFunction& f0, const Vector& x, double c) {
  if (!(c > 0.0)) throw InvalidArgument("constraint level c must be positive");
  const int n = F.size();
  if (n > kMaxPngObjectives) throw SizeLimit("PNG active-set enumeration supports at most 20 objectives");
  const Vector g0 = f0.gradient(x);
  const Matrix G = F.gradients(x);  // columns a_i
  if (!g0.allFinite() || !G.allFinite()) throw NumericalFailure("non-finite gradients in PNG vector");


  std::optional<Vector> best;
  double best_value = std::numeric_limits<double>::infinity();
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    std::vector<int> active;
    for (int i = 0; i < n; ++i) {
      if (mask & (1ul << i)) active.push_back(i);
    }
    Vector v = g0;
    if (!active.empty()) {
      const int k = static_cast<int>(active.size());
      Matrix A(x.size(), k);
      for (int a = 0; a < k; ++a) A.col(a) = G.col(active[a]);
      const Matrix gram = A.transpose() * A;
      Eigen::FullPivLU<Matrix> lu(gram);
      lu.setThreshold(1e-12);
      if (lu.rank() < k) continue;
      const Vector lambda = lu.solve(Vector::Constant(k, c) - A.transpose() * g0);
      if (!lambda.allFinite() || lambda.minCoeff() < -1e-12 * std::max(1.0, lambda.cwiseAbs().maxCoeff())) {
        continue;
      }
      v = g0 + A * lambda;
    }
    bool feasible = true;
    for (int i = 0; i < n; ++i) {
      const double tol = 1e-9 * std::max({1.0, c, G.col(i).norm() * v.norm()});
      if (G.col(i).dot(v) < c - tol) feasible = false;
    }
    if (!feasible) continue;
    const double value = 0.5 * (g0 - v).squaredNorm();
    if (value < best_value) {
      best_value = value;
      best = v;
    }
  }
  if (!best) throw Infeasible("the PNG constraints grad f_i(x)^T v >= c have no feasible KKT point");
  return *best;
}

const char* to_string(PngStatus status) {
  switch (status) {
    case PngStatus::stationary:
      return "stationary";
    case PngStatus::budget_exceeded:
      return "budget_exceeded";
    case PngStatus::infeasible:
      return "infeasible";
  }
  return "unknown";
}

double pareto_stationarity_gap(const ObjectiveSet& F, const Vector& x) {
  return min_norm_convex_combination(F.gradients(x)).norm;
}

PngResult png_descent(const ObjectiveSet& F, const SmoothFunction& f0, const Vector& x0,
                      const PngConfig& config) {
  config.validate();
  if (x0.size() != F.dim() || f0.dim() != F.dim()) throw InvalidArgument("starting point has the wrong dimension");

  PngResult result;
  Vector x = x0;
  result.trajectory.push_back(x);
  double best_angle = std::numeric_limits<double>::infinity();
  int stalled = 0;
  for (int it = 0;; ++it) {
    result.point = x;
    result.iterations = it;
    result.pareto_gap = pareto_stationarity_gap(F, x);
    Vector v;
    try {
      v = png_vector(F, f0, x, config.c);
    } catch (const Infeasible&) {
      result.status = PngStatus::infeasible;
      result.angle = M_PI;
      return result;
    }
    const Vector grad0 = f0.gradient(x);
    result.angle = angle_between(v, -grad0);
    if (result.pareto_gap <= config.eps_stop && result.angle <= kAngleTolerance) {
      result.status = PngStatus::stationary;
      return result;
    }
    if (it >= config.max_iters) {
      result.status = PngStatus::budget_exceeded;
      return result;
    }
    if (result.angle < best_angle) {
      best_angle = result.angle;
      stalled = 0;
    } else {
      ++stalled;
    }
    if (result.pareto_gap <= config.eps_stop && stalled >= kStallWindow) {
      stalled = 0;
      const auto polished =
          polish_stationary_point(F, f0, x, config.c, config.eps_stop * (1.0 - kBoundaryMargin));
      if (polished) {
        try {
          const double gap = pareto_stationarity_gap(F, *polished);
          const double angle = angle_between(png_vector(F, f0, *polished, config.c), -f0.gradient(*polished));
          if (gap <= config.eps_stop && angle <= kAngleTolerance) {
            result.trajectory.push_back(*polished);
            result.point = *polished;
            result.iterations = it + 1;
            result.pareto_gap = gap;
            result.angle = angle;
            result.status = PngStatus::stationary;
            return result;
          }
        } catch (const Infeasible&) {
        }
      }
    }
    if (result.pareto_gap > config.eps_stop) {
      const double cap = kDisplacementFraction * result.pareto_gap / F.L();
      const double t = std::min(config.step, cap / v.norm());
      x -= t * v;
    } else {
      x -= config.step * grad0;
    }
    if (!x.allFinite()) throw NumericalFailure("PNG iterate became non-finite");
    result.trajectory.push_back(x);
  }
}

ProblemInstance png_counterexample_instance(const Matrix& H) {
  if (H.rows() != 2 || H.cols() != 2) throw InvalidArgument("the counterexample lives in R^2");
  std::vector<SmoothFunction> objectives{quadratic_from_hessian(H, -Vector::Unit(2, 0)),
                                         quadratic_from_hessian(H, Vector::Unit(2, 0))};
  return ProblemInstance(ObjectiveSet(std::move(objectives)),
                         quadratic_from_hessian(Matrix::Identity(2, 2), Vector::Unit(2, 1)));
}

std::optional<Vector> pareto_weights(const std::vector<Vector>& vectors) {
  if (vectors.size() < 2) return std::nullopt;
  const Matrix V = stack_columns(vectors);
  const int n = static_cast<int>(V.cols());
  if (numerical_rank(V, 1e-10) != n - 1) return std::nullopt;
  Eigen::JacobiSVD<Matrix> svd(V, Eigen::ComputeFullV);
  Vector w = svd.matrixV().col(n - 1);
  const double largest = w.cwiseAbs().maxCoeff();
  for (int i = 0; i < n; ++i) {
    if (std::abs(w(i)) <= 1e-12 * largest) w(i) = 0.0;
  }
  if (w.minCoeff() < 0.0 && w.maxCoeff() > 0.0) return std::nullopt;
  if (w.maxCoeff() <= 0.0) w = -w;
  w /= w.sum();
  const double scale = norm_1_2(V);
  if ((V * w).norm() > 1e-10 * scale) return std::nullopt;
  return w;
}

bool is_pareto_generic(const std::vector<Vector>& vectors) {
  return pareto_weights(vectors).has_value();
}

bool is_preference_generic(const Vector& v0, const std::vector<Vector>& vectors) {
  const std::size_t n = vectors.size();
  if (n <= 1 || n > static_cast<std::size_t>(v0.size())) return false;
  if (vectors.front().size() != v0.size()) return false;
  if (!is_pareto_generic(vectors)) return false;
  const double norm0 = v0.norm();
  if (norm0 == 0.0) return false;
  const Matrix V = stack_columns(vectors);
  const Vector residual = v0 - column_space_projector(V) * v0;
  return residual.norm() > 1e-10 * norm0;
}

Matrix positive_definite_rotation(const Vector& v0, const std::vector<Vector>& vectors) {
  const Eigen::Index d = v0.size();
  const Matrix I = Matrix::Identity(d, d);
  const Matrix proj_U = column_space_projector(stack_columns(vectors));
  const Matrix proj_V_perp = v0 * v0.transpose() / v0.squaredNorm();
  return (I - proj_V_perp) + proj_V_perp * (I - proj_U);
}

ImpossibilityInstance build_impossibility_instance(const Vector& v0, const std::vector<Vector>& vectors) {
  if (!is_preference_generic(v0, vectors)) {
    throw InvalidArgument("input vectors are not preference generic");
  }
  const Eigen::Index d = v0.size();
  const Matrix I = Matrix::Identity(d, d);
  const Vector w = (I - column_space_projector(stack_columns(vectors))) * v0;
  // S is symmetric positive definite with S v0 = w; it maps span(v_i) into v0^⊥.
  Matrix S = I - v0 * v0.transpose() / v0.squaredNorm() + w * w.transpose() / v0.dot(w);
  S = 0.5 * (S + S.transpose());
  Eigen::LLT<Matrix> s_llt(S);
  if (s_llt.info() != Eigen::Success) throw NumericalFailure("constructed map is not positive definite");
  Matrix H = s_llt.solve(I);
  H = 0.5 * (H + H.transpose());

  std::vector<Vector> centers;
  std::vector<SmoothFunction> objectives;
  for (const auto& v : vectors) {
    centers.push_back(-S * v);
    objectives.push_back(quadratic_from_hessian(H, centers.back()));
  }
  SmoothFunction f0 = quadratic_from_hessian(I, -v0);
  return ImpossibilityInstance{ProblemInstance(ObjectiveSet(std::move(objectives)), std::move(f0)), H,
                               std::move(centers), *pareto_weights(vectors)};
}

}  // namespace pmm
