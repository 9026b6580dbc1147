#include "pmm/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <limits>
#include <optional>
#include <vector>

namespace pmm {

namespace {
constexpr int kMaxEnumeratedFaces = 12;
}  // namespace

SimplexPoint::SimplexPoint(Vector weights) : weights_(std::move(weights)) {
  if (weights_.size() == 0) throw InvalidArgument("simplex point needs at least one weight");
  if (!weights_.allFinite()) throw InvalidArgument("simplex weights must be finite");
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (weights_(i) < 0.0) {
      if (weights_(i) < -1e-12) throw InvalidArgument("simplex weights must be nonnegative");
      weights_(i) = 0.0;
    }
  }
  const double total = weights_.sum();
  if (!(total > 0.0)) throw InvalidArgument("simplex weights must have positive mass");
  weights_ /= total;
}

SimplexPoint SimplexPoint::uniform(int n) {
  if (n <= 0) throw InvalidArgument("simplex dimension must be positive");
  return SimplexPoint(Vector::Constant(n, 1.0 / n));
}

SimplexPoint SimplexPoint::vertex(int n, int j) {
  if (n <= 0 || j < 0 || j >= n) throw InvalidArgument("vertex index out of range");
  return SimplexPoint(Vector::Unit(n, j));
}

SimplexPoint project_to_simplex(const Vector& y) {
  const Eigen::Index n = y.size();
  if (n == 0) throw InvalidArgument("cannot project an empty vector onto the simplex");
  if (!y.allFinite()) throw InvalidArgument("cannot project a non-finite vector");
  std::vector<double> u(y.data(), y.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    cumulative += u[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) tau = candidate;
  }
  return SimplexPoint((y.array() - tau).max(0.0).matrix());
}

GapWitness l1_stationarity_witness(const Vector& v, const SimplexPoint& beta) {
  if (v.size() != beta.size()) throw InvalidArgument("gradient and simplex point sizes differ");
  GapWitness w;
  w.increase = 0;
  for (int i = 1; i < beta.size(); ++i) {
    if (v(i) < v(w.increase)) w.increase = i;
  }
  for (int j = 0; j < beta.size(); ++j) {
    if (!beta.in_support(j)) continue;
    if (w.decrease < 0 || v(j) > v(w.decrease)) w.decrease = j;
  }
  // Extreme rays of {d ∈ T(β) : ‖d‖₁ ≤ 2} are e_i − e_j with β_j > 0.
  w.gap = std::max(0.0, 0.5 * (v(w.decrease) - v(w.increase)));
  return w;
}

double l1_stationarity_gap(const Vector& v, const SimplexPoint& beta) {
  return l1_stationarity_witness(v, beta).gap;
}

Vector project_to_tangent_cone(const Vector& w, const SimplexPoint& beta) {
  const int n = beta.size();
  if (w.size() != n) throw InvalidArgument("vector and simplex point sizes differ");
  double free_sum = 0.0;
  int free_count = 0;
  std::vector<double> clamped;
  for (int i = 0; i < n; ++i) {
    if (beta.in_support(i)) {
      free_sum += w(i);
      ++free_count;
    } else {
      clamped.push_back(w(i));
    }
  }
  std::sort(clamped.begin(), clamped.end(), std::greater<>());
  // Σ_free (w_i − λ) + Σ_clamped max(0, w_i − λ) = 0; include clamped entries from the top.
  double lambda = free_sum / free_count;
  double sum = free_sum;
  for (std::size_t k = 0; k < clamped.size(); ++k) {
    if (clamped[k] <= lambda) break;
    sum += clamped[k];
    lambda = sum / static_cast<double>(free_count + k + 1);
  }
  Vector d(n);
  for (int i = 0; i < n; ++i) {
    d(i) = beta.in_support(i) ? w(i) - lambda : std::max(0.0, w(i) - lambda);
  }
  return d;
}

double l2_stationarity_gap(const Vector& v, const SimplexPoint& beta) {
  return project_to_tangent_cone(-v, beta).norm();
}

double SimplexQuadratic::value(const SimplexPoint& beta) const {
  const Vector d = beta.weights() - anchor.weights();
  return offset + linear.dot(d) + 0.5 * curvature * d.squaredNorm();
}

Vector SimplexQuadratic::gradient(const SimplexPoint& beta) const {
  return linear + curvature * (beta.weights() - anchor.weights());
}

namespace {

SimplexSolveResult evaluate(const SimplexPoint& beta, const Vector& grad, int iterations) {
  return SimplexSolveResult{beta, l1_stationarity_gap(grad, beta), l2_stationarity_gap(grad, beta),
                            iterations};
}

}  // namespace

SimplexSolveResult minimize_quadratic_over_simplex(const SimplexQuadratic& q, double tol_gap,
                                                   int max_iters) {
  if (!(q.curvature > 0.0)) throw InvalidArgument("surrogate curvature must be positive");
  if (!(tol_gap > 0.0)) throw InvalidArgument("gap tolerance must be positive");
  if (q.linear.size() != q.anchor.size()) throw InvalidArgument("linear term has wrong size");
  if (!q.linear.allFinite()) throw NumericalFailure("non-finite linear term in simplex quadratic");

  SimplexPoint beta = q.anchor;
  SimplexSolveResult best = evaluate(beta, q.gradient(beta), 0);
  for (int it = 0;; ++it) {
    const Vector grad = q.gradient(beta);
    SimplexSolveResult current = evaluate(beta, grad, it);
    if (current.gap() < best.gap()) best = current;
    if (current.gap() <= tol_gap) return current;
    if (it >= max_iters) break;
    beta = project_to_simplex(beta.weights() - grad / q.curvature);
  }
  throw SimplexBudgetExceeded("simplex solver exhausted its iteration budget", best);
}

namespace {

// Exact minimiser of ½βᵀPβ + qᵀβ restricted to the face {β_i = 0, i ∉ support}.
std::optional<Vector> solve_on_face(const Matrix& P, const Vector& q, const std::vector<int>& support) {
  const int k = static_cast<int>(support.size());
  Matrix kkt = Matrix::Zero(k + 1, k + 1);
  Vector rhs = Vector::Zero(k + 1);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) kkt(a, b) = P(support[a], support[b]);
    kkt(a, k) = 1.0;
    kkt(k, a) = 1.0;
    rhs(a) = -q(support[a]);
  }
  rhs(k) = 1.0;
  const Vector sol = kkt.completeOrthogonalDecomposition().solve(rhs);
  if (!sol.allFinite()) return std::nullopt;
  if ((kkt * sol - rhs).norm() > 1e-9 * (1.0 + rhs.norm())) return std::nullopt;
  Vector beta = Vector::Zero(P.rows());
  for (int a = 0; a < k; ++a) {
    if (sol(a) < -1e-14) return std::nullopt;
    beta(support[a]) = std::max(0.0, sol(a));
  }
  return beta;
}

}  // namespace

SimplexSolveResult minimize_convex_quadratic_over_simplex(const Matrix& P, const Vector& q,
                                                          const SimplexPoint& start,
                                                          double tol_gap, int max_iters) {
  const int n = start.size();
  if (P.rows() != n || P.cols() != n || q.size() != n) {
    throw InvalidArgument("quadratic data does not match the simplex dimension");
  }
  if (!P.allFinite() || !q.allFinite()) throw NumericalFailure("non-finite simplex quadratic");
  auto objective = [&](const Vector& b) { return 0.5 * b.dot(P * b) + q.dot(b); };
  const double lmax = max_eigenvalue(0.5 * (P + P.transpose()));
  if (!(lmax > 0.0)) {
    Eigen::Index j = 0;
    q.minCoeff(&j);
    const SimplexPoint v = SimplexPoint::vertex(n, static_cast<int>(j));
    return evaluate(v, q, 0);
  }
  const double step = 1.0 / lmax;

  SimplexPoint beta = start;
  SimplexSolveResult best = evaluate(beta, P * beta.weights() + q, 0);
  double best_value = objective(beta.weights());
  for (int it = 0; it <= max_iters; ++it) {
    const Vector grad = P * beta.weights() + q;
    SimplexSolveResult current = evaluate(beta, grad, it);
    const double value = objective(beta.weights());
    if (value < best_value || (value == best_value && current.gap() < best.gap())) {
      best = current;
      best_value = value;
    }
    if (current.gap() <= tol_gap) break;
    beta = project_to_simplex(beta.weights() - step * grad);
  }

  // Polish on the identified face; accept only if feasible and no worse.
  std::vector<int> support;
  for (int i = 0; i < n; ++i) {
    if (best.point.in_support(i)) support.push_back(i);
  }
  if (auto polished = solve_on_face(P, q, support)) {
    const SimplexPoint candidate(*polished);
    const double value = objective(candidate.weights());
    if (value <= best_value) {
      SimplexSolveResult refined = evaluate(candidate, P * candidate.weights() + q, best.iterations);
      if (refined.gap() <= best.gap() || value < best_value) best = refined;
    }
  }
  return best;
}

MinNormResult min_norm_convex_combination(const Matrix& G, int max_iters) {
  const int n = static_cast<int>(G.cols());
  if (n == 0) throw InvalidArgument("need at least one column");
  const Matrix P = G.transpose() * G;
  const Vector zero = Vector::Zero(n);
  const double scale = std::max(P.cwiseAbs().maxCoeff(), 1e-300);

  std::optional<SimplexPoint> best;
  double best_value = std::numeric_limits<double>::infinity();
  auto consider = [&](const SimplexPoint& b) {
    const double value = (G * b.weights()).squaredNorm();
    if (value < best_value) {
      best_value = value;
      best = b;
    }
  };

  if (n <= kMaxEnumeratedFaces) {
    // The minimiser lies in the relative interior of some face; try all of them.
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> support;
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) support.push_back(i);
      }
      if (auto b = solve_on_face(P, zero, support)) consider(SimplexPoint(*b));
    }
  }
  if (!best) {
    const SimplexSolveResult r = minimize_convex_quadratic_over_simplex(
        P, zero, SimplexPoint::uniform(n), 1e-13 * scale, max_iters);
    consider(r.point);
  }
  return MinNormResult{*best, std::sqrt(std::max(0.0, best_value))};
}

}  // namespace pmm
