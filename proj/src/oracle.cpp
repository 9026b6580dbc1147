#include "pmm/oracle.hpp"

#include <algorithm>
#include <thread>

#include "pmm/baselines.hpp"

namespace pmm {

namespace {

constexpr std::size_t kMaxLatticePoints = 10'000'000;
constexpr int kMaxLatticeObjectives = 4;

void build_lattice(int n, int remaining, int index, std::vector<int>& counts,
                   std::vector<SimplexPoint>& out, int m) {
  if (index == n - 1) {
    counts[index] = remaining;
    Vector w(n);
    for (int i = 0; i < n; ++i) w(i) = static_cast<double>(counts[i]) / m;
    out.emplace_back(std::move(w));
    return;
  }
  for (int c = remaining; c >= 0; --c) {
    counts[index] = c;
    build_lattice(n, remaining - c, index + 1, counts, out, m);
  }
}

}  // namespace

SimplexPoint random_simplex_point(std::mt19937_64& rng, int n) {
  if (n <= 0) throw InvalidArgument("simplex dimension must be positive");
  std::exponential_distribution<double> exp1(1.0);
  Vector w(n);
  for (int i = 0; i < n; ++i) w(i) = exp1(rng);
  return SimplexPoint(std::move(w));
}

ManifoldPoint oracle_x_star(const ObjectiveSet& F, const SimplexPoint& beta) {
  return solve_x_star(F, beta, kOracleTolerance, 100, std::nullopt, InnerMethod::newton);
}

Matrix simplex_tangent_basis(int n) {
  if (n < 1) throw InvalidArgument("simplex dimension must be positive");
  Matrix U = Matrix::Zero(n, n - 1);
  for (int i = 0; i < n - 1; ++i) {
    U(i, i) = 0.5;
    U(n - 1, i) = -0.5;
  }
  return U;
}

Matrix finite_difference_jacobian(const std::function<Vector(const SimplexPoint&)>& fn,
                                  const SimplexPoint& beta, double h) {
  if (!(h > 0.0)) throw InvalidArgument("step must be positive");
  const int n = beta.size();
  if (beta.weights().minCoeff() < 2.0 * h) {
    throw InvalidArgument("weights must be at least 2h for central differences");
  }
  const Matrix U = simplex_tangent_basis(n);
  Matrix J;
  for (int j = 0; j < n - 1; ++j) {
    const Vector plus = fn(SimplexPoint(beta.weights() + h * U.col(j)));
    const Vector minus = fn(SimplexPoint(beta.weights() - h * U.col(j)));
    if (j == 0) J.resize(plus.size(), n - 1);
    J.col(j) = (plus - minus) / (2.0 * h);
  }
  if (n == 1) J.resize(fn(beta).size(), 0);
  return J;
}

std::size_t simplex_lattice_size(int n, int m) {
  if (n < 1 || m < 1) throw InvalidArgument("lattice needs n >= 1 and m >= 1");
  // C(m+n−1, n−1) computed incrementally; stop early once past the limit.
  long double count = 1.0L;
  for (int k = 1; k <= n - 1; ++k) {
    count = count * static_cast<long double>(m + k) / k;
    if (count > static_cast<long double>(kMaxLatticePoints)) {
      throw SizeLimit("simplex lattice exceeds 10^7 points");
    }
  }
  return static_cast<std::size_t>(count + 0.5L);
}

std::vector<SimplexPoint> simplex_lattice(int n, int m) {
  const std::size_t size = simplex_lattice_size(n, m);
  std::vector<SimplexPoint> out;
  out.reserve(size);
  std::vector<int> counts(n, 0);
  build_lattice(n, m, 0, counts, out, m);
  return out;
}

std::vector<LatticeValue> evaluate_lattice(const ProblemInstance& problem, int m, int threads) {
  if (problem.n() > kMaxLatticeObjectives) throw SizeLimit("grid oracle supports at most 4 objectives");
  const std::vector<SimplexPoint> lattice = simplex_lattice(problem.n(), m);
  std::vector<double> values(lattice.size());

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const ManifoldPoint p = oracle_x_star(problem.F(), lattice[i]);
      values[i] = problem.f0().value(p.x);
    }
  };
  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, lattice.size());
  if (workers == 1) {
    work(0, lattice.size());
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (lattice.size() + workers - 1) / workers;
    for (std::size_t t = 0; t < workers; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(lattice.size(), begin + chunk);
      pool.emplace_back([&, t, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::vector<LatticeValue> out;
  out.reserve(lattice.size());
  for (std::size_t i = 0; i < lattice.size(); ++i) out.push_back(LatticeValue{lattice[i], values[i]});
  return out;
}

GridSearchResult grid_search_preference_opt(const ProblemInstance& problem, int m, int threads) {
  const std::vector<LatticeValue> values = evaluate_lattice(problem, m, threads);
  std::size_t best = 0;
  double f_max = values.front().f0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i].f0 < values[best].f0) best = i;
    f_max = std::max(f_max, values[i].f0);
  }
  const ManifoldPoint p = oracle_x_star(problem.F(), values[best].beta);
  return GridSearchResult{values[best].beta, p.x, values[best].f0, f_max, values.size()};
}

HullReport hull_pareto_check(const ObjectiveSet& F, int samples, std::uint64_t seed) {
  const QuadraticSpec* first = nullptr;
  std::vector<Vector> centers;
  for (const auto& f : F.objectives()) {
    const auto* spec = f.origin() ? std::get_if<QuadraticSpec>(&*f.origin()) : nullptr;
    if (!spec) throw InvalidArgument("hull check needs quadratic objectives");
    if (!first) first = spec;
    const double scale = std::max(1.0, first->H.cwiseAbs().maxCoeff());
    if ((spec->H - first->H).cwiseAbs().maxCoeff() > 1e-10 * scale) {
      throw InvalidArgument("hull check needs a Hessian shared by all objectives");
    }
    centers.push_back(spec->z);
  }

  std::mt19937_64 rng(seed);
  HullReport report;
  const int n = F.size();
  for (int s = 0; s < samples; ++s) {
    const SimplexPoint beta = random_simplex_point(rng, n);
    Vector hull_point = Vector::Zero(F.dim());
    for (int i = 0; i < n; ++i) hull_point += beta[i] * centers[i];

    const ManifoldPoint p = solve_x_star(F, beta, 1e-10 * F.mu(), 1000000);
    const double solve_error = (p.x - hull_point).norm();

    const SimplexPoint mix = random_simplex_point(rng, n);
    Vector y = Vector::Zero(F.dim());
    for (int i = 0; i < n; ++i) y += mix[i] * centers[i];
    const double hull_gap = pareto_stationarity_gap(F, y);

    report.max_solve_error = std::max(report.max_solve_error, solve_error);
    report.max_hull_gap = std::max(report.max_hull_gap, hull_gap);
    if (solve_error <= 1e-8 && hull_gap <= 1e-8) {
      ++report.passed;
    } else {
      ++report.failed;
    }
  }
  return report;
}

}  // namespace pmm
