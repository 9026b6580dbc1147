#include "pmm/generators.hpp"

#include <cmath>

#include "pmm/errors.hpp"

namespace pmm {

Matrix random_spd(std::mt19937_64& rng, int d, double condition) {
  if (d <= 0 || !(condition >= 1.0)) throw InvalidArgument("need d > 0 and condition >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix M(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) M(i, j) = normal(rng);
  }
  const Matrix Q = Eigen::HouseholderQR<Matrix>(M).householderQ();
  Vector eig(d);
  for (int i = 0; i < d; ++i) {
    eig(i) = d == 1 ? 1.0 : std::pow(condition, static_cast<double>(i) / (d - 1));
  }
  Matrix H = Q * eig.asDiagonal() * Q.transpose();
  return 0.5 * (H + H.transpose());
}

Vector random_vector(std::mt19937_64& rng, int d, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = normal(rng);
  return v;
}

ProblemInstance random_shared_hessian_instance(std::mt19937_64& rng, int n, int d, double condition) {
  const Matrix H = random_spd(rng, d, condition);
  std::vector<SmoothFunction> objectives;
  for (int i = 0; i < n; ++i) objectives.push_back(quadratic_from_hessian(H, random_vector(rng, d)));
  SmoothFunction f0 = quadratic_from_hessian(Matrix::Identity(d, d), random_vector(rng, d, 2.0));
  return ProblemInstance(ObjectiveSet(std::move(objectives)), std::move(f0));
}

ProblemInstance random_quadratic_instance(std::mt19937_64& rng, int n, int d, double condition) {
  std::vector<SmoothFunction> objectives;
  for (int i = 0; i < n; ++i) {
    objectives.push_back(quadratic_from_hessian(random_spd(rng, d, condition), random_vector(rng, d)));
  }
  SmoothFunction f0 = quadratic_from_hessian(Matrix::Identity(d, d), random_vector(rng, d, 2.0));
  return ProblemInstance(ObjectiveSet(std::move(objectives)), std::move(f0));
}

ProblemInstance random_logcosh_instance(std::mt19937_64& rng, int n, int d, double weight) {
  std::vector<SmoothFunction> objectives;
  for (int i = 0; i < n; ++i) {
    objectives.push_back(make_logcosh_quadratic(random_spd(rng, d, 3.0), random_vector(rng, d), weight));
  }
  SmoothFunction f0 = quadratic_from_hessian(Matrix::Identity(d, d), random_vector(rng, d, 2.0));
  return ProblemInstance(ObjectiveSet(std::move(objectives)), std::move(f0));
}

ProblemInstance curved_three_objective_instance() {
  Matrix H1(2, 2), H2(2, 2), H3(2, 2);
  H1 << 4.0, 0.0, 0.0, 0.5;
  H2 << 0.5, 0.0, 0.0, 4.0;
  H3 << 2.0, 1.2, 1.2, 1.5;
  Vector z1(2), z2(2), z3(2);
  z1 << -1.0, 0.0;
  z2 << 1.0, 0.0;
  z3 << 0.0, 1.5;
  std::vector<SmoothFunction> objectives{quadratic_from_hessian(H1, z1), quadratic_from_hessian(H2, z2),
                                         quadratic_from_hessian(H3, z3)};
  Vector c(2);
  c << 0.3, -1.0;
  return ProblemInstance(ObjectiveSet(std::move(objectives)),
                         quadratic_from_hessian(Matrix::Identity(2, 2), c));
}

}  // namespace pmm
