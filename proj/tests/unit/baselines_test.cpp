#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "pmm/baselines.hpp"
#include "pmm/errors.hpp"
#include "pmm/generators.hpp"
#include "pmm/linalg.hpp"
#include "pmm/oracle.hpp"

using namespace pmm;
using pmm::test::e;
using pmm::test::vec;

namespace {

// Projected gradient on the dual: min_{λ ≥ 0} ½‖Aλ‖² + λᵀ(Aᵀg − c), then v = g + Aλ.
std::optional<Vector> dual_png_vector(const Matrix& A, const Vector& g, double c) {
  const Matrix gram = A.transpose() * A;
  const Vector lin = A.transpose() * g - Vector::Constant(A.cols(), c);
  const double step = 1.0 / max_eigenvalue(gram);
  Vector lambda = Vector::Zero(A.cols());
  for (int it = 0; it < 200000; ++it) {
    lambda = (lambda - step * (gram * lambda + lin)).cwiseMax(0.0);
  }
  const Vector v = g + A * lambda;
  if ((A.transpose() * v).minCoeff() < c - 1e-9 * std::max(1.0, v.norm())) return std::nullopt;
  return v;
}

std::vector<Vector> random_generic_vectors(std::mt19937_64& rng, int n, int d) {
  std::vector<Vector> vs;
  const Vector w = random_simplex_point(rng, n).weights();
  Vector sum = Vector::Zero(d);
  for (int i = 0; i + 1 < n; ++i) {
    vs.push_back(random_vector(rng, d));
    sum += w(i) * vs.back();
  }
  vs.push_back(-sum / w(n - 1));
  return vs;
}

}  // namespace

TEST_CASE("png_vector with no active constraint returns ∇f0") {
  const ProblemInstance p = test::png_instance();
  const Vector x = vec({3.0, 3.0});
  const Vector g0 = p.f0().gradient(x);
  const Matrix G = p.F().gradients(x);
  REQUIRE((G.transpose() * g0).minCoeff() >= 1.0);
  CHECK((png_vector(p.F(), p.f0(), x, 1.0) - g0).norm() == 0.0);
}

TEST_CASE("png_vector with both constraints active keeps e1ᵀHv = 0") {
  const ProblemInstance p = test::png_instance();
  const Vector x = vec({0.3, 0.2});
  const Vector v = png_vector(p.F(), p.f0(), x, 1.0);
  const Matrix G = p.F().gradients(x);
  CHECK(G.col(0).dot(v) == doctest::Approx(1.0));
  CHECK(G.col(1).dot(v) == doctest::Approx(1.0));
  CHECK(std::abs(e(2, 0).dot(test::png_hessian() * v)) <= 1e-12);
  CHECK((v - vec({-5.0, 5.0})).norm() <= 1e-12);
}

TEST_CASE("png_vector projects onto a single halfspace") {
  std::vector<SmoothFunction> objs{quadratic_from_hessian(Matrix::Identity(2, 2), Vector::Zero(2))};
  const ObjectiveSet F(objs);
  const SmoothFunction f0 = quadratic_from_hessian(Matrix::Identity(2, 2), e(2, 0));
  CHECK((png_vector(F, f0, e(2, 0), 1.0) - e(2, 0)).norm() <= 1e-15);
}

TEST_CASE("png_vector errors") {
  const ProblemInstance id = test::identity_instance();
  CHECK_THROWS_AS(png_vector(id.F(), id.f0(), Vector::Zero(2), 1.0), Infeasible);
  CHECK_THROWS_AS(png_vector(id.F(), id.f0(), Vector::Zero(2), 0.0), InvalidArgument);
  std::vector<SmoothFunction> many;
  for (int i = 0; i < 21; ++i) many.push_back(quadratic_from_hessian(Matrix::Identity(2, 2), 0.01 * i * e(2, 0)));
  CHECK_THROWS_AS(png_vector(ObjectiveSet(many), id.f0(), vec({0.5, 3.0}), 1.0), SizeLimit);
}

TEST_CASE("png_vector is feasible and matches a dual projected-gradient solve") {
  auto rng = test::rng_for(40);
  int compared = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 3;
    const ProblemInstance p = random_quadratic_instance(rng, n, 3);
    const Vector x = random_vector(rng, 3, 3.0);
    const double c = 0.5;
    const Matrix G = p.F().gradients(x);
    Vector v;
    try {
      v = png_vector(p.F(), p.f0(), x, c);
    } catch (const Infeasible&) {
      continue;
    }
    for (int i = 0; i < n; ++i) CHECK(G.col(i).dot(v) >= c - 1e-9 * std::max(1.0, v.norm()));
    const auto dual = dual_png_vector(G, p.f0().gradient(x), c);
    if (!dual) continue;
    ++compared;
    CHECK((v - *dual).norm() <= 1e-8 * std::max(1.0, v.norm()));
  }
  CHECK(compared >= 20);
}

TEST_CASE("png_descent reaches a stationary point near e1 on the counterexample") {
  const ProblemInstance p = test::png_instance();
  PngConfig config;
  config.eps_stop = 1e-3;
  const PngResult r = png_descent(p.F(), p.f0(), vec({0.2, 0.9}), config);
  REQUIRE(r.status == PngStatus::stationary);
  CHECK((r.point - e(2, 0)).norm() <= 0.05);
  CHECK(r.point.norm() >= 0.5);
  CHECK(r.pareto_gap <= config.eps_stop);
  CHECK(r.angle <= 1e-6);
  CHECK((r.trajectory.front() - vec({0.2, 0.9})).norm() == 0.0);
  CHECK((r.trajectory.back() - r.point).norm() == 0.0);
}

TEST_CASE("png stationary points move toward e1 and stay away from the optimum") {
  const ProblemInstance p = test::png_instance();
  double previous = INFINITY;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    PngConfig config;
    config.eps_stop = eps;
    const PngResult r = png_descent(p.F(), p.f0(), vec({0.2, 0.9}), config);
    REQUIRE(r.status == PngStatus::stationary);
    const double dist = (r.point - e(2, 0)).norm();
    CHECK(dist <= previous);
    CHECK(r.point.norm() >= 0.5);
    previous = dist;
  }
}

TEST_CASE("png stationary points approach the optimum when H = I") {
  const ProblemInstance p = test::identity_instance();
  double previous = INFINITY;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    PngConfig config;
    config.eps_stop = eps;
    const PngResult r = png_descent(p.F(), p.f0(), vec({0.2, 0.9}), config);
    REQUIRE(r.status == PngStatus::stationary);
    CHECK(r.point.norm() <= previous);
    CHECK(r.point.norm() <= eps);
    previous = r.point.norm();
  }
}

TEST_CASE("png_descent stops at once on a stationary start") {
  const ProblemInstance p = test::identity_instance();
  const PngResult r = png_descent(p.F(), p.f0(), vec({0.0, 5e-4}), PngConfig{});
  CHECK(r.status == PngStatus::stationary);
  CHECK(r.iterations == 0);
  CHECK(r.trajectory.size() == 1);
}

TEST_CASE("png_descent reports infeasibility and budget exhaustion") {
  const ProblemInstance id = test::identity_instance();
  CHECK(png_descent(id.F(), id.f0(), Vector::Zero(2), PngConfig{}).status == PngStatus::infeasible);
  PngConfig tight;
  tight.max_iters = 5;
  const PngResult r = png_descent(id.F(), id.f0(), vec({0.2, 0.9}), tight);
  CHECK(r.status == PngStatus::budget_exceeded);
  CHECK(r.iterations == 5);
  PngConfig bad;
  bad.step = 0.0;
  CHECK_THROWS_AS(png_descent(id.F(), id.f0(), vec({0.2, 0.9}), bad), ConfigurationError);
}

TEST_CASE("genericity examples") {
  CHECK(is_pareto_generic({e(2, 0), -e(2, 0)}));
  CHECK_FALSE(is_pareto_generic({e(2, 0), e(2, 1)}));
  CHECK_FALSE(is_pareto_generic({e(2, 0), -e(2, 0), e(2, 0)}));
  CHECK(is_preference_generic(e(2, 1), {e(2, 0), -e(2, 0)}));
  CHECK_FALSE(is_preference_generic(e(2, 0), {e(2, 0), -e(2, 0)}));
  CHECK_FALSE(is_preference_generic(e(2, 1), {e(2, 0), e(2, 1)}));
  const auto w = pareto_weights({e(2, 0), -e(2, 0)});
  REQUIRE(w);
  CHECK((*w)(0) == doctest::Approx(0.5));
}

TEST_CASE("impossibility instance for e1, −e1 and v0 = e2") {
  const ImpossibilityInstance inst = build_impossibility_instance(e(2, 1), {e(2, 0), -e(2, 0)});
  CHECK((inst.hessian - Matrix::Identity(2, 2)).norm() <= 1e-14);
  CHECK((inst.centers[0] + e(2, 0)).norm() <= 1e-14);
  CHECK((inst.centers[1] - e(2, 0)).norm() <= 1e-14);
  CHECK(inst.problem.f0().value(Vector::Zero(2)) == doctest::Approx(0.5));
  CHECK((inst.problem.f0().gradient(Vector::Zero(2)) - e(2, 1)).norm() <= 1e-15);
  CHECK_THROWS_AS(build_impossibility_instance(e(2, 0), {e(2, 0), -e(2, 0)}), InvalidArgument);
}

TEST_CASE("impossibility instances realise the prescribed gradients with 0 optimal") {
  auto rng = test::rng_for(41);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 3;
    const int d = n + trial % 3;
    const std::vector<Vector> vs = random_generic_vectors(rng, n, d);
    const Vector v0 = random_vector(rng, d);
    REQUIRE(is_preference_generic(v0, vs));
    const ImpossibilityInstance inst = build_impossibility_instance(v0, vs);
    const ProblemInstance& p = inst.problem;
    CHECK(min_eigenvalue(inst.hessian) > 0.0);
    for (int i = 0; i < n; ++i) CHECK((p.F()[i].gradient(Vector::Zero(d)) - vs[i]).norm() <= 1e-10);
    CHECK((p.f0().gradient(Vector::Zero(d)) - v0).norm() <= 1e-14);
    Vector mix = Vector::Zero(d);
    for (int i = 0; i < n; ++i) mix += inst.weights(i) * inst.centers[i];
    CHECK(mix.norm() <= 1e-10);
    for (int s = 0; s < 20; ++s) {
      const Vector w = random_simplex_point(rng, n).weights();
      Vector z = Vector::Zero(d);
      for (int i = 0; i < n; ++i) z += w(i) * inst.centers[i];
      CHECK(v0.dot(z) >= -1e-10);
      CHECK(p.f0().value(z) >= p.f0().value(Vector::Zero(d)) - 1e-10);
    }
  }
}

TEST_CASE("positive-definite rotation keeps span(v_i) inside v0⊥") {
  auto rng = test::rng_for(42);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 3;
    const int d = n + 1;
    const std::vector<Vector> vs = random_generic_vectors(rng, n, d);
    const Vector v0 = random_vector(rng, d);
    const Matrix P = positive_definite_rotation(v0, vs);
    CHECK(min_eigenvalue(0.5 * (P + P.transpose())) > 0.0);
    const Matrix proj0 = v0 * v0.transpose() / v0.squaredNorm();
    const ImpossibilityInstance inst = build_impossibility_instance(v0, vs);
    const Matrix S = inst.hessian.inverse();
    for (const Vector& u : vs) {
      CHECK((proj0 * P * u).norm() <= 1e-10 * u.norm());
      CHECK((proj0 * S * u).norm() <= 1e-10 * u.norm());
    }
  }
}
