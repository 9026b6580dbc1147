#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "pmm/errors.hpp"
#include "pmm/generators.hpp"
#include "pmm/oracle.hpp"

using namespace pmm;
using pmm::test::e;
using pmm::test::vec;

namespace {

ObjectiveSet triangle_set() {
  std::vector<SmoothFunction> objs{quadratic_from_hessian(Matrix::Identity(2, 2), vec({0.0, 1.0})),
                                   quadratic_from_hessian(Matrix::Identity(2, 2), vec({-1.0, -0.5})),
                                   quadratic_from_hessian(Matrix::Identity(2, 2), vec({1.0, -0.5}))};
  return ObjectiveSet(std::move(objs));
}

}  // namespace

TEST_CASE("random simplex points are valid and reproducible") {
  std::mt19937_64 a(kOracleSeed);
  std::mt19937_64 b(kOracleSeed);
  for (int i = 0; i < 100; ++i) {
    const SimplexPoint p = random_simplex_point(a, 4);
    CHECK(std::abs(p.weights().sum() - 1.0) <= 1e-12);
    CHECK(p.weights().minCoeff() >= 0.0);
    CHECK((p.weights() - random_simplex_point(b, 4).weights()).norm() == 0.0);
  }
}

TEST_CASE("oracle solves reach 1e-12") {
  auto rng = test::rng_for(50);
  const ProblemInstance p = random_logcosh_instance(rng, 3, 4);
  for (int i = 0; i < 20; ++i) {
    const ManifoldPoint m = oracle_x_star(p.F(), random_simplex_point(rng, 3));
    CHECK(m.residual <= kOracleTolerance);
  }
}

TEST_CASE("finite differences of constant and linear maps") {
  const SimplexPoint beta(vec({0.4, 0.6}));
  const Matrix zero = finite_difference_jacobian([](const SimplexPoint&) { return vec({1.0, 2.0}); }, beta);
  CHECK(zero.rows() == 2);
  CHECK(zero.cols() == 1);
  CHECK(zero.norm() == 0.0);

  const auto linear = [](const SimplexPoint& b) { return Vector(b[0] * vec({-1.0, 0.0}) + b[1] * vec({1.0, 0.0})); };
  const Matrix J = finite_difference_jacobian(linear, beta);
  CHECK(J(0, 0) == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(std::abs(J(1, 0)) <= 1e-12);

  CHECK_THROWS_AS(finite_difference_jacobian(linear, SimplexPoint(vec({1e-6, 1.0 - 1e-6}))), InvalidArgument);
}

TEST_CASE("tangent basis columns are e_i − e_n over two") {
  const Matrix T = simplex_tangent_basis(3);
  CHECK(T.rows() == 3);
  CHECK(T.cols() == 2);
  CHECK((T.col(0) - vec({0.5, 0.0, -0.5})).norm() == 0.0);
  CHECK((T.col(1) - vec({0.0, 0.5, -0.5})).norm() == 0.0);
}

TEST_CASE("lattice sizes follow stars and bars") {
  CHECK(simplex_lattice_size(1, 7) == 1);
  CHECK(simplex_lattice_size(2, 10) == 11);
  CHECK(simplex_lattice_size(3, 4) == 15);
  CHECK(simplex_lattice_size(4, 30) == 5456);
  CHECK_THROWS_AS(simplex_lattice_size(4, 1000), SizeLimit);
  const std::vector<SimplexPoint> pts = simplex_lattice(3, 4);
  REQUIRE(pts.size() == 15);
  CHECK(pts.front()[0] == 1.0);
  CHECK(pts.back()[2] == 1.0);
  for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i - 1][0] >= pts[i][0]);
}

TEST_CASE("lattice evaluation is independent of the thread count") {
  const ProblemInstance p = curved_three_objective_instance();
  const auto one = evaluate_lattice(p, 12, 1);
  const auto four = evaluate_lattice(p, 12, 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].f0 == four[i].f0);
    CHECK((one[i].beta.weights() - four[i].beta.weights()).norm() == 0.0);
  }
}

TEST_CASE("grid search on the counterexample finds the origin") {
  const GridSearchResult r = grid_search_preference_opt(test::png_instance(), 1000);
  CHECK(r.points == 1001);
  CHECK(r.best_beta[0] == doctest::Approx(0.5));
  CHECK(r.best_x.norm() <= 1e-10);
  CHECK(r.f_min == doctest::Approx(0.5));
  CHECK(r.f_max >= r.f_min);
}

TEST_CASE("grid search on one objective has a single point") {
  const ProblemInstance p = test::single_objective_instance();
  const GridSearchResult r = grid_search_preference_opt(p, 5);
  CHECK(r.points == 1);
  CHECK(r.f_min == r.f_max);
  CHECK(r.f_min == doctest::Approx(p.f0().value(p.F().minimizers()[0])));
}

TEST_CASE("grid search on the unit instance") {
  const GridSearchResult r = grid_search_preference_opt(test::identity_instance(), 10);
  CHECK(r.best_beta[0] == doctest::Approx(0.5));
  CHECK(r.f_min == doctest::Approx(0.5));
  CHECK(r.f_max == doctest::Approx(1.0));
}

TEST_CASE("grid search rejects more than four objectives") {
  std::vector<SmoothFunction> objs;
  for (int i = 0; i < 5; ++i) objs.push_back(quadratic_from_hessian(Matrix::Identity(2, 2), 0.1 * i * e(2, 0)));
  const ProblemInstance p(ObjectiveSet(objs), quadratic_from_hessian(Matrix::Identity(2, 2), e(2, 1)));
  CHECK_THROWS_AS(grid_search_preference_opt(p, 3), SizeLimit);
}

TEST_CASE("hull check on shared-Hessian instances") {
  const HullReport png = hull_pareto_check(test::png_instance().F(), 50);
  CHECK(png.failed == 0);
  CHECK(png.passed > 0);

  std::vector<SmoothFunction> one{quadratic_from_hessian(test::png_hessian(), vec({0.2, 0.1}))};
  CHECK(hull_pareto_check(ObjectiveSet(one), 10).failed == 0);

  const HullReport tri = hull_pareto_check(triangle_set(), 100);
  CHECK(tri.failed == 0);
  CHECK(tri.passed == 100);
  CHECK(tri.max_solve_error <= 1e-8);
  CHECK(tri.max_hull_gap <= 1e-8);

  CHECK_THROWS_AS(hull_pareto_check(curved_three_objective_instance().F(), 10), InvalidArgument);
}
