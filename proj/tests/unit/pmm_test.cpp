#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "pmm/errors.hpp"
#include "pmm/generators.hpp"
#include "pmm/oracle.hpp"
#include "pmm/pmm.hpp"

using namespace pmm;
using pmm::test::e;
using pmm::test::vec;

namespace {

double f0_on_manifold(const ProblemInstance& p, const SimplexPoint& beta) {
  return p.f0().value(oracle_x_star(p.F(), beta).x);
}

void check_majorization(const ProblemInstance& p, const ManifoldPoint& anchor, std::mt19937_64& rng, int samples) {
  const SurrogateState s = build_surrogate(p, anchor);
  const double base = f0_on_manifold(p, anchor.beta);
  for (int i = 0; i < samples; ++i) {
    const SimplexPoint other = random_simplex_point(rng, p.n());
    CHECK(s.upper_bound(other) >= f0_on_manifold(p, other) - base - 1e-9);
  }
}

}  // namespace

TEST_CASE("surrogate at an exact manifold point of the unit instance") {
  const ProblemInstance p = test::identity_instance();
  const ManifoldPoint anchor = make_manifold_point(p.F(), Vector::Zero(2), SimplexPoint::uniform(2));
  const SurrogateState s = build_surrogate(p, anchor);
  CHECK(s.linear.norm() <= 1e-15);
  CHECK(s.err_term == 0.0);
  CHECK(s.curvature == doctest::Approx(p.constants().mu_g));
  const SimplexQuadratic q = s.as_simplex_quadratic();
  const SimplexPoint other(vec({0.1, 0.9}));
  CHECK(q.value(other) - q.value(anchor.beta) == doctest::Approx(s.relative_value(other)));
}

TEST_CASE("surrogate error term vanishes with the residual and grows with it") {
  auto rng = test::rng_for(30);
  const ProblemInstance p = random_logcosh_instance(rng, 3, 3);
  const ManifoldPoint exact = oracle_x_star(p.F(), SimplexPoint::uniform(3));
  CHECK(build_surrogate(p, exact).err_term <= 1e-10);
  const ManifoldPoint off = make_manifold_point(p.F(), exact.x + vec({0.1, 0.0, 0.0}), exact.beta);
  CHECK(build_surrogate(p, off).err_term > 0.0);
  CHECK(build_surrogate(p, off).err_term == doctest::Approx(err_grad_f0(p, off.x, off.beta)));
}

TEST_CASE("surrogates majorize f0∘x* at manifold points") {
  auto rng = test::rng_for(31);
  const ProblemInstance id = test::identity_instance();
  check_majorization(id, make_manifold_point(id.F(), Vector::Zero(2), SimplexPoint::uniform(2)), rng, 200);
  const ProblemInstance png = test::png_instance();
  check_majorization(png, oracle_x_star(png.F(), SimplexPoint(vec({0.8, 0.2}))), rng, 200);
  for (int trial = 0; trial < 4; ++trial) {
    const ProblemInstance p = trial % 2 ? random_quadratic_instance(rng, 3, 3) : random_logcosh_instance(rng, 3, 3);
    check_majorization(p, oracle_x_star(p.F(), random_simplex_point(rng, 3)), rng, 50);
  }
}

TEST_CASE("surrogates majorize f0∘x* at inexact anchors") {
  auto rng = test::rng_for(32);
  for (int trial = 0; trial < 4; ++trial) {
    const ProblemInstance p = random_logcosh_instance(rng, 3, 2);
    const ManifoldPoint exact = oracle_x_star(p.F(), random_simplex_point(rng, 3));
    const ManifoldPoint off = make_manifold_point(p.F(), exact.x + random_vector(rng, 2, 1e-3), exact.beta);
    check_majorization(p, off, rng, 50);
  }
}

TEST_CASE("c1 and c2 with all constants one and zero gradients") {
  ConstantBundle c;
  c.kappa = 1.0;
  c.R_bound = 1.0;
  c.M0 = 1.0;
  c.M1 = 1.0;
  c.mu_g = 1.0;
  c.estimator_ratio = 1.0;
  const StepConstants sc = compute_c1_c2(1.0, 1.0, 1.0, c, 0.0, 0.0);
  CHECK(sc.c1 == doctest::Approx(0.5));
  CHECK(sc.c2 > 0.0);
  CHECK(sc.c2 <= 1.0);
}

TEST_CASE("c1 does not decrease when L0 doubles") {
  const double mus[] = {0.5, 1.0};
  const double Ls[] = {1.0, 3.0};
  const double rs[] = {0.5, 2.0};
  const double L0s[] = {0.25, 0.5, 1.0, 2.0, 4.0};
  const double grads[] = {0.0, 0.3, 2.0};
  for (double mu : mus) {
    for (double L : Ls) {
      if (L < mu) continue;
      for (double r : rs) {
        for (double g0 : grads) {
          for (double gF : grads) {
            for (double L0 : L0s) {
              const ConstantBundle a = derive_constants(2, mu, L, 0.1, r, L0);
              const ConstantBundle b = derive_constants(2, mu, L, 0.1, r, 2.0 * L0);
              const StepConstants sa = compute_c1_c2(mu, L, L0, a, g0, gF);
              const StepConstants sb = compute_c1_c2(mu, L, 2.0 * L0, b, g0, gF);
              CHECK(sb.c1 >= sa.c1 * (1.0 - 1e-12));
              CHECK(sa.c1 > 0.0);
              CHECK(sa.c2 > 0.0);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("c1 and c2 stay above their worst case over the tube") {
  const ProblemInstance p = test::png_instance();
  SolverConfig config;
  config.eps0 = 1e-2;
  config.eps = 1e-4;
  const PmmResult r = pmm_solve(p, config, InitialPoint{std::nullopt, SimplexPoint(vec({0.9, 0.1}))});
  REQUIRE(r.status == SolveStatus::certified);
  const ObjectiveSet& F = p.F();
  const Vector x0 = r.trace.initial_x;
  const double radius = p.constants().R_bound + 2.0 * config.eps / F.mu();
  const double g0 = p.f0().gradient(x0).norm() + p.L0() * radius;
  double column = 0.0;
  for (int i = 0; i < F.size(); ++i) column = std::max(column, F[i].gradient(x0).norm() + F.L() * radius);
  const StepConstants worst =
      compute_c1_c2(F.mu(), F.L(), p.L0(), p.constants(), g0, std::sqrt(double(F.size())) * column);
  REQUIRE(worst.c1 > 0.0);
  REQUIRE(worst.c2 > 0.0);
  for (const TraceRecord& rec : r.trace.records) {
    CHECK(rec.c1 >= worst.c1);
    CHECK(rec.c2 >= worst.c2);
  }
  CHECK(r.min_c1 >= worst.c1);
}

TEST_CASE("iteration bound formula") {
  CHECK(iteration_bound(8.0, 0.5, 0.1, 3.0, 1.0) == doctest::Approx(2.0 * 8.0 * 2.0 / (0.25 * 0.01)));
}

TEST_CASE("solver configuration rules") {
  SolverConfig c;
  CHECK_NOTHROW(c.validate());
  c.eps = 2e-6;
  c.eps0 = 1e-3;
  CHECK_THROWS_AS(c.validate(), ConfigurationError);
  c = SolverConfig{};
  c.eps0 = 2.0;
  c.eps = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigurationError);
  c = SolverConfig{};
  c.alpha = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigurationError);
  c = SolverConfig{};
  c.c2 = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigurationError);
}

TEST_CASE("verify_preference_stationarity examples") {
  const ProblemInstance id = test::identity_instance();
  const ManifoldPoint opt = make_manifold_point(id.F(), Vector::Zero(2), SimplexPoint::uniform(2));
  const StationarityCertificate a = verify_preference_stationarity(id, opt, 1e-3, 1e-6, 0.5);
  CHECK(a.certified);
  CHECK(a.gap == 0.0);
  CHECK(a.err == 0.0);

  const ManifoldPoint off = make_manifold_point(id.F(), vec({1e-3, 0.0}), SimplexPoint::uniform(2));
  const StationarityCertificate b = verify_preference_stationarity(id, off, 1.0, 1e-6, 0.5);
  CHECK_FALSE(b.certified);
  CHECK(b.residual == doctest::Approx(1e-3));

  const ProblemInstance png = test::png_instance();
  const ManifoldPoint corner = make_manifold_point(png.F(), e(2, 0), SimplexPoint::vertex(2, 1));
  const StationarityCertificate c = verify_preference_stationarity(png, corner, 1e-3, 1e-6, 0.5);
  CHECK_FALSE(c.certified);
  CHECK(c.gap > 0.0);
}

TEST_CASE("pmm_solve examples") {
  SolverConfig config;
  config.eps0 = 1e-3;
  config.eps = 1e-6;

  const PmmResult png = pmm_solve(test::png_instance(), config);
  CHECK(png.status == SolveStatus::certified);
  CHECK(png.point.x.norm() <= 1e-3);

  const ProblemInstance single = test::single_objective_instance();
  const PmmResult one = pmm_solve(single, config);
  CHECK(one.status == SolveStatus::certified);
  CHECK(one.iterations() == 1);
  CHECK((one.point.x - single.F().minimizers()[0]).norm() <= 1e-6 / single.F().mu());

  const PmmResult id = pmm_solve(test::identity_instance(), config);
  CHECK(id.status == SolveStatus::certified);
  CHECK(id.iterations() == 1);
  CHECK(id.point.beta[0] == doctest::Approx(0.5));
}

TEST_CASE("pmm_solve validates its inputs and reports budget exhaustion") {
  const ProblemInstance p = test::png_instance();
  SolverConfig bad;
  bad.eps = 1.0;
  CHECK_THROWS_AS(pmm_solve(p, bad), ConfigurationError);
  CHECK_THROWS_AS(pmm_solve(p, SolverConfig{}, InitialPoint{std::nullopt, SimplexPoint::uniform(3)}),
                  InvalidArgument);
  SolverConfig tight;
  tight.max_outer = 3;
  const PmmResult r = pmm_solve(p, tight, InitialPoint{std::nullopt, SimplexPoint(vec({0.95, 0.05}))});
  CHECK(r.status == SolveStatus::budget_exceeded);
  CHECK(r.iterations() == 3);
}

TEST_CASE("a preference without a positive gradient Lipschitz constant is rejected") {
  const auto build = [] {
    return SmoothFunction(
        2, [](const Vector& x) { return x(1); }, [](const Vector&) { return Vector(e(2, 1)); },
        [](const Vector&) { return Matrix(Matrix::Zero(2, 2)); }, SmoothnessConstants{0.0, 0.0, 0.0});
  };
  CHECK_THROWS_AS(build(), InvalidArgument);
}

TEST_CASE("trace records increase in k and f0 never increases") {
  auto rng = test::rng_for(33);
  for (int trial = 0; trial < 4; ++trial) {
    const ProblemInstance p = trial % 2 ? random_quadratic_instance(rng, 3, 3) : random_logcosh_instance(rng, 3, 3);
    SolverConfig config;
    config.eps0 = 1e-2;
    config.eps = 1e-4;
    const PmmResult r = pmm_solve(p, config, InitialPoint{std::nullopt, SimplexPoint::vertex(3, trial % 3)});
    CHECK(r.status == SolveStatus::certified);
    double previous = f0_on_manifold(p, SimplexPoint(r.trace.initial_beta));
    for (std::size_t k = 0; k < r.trace.records.size(); ++k) {
      const TraceRecord& rec = r.trace.records[k];
      CHECK(rec.k == static_cast<int>(k) + 1);
      const double value = f0_on_manifold(p, SimplexPoint(rec.beta));
      CHECK(value <= previous + 1e-10);
      previous = value;
    }
  }
}

TEST_CASE("each outer step either certifies or descends by c1²ε0²/(2μ_g)") {
  auto rng = test::rng_for(34);
  std::vector<ProblemInstance> instances{test::png_instance(), random_quadratic_instance(rng, 3, 3),
                                         random_logcosh_instance(rng, 2, 3)};
  for (const ProblemInstance& p : instances) {
    SolverConfig config;
    config.eps0 = 1e-2;
    config.eps = 1e-4;
    const PmmResult r = pmm_solve(p, config, InitialPoint{std::nullopt, SimplexPoint::vertex(p.n(), 0)});
    REQUIRE(r.status == SolveStatus::certified);
    double previous = f0_on_manifold(p, SimplexPoint(r.trace.initial_beta));
    for (const TraceRecord& rec : r.trace.records) {
      const double value = f0_on_manifold(p, SimplexPoint(rec.beta));
      const double required = -0.5 * rec.c1 * rec.c1 * config.eps0 * config.eps0 / p.constants().mu_g;
      CHECK((rec.certified || value - previous <= required + 1e-10));
      previous = value;
    }
  }
}

TEST_CASE("certified points are close to the manifold and locally optimal") {
  auto rng = test::rng_for(35);
  std::vector<ProblemInstance> instances{test::png_instance(), random_quadratic_instance(rng, 3, 2),
                                         random_logcosh_instance(rng, 3, 3)};
  for (const ProblemInstance& p : instances) {
    SolverConfig config;
    config.eps0 = 1e-2;
    config.eps = 1e-4;
    const PmmResult r = pmm_solve(p, config);
    REQUIRE(r.status == SolveStatus::certified);
    const ManifoldPoint exact = oracle_x_star(p.F(), r.point.beta);
    CHECK((r.point.x - exact.x).norm() <= config.eps / p.F().mu());

    const double R = p.constants().R_bound;
    const double s = 2.0 * p.F().mu() * p.F().mu() * config.eps0 / (p.L0() * p.F().L() * p.F().L() * R * R);
    const double base = p.f0().value(exact.x);
    for (int i = 0; i < 100; ++i) {
      const Vector dir = random_simplex_point(rng, p.n()).weights() - r.point.beta.weights();
      if (dir.lpNorm<1>() == 0.0) continue;
      const double t = std::min(1.0, s / dir.lpNorm<1>()) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      const SimplexPoint other(r.point.beta.weights() + t * dir);
      const double dist = (other.weights() - r.point.beta.weights()).lpNorm<1>();
      CHECK(f0_on_manifold(p, other) - base >= -2.0 * config.eps0 * dist - 1e-6);
    }
  }
}
