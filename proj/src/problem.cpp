#include "pmm/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "pmm/errors.hpp"
#include "pmm/inner_solvers.hpp"

namespace pmm {

namespace {

SmoothnessConstants shared_from_declared(const std::vector<SmoothFunction>& objectives) {
  if (objectives.empty()) throw InvalidArgument("need at least one objective");
  SmoothnessConstants shared{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  for (std::size_t i = 0; i < objectives.size(); ++i) {
    const auto& c = objectives[i].constants();
    if (!c) throw ConfigurationError("objective " + std::to_string(i) + " has no declared constants");
    shared.mu = std::min(shared.mu, c->mu);
    shared.L = std::max(shared.L, c->L);
    shared.L_H = std::max(shared.L_H, c->L_H);
  }
  return shared;
}

std::optional<Vector> known_minimizer(const SmoothFunction& f) {
  if (!f.origin()) return std::nullopt;
  return std::visit([](const auto& spec) -> Vector { return spec.z; }, *f.origin());
}

}  // namespace

ObjectiveSet::ObjectiveSet(std::vector<SmoothFunction> objectives)
    : objectives_(std::move(objectives)), constants_(shared_from_declared(objectives_)) {
  initialise();
}

ObjectiveSet::ObjectiveSet(std::vector<SmoothFunction> objectives, SmoothnessConstants shared)
    : objectives_(std::move(objectives)), constants_(shared) {
  if (objectives_.empty()) throw InvalidArgument("need at least one objective");
  initialise();
}

void ObjectiveSet::initialise() {
  const int d = objectives_.front().dim();
  for (const auto& f : objectives_) {
    if (f.dim() != d) throw InvalidArgument("objectives have different dimensions");
  }
  if (!(constants_.mu > 0.0)) throw ConfigurationError("objectives must be strongly convex (mu > 0)");
  if (!(constants_.L >= constants_.mu)) throw ConfigurationError("need L >= mu");
  if (!(constants_.L_H >= 0.0)) throw ConfigurationError("need L_H >= 0");

  const double tol = 1e-10 * constants_.L;
  minimizers_.clear();
  for (std::size_t i = 0; i < objectives_.size(); ++i) {
    const auto& f = objectives_[i];
    Vector m;
    if (auto z = known_minimizer(f); z && f.gradient(*z).norm() <= tol) {
      m = *z;
    } else {
      MinimizeResult res = newton_minimize(f, Vector::Zero(d), tol, 200);
      if (!res.converged) {
        res = gradient_descent(f, res.x, 1.0 / constants_.L, tol, 1000000);
      }
      if (!res.converged) {
        throw NumericalFailure("could not minimise objective " + std::to_string(i));
      }
      m = res.x;
    }
    minimizers_.push_back(std::move(m));
  }
  r_ = 0.0;
  for (std::size_t i = 0; i < minimizers_.size(); ++i) {
    for (std::size_t j = i + 1; j < minimizers_.size(); ++j) {
      r_ = std::max(r_, (minimizers_[i] - minimizers_[j]).norm());
    }
  }
}

Matrix ObjectiveSet::gradients(const Vector& x) const {
  Matrix G(dim(), size());
  for (int i = 0; i < size(); ++i) G.col(i) = objectives_[i].gradient(x);
  return G;
}

Vector ObjectiveSet::values(const Vector& x) const {
  Vector v(size());
  for (int i = 0; i < size(); ++i) v(i) = objectives_[i].value(x);
  return v;
}

Vector ObjectiveSet::weighted_minimizer(const SimplexPoint& beta) const {
  if (beta.size() != size()) throw InvalidArgument("weight vector does not match objective count");
  Vector x = Vector::Zero(dim());
  for (int i = 0; i < size(); ++i) x += beta[i] * minimizers_[i];
  return x;
}

SmoothFunction scalarize(const ObjectiveSet& F, const SimplexPoint& beta) {
  if (beta.size() != F.size()) {
    throw InvalidArgument("weights have " + std::to_string(beta.size()) + " components, expected " +
                          std::to_string(F.size()));
  }
  auto objectives = std::make_shared<const std::vector<SmoothFunction>>(F.objectives());
  const Vector w = beta.weights();
  const int d = F.dim();
  auto value = [objectives, w](const Vector& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < objectives->size(); ++i) {
      if (w(i) != 0.0) s += w(i) * (*objectives)[i].value(x);
    }
    return s;
  };
  auto gradient = [objectives, w, d](const Vector& x) {
    Vector g = Vector::Zero(d);
    for (std::size_t i = 0; i < objectives->size(); ++i) {
      if (w(i) != 0.0) g += w(i) * (*objectives)[i].gradient(x);
    }
    return g;
  };
  auto hessian = [objectives, w, d](const Vector& x) {
    Matrix h = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < objectives->size(); ++i) {
      if (w(i) != 0.0) h += w(i) * (*objectives)[i].hessian(x);
    }
    return h;
  };
  return SmoothFunction(d, value, gradient, hessian, F.constants());
}

ConstantBundle derive_constants(int n, double mu, double L, double L_H, double r, double L0) {
  if (n < 1) throw ConfigurationError("need at least one objective");
  if (!(mu > 0.0) || !(L >= mu) || !(L_H >= 0.0) || !(r >= 0.0) || !(L0 >= 0.0)) {
    throw ConfigurationError("constants must satisfy mu > 0, L >= mu, L_H >= 0, r >= 0, L0 >= 0");
  }
  ConstantBundle c;
  c.kappa = L / mu;
  c.R_bound = std::sqrt(c.kappa) * r;
  c.M0 = c.kappa * c.R_bound;
  c.M1 = 2.0 * c.kappa * c.kappa * c.R_bound * (1.0 + L_H * c.R_bound / mu);
  c.mu_g = n * L0 * c.M1;
  c.estimator_ratio = c.kappa * (1.0 + L_H * c.R_bound / mu);
  return c;
}

ConstantBundle derive_constants(const ObjectiveSet& F, const SmoothFunction& f0) {
  if (!f0.constants()) throw ConfigurationError("preference function needs a declared L0");
  return derive_constants(F.size(), F.mu(), F.L(), F.L_H(), F.r(), f0.constants()->L);
}

ProblemInstance::ProblemInstance(ObjectiveSet F, SmoothFunction f0)
    : F_(std::move(F)), f0_(std::move(f0)) {
  if (f0_.dim() != F_.dim()) {
    throw InvalidArgument("preference function has dimension " + std::to_string(f0_.dim()) +
                          ", objectives have " + std::to_string(F_.dim()));
  }
  constants_ = derive_constants(F_, f0_);
}

ConstantCheck validate_constants(const SmoothFunction& f, const std::vector<Vector>& points) {
  ConstantCheck check;
  check.min_eigenvalue = std::numeric_limits<double>::infinity();
  check.max_eigenvalue = -std::numeric_limits<double>::infinity();
  for (const auto& x : points) {
    const Matrix H = f.hessian(x);
    const Matrix sym = 0.5 * (H + H.transpose());
    check.min_eigenvalue = std::min(check.min_eigenvalue, min_eigenvalue(sym));
    check.max_eigenvalue = std::max(check.max_eigenvalue, max_eigenvalue(sym));
  }
  if (f.constants() && !points.empty()) {
    check.ok = check.min_eigenvalue >= f.constants()->mu - 1e-9 &&
               check.max_eigenvalue <= f.constants()->L + 1e-9;
  }
  return check;
}

}  // namespace pmm
